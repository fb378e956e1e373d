#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace primordia {

/// Dimensionless model constants. Defaults reproduce the reference
/// parameter set used throughout the linear stability analysis
/// (epithelium kinetics, chemotaxis, and poromechanical constants).
struct ParameterSet {
    // chemotaxis / kinetics
    double m0 = 2.0;        // base mesenchymal density
    double D_m = 0.01;      // mesenchymal diffusivity
    double D_f = 0.1;       // FGF diffusivity (D_b == 1 after scaling)
    double alpha = 4.0;     // chemotactic sensitivity
    double kappa1 = 0.05;   // epithelium activation by priming wave
    double kappa2 = 0.025;  // epithelium activation by clustering
    double kappa3 = 1.0;    // epithelium base deactivation
    double kappa4 = 1.0;    // epithelium deactivation by BMP
    double K1 = 1.0, K2 = 2.0, K3 = 5.0;  // Hill half-saturations
    double P1 = 2.0, P2 = 2.0, P3 = 2.0;  // Hill exponents
    double delta_F = 1.0;   // FGF decay
    double delta_B = 1.0;   // BMP decay (kept symbolic; 1 after scaling)
    double omega1 = 1.0;    // priming wave amplitude
    double omega2 = 5.0;    // priming wave steepness
    double omega3 = 0.04;   // priming wave speed
    double gamma_exp = 1.0; // exponent coefficient in exp(-gamma m)

    // poromechanics
    double E = 3.0e4;       // Young modulus
    double nu = 0.4;        // Poisson ratio
    double C0 = 1.0e-3;     // storage coefficient
    double kappa = 1.0e-4;  // permeability
    double alpha_BW = 0.1;  // Biot-Willis coefficient
    double tau = 60.0;      // active stress magnitude
    double eta = 0.1;       // fluid viscosity
    double xi_f = 0.15;     // mechano-chemical feedback
    double rho = 1.0;       // solid density
    double zeta = 1.0;      // active stress saturation

    /// Shear modulus mu = E / (2 (1 + nu)).
    double mu() const;
    /// Dilation modulus lambda = E nu / ((1 + nu)(1 - 2 nu)).
    double lambda() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Hill saturation m^P / (K^P + m^P). Monotone nondecreasing in m,
/// value in [0, 1).
double hill(double m, double K, double P);

/// Derivative of hill() with respect to m.
double hill_deriv(double m, double K, double P);

/// Priming wave w(x,t) = omega1/2 (1 + tanh(omega2 [t - x2/omega3])).
double priming_wave(double x2, double t, const ParameterSet& p);

/// (mu, lambda) from Young modulus and Poisson ratio. Requires E > 0
/// and 0 <= nu < 0.5 (throws at the incompressible limit).
struct LameModuli {
    double mu;
    double lambda;
};
LameModuli lame_from_E_nu(double E, double nu);

/// Homogeneous base state plus the coefficients of the linearization
/// about it. The priming wave is taken at its saturated value omega1.
struct SteadyState {
    double m0 = 0, e0 = 0, f0 = 0, b0 = 0;
    double k_on = 0, k_off = 0;          // lumped epithelium rates
    double A_m = 0, A_e = 0, A_b = 0;    // e-equation linearization
    double H3 = 0;                       // b-equation linearization
    double sigma_act_lin = 0;            // linearized active stress
    double mu = 0, lambda = 0;           // Lame moduli carried along
};

/// Computes the steady state for a parameter set. When the lumped rates
/// k_on + k_off vanish the epithelium state is indeterminate; pass
/// degenerate_e0 (0 for zero activation, 1 for zero inactivation) or a
/// domain error "epithelium rates degenerate" is thrown.
SteadyState steady_state(const ParameterSet& p,
                         std::optional<double> degenerate_e0 = std::nullopt);

}  // namespace primordia
