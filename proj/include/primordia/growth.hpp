#pragma once

#include <Eigen/Dense>
#include <array>

namespace primordia {

using Tensor3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Growth factors gamma_i acting along the orthonormal frame k_i.
/// In 2D only (gamma1, gamma2) act and the out-of-plane direction is
/// carried as identity.
struct GrowthFactors {
    std::array<double, 3> gamma{0.0, 0.0, 0.0};
    std::array<Vector3, 3> k{Vector3::UnitX(), Vector3::UnitY(), Vector3::UnitZ()};
    std::array<double, 3> delta{0.0, 0.0, 0.0};  // rate constants
    int dim = 3;

    void validate() const;  // orthonormal frame, gamma >= 0, dim in {2,3}
};

/// F_g = I + sqrt(gamma1) k1 k1^T + sqrt(gamma2) k2 k2^T + gamma3 k3 k3^T;
/// the gamma3 term is dropped in 2D.
Tensor3 growth_tensor(const GrowthFactors& g);

/// Growth factor evolution. 3D: gamma1 = gamma2 = delta1 t,
/// gamma3 = delta2 t + delta3 m/(1+m^2). 2D: gamma1 = gamma2
/// = delta2 t + delta3 m/(1+m^2).
std::array<double, 3> gamma_evolution(double t, double m, const GrowthFactors& g);

/// d(gamma3)/dm = delta3 (1-m^2)/(1+m^2)^2.
double gamma3_m_derivative(double m, double delta3);

/// Full kinematic bundle of the multiplicative decomposition F = F_e F_g.
struct DeformationState {
    Tensor3 F, F_g, F_e;
    double J = 0, J_g = 0, J_e = 0;
    Tensor3 C;    // F^T F
    Tensor3 B_e;  // F_e F_e^T
};

/// Builds the bundle from F and F_g: F_e = F F_g^{-1}. Requires both
/// determinants positive; throws on a singular F_g.
DeformationState elastic_decomposition(const Tensor3& F, const Tensor3& F_g);

/// Neo-Hookean effective first Piola-Kirchhoff stress
/// P_e = J (mu B_e - psi I) F^{-T}.
Tensor3 neo_hookean_stress(const DeformationState& st, double mu, double psi);

/// The trivial reference-state multiplier: psi = mu at F_e = I. Solving
/// psi as a field belongs to the excluded nonlinear solver.
double psi_for_incompressibility(double mu);

/// Fluid contribution P_f = -alpha_BW J p F^{-T}.
Tensor3 fluid_stress(const Tensor3& F, double p, double alpha_BW);

/// Lagrangian Darcy velocity v_f - v_s = -F (kappa/(eta phi_f)) C^{-1} Grad p.
Vector3 darcy_pullback(const Tensor3& F, double kappa_over_eta, double phi_f,
                       const Vector3& grad_p);

/// Fluid mass source l = l0 (2 delta1 + delta2 + dgamma3/dm * dm/dt),
/// with dgamma3/dm carrying the single delta3 factor.
double mass_source_fluid(const GrowthFactors& g, double dm_dt, double ell0, double m);

struct PhaseFractions {
    double phi_s = 0, phi_f = 0;
    void validate() const;  // phi_s + phi_f = 1, both in [0,1]
};

/// Net solid proliferation rate r_s = alpha0 phi_s (1 - phi_s)(m - m0).
double solid_mass_growth_rate(const PhaseFractions& phi, double m, double m0,
                              double alpha0);

/// Residual of the rate constraint sum_i dgamma_i/gamma_i - r_s/phi_s
/// over the first `dim` factors. Domain error at gamma_i = 0.
double growth_rate_constraint_residual(const std::array<double, 3>& gamma,
                                       const std::array<double, 3>& gamma_dot,
                                       double r_s, double phi_s, int dim = 3);

/// Piola-transformed isotropic diffusion tensor J D C^{-1} (SPD).
Tensor3 chemotaxis_pullback_tensor(const Tensor3& F, double D_scalar);

}  // namespace primordia
