#pragma once

#include <string>
#include <vector>

#include "primordia/stability.hpp"

namespace primordia {

/// a0(k^2) = k^2 (A3 k^4 + A2 k^2 + A1): the constant coefficient of the
/// chemotaxis quartic as a cubic in k^2 with the trivial factor removed.
struct A0Quadratic {
    double A3 = 0, A2 = 0, A1 = 0;
    double eval_a0(double k2) const { return k2 * ((A3 * k2 + A2) * k2 + A1); }
};
A0Quadratic a0_quadratic(const ParameterSet& p, const SteadyState& s);

/// Scan window for numeric k^2 minimisation.
struct K2Window {
    double k2_min = 1e-3;
    double k2_max = 50.0;
    int points = 500;
};

/// Signed left-hand sides of the three uncoupled patterning conditions
/// (cond1 < 0, cond2 < 0, cond3 > 0 required) plus the numerically
/// verified minimum of a0 over the scan window.
struct UncoupledConditions {
    double cond1 = 0, cond2 = 0, cond3 = 0;
    bool cond1_holds = false, cond2_holds = false, cond3_holds = false;
    double min_a0 = 0, argmin_k2 = 0;
    bool patterning = false;  // (cond1 || cond2) && cond3 && min_a0 < 0
};
UncoupledConditions uncoupled_conditions(const ParameterSet& p, const SteadyState& s,
                                         const K2Window& win = {});

/// Coefficients of d0'(k^2) = theta4 k^8 + theta3 k^6 + theta2 k^4
/// + theta1 k^2, where d0 = a0 c0 + b0 is the constant coefficient of
/// the full degree-7 polynomial. With the coupling power fixed by
/// det(M), theta1 vanishes identically; it is kept for reporting.
struct ThetaCoeffs {
    double theta1 = 0, theta2 = 0, theta3 = 0, theta4 = 0;
};
ThetaCoeffs coupled_theta(const ParameterSet& p, const SteadyState& s);

/// d0(k^2) evaluated exactly as full[0] of char_poly.
double d0_value(const ParameterSet& p, const SteadyState& s, double k2);

/// Routh-Hurwitz style condition values on the theta coefficients plus
/// the numerically verified d0 minimum. The patterning flag follows the
/// numeric minimum (the theta-based filter is degenerate once theta1
/// vanishes; the condition values are still reported).
struct CoupledConditions {
    ThetaCoeffs theta;
    double condC1 = 0;     // min(theta1, theta2, theta3), > 0 required
    double condC2 = 0;     // theta2 theta3 - theta1 theta4, > 0 required
    double condC3 = 0;     // theta1 theta2 theta3 - theta1^2 theta4, > 0 required
    double condCDisc = 0;  // discriminant of the k^2 quartic d0'/scale, > 0 required
    bool condC1_holds = false, condC2_holds = false, condC3_holds = false;
    bool condCDisc_holds = false;
    double min_d0 = 0, argmin_k2 = 0;
    bool patterning = false;  // min_d0 < 0
};
CoupledConditions coupled_conditions(const ParameterSet& p, const SteadyState& s,
                                     const K2Window& win = {});

enum class CriticalMode { Uncoupled, Coupled };

/// Positive real critical wave numbers k_c^2: roots of a0'(k^2) = 0
/// (uncoupled, quadratic) or of d0'(k^2)/k^2 = 0 (coupled, cubic).
/// Roots are validated against the derivative residual and may be empty.
std::vector<double> critical_wavenumber(const ParameterSet& p, const SteadyState& s,
                                        CriticalMode mode);

/// Minimum of the patterning target (a0 or d0) over (0, k2_max], located
/// from the scan grid refined with the analytic critical wave numbers.
struct TargetMinimum {
    double value = 0;
    double k2 = 0;
};
TargetMinimum minimize_target(const ParameterSet& p, const SteadyState& s,
                              CriticalMode mode, const K2Window& win = {});

/// Parameter mutation by name; throws std::invalid_argument for unknown
/// names. Names: m0, D_m, D_f, alpha, kappa1..kappa4, K1..K3, P1..P3,
/// delta_F, delta_B, omega1..omega3, gamma_exp, E, nu, C0, kappa,
/// alpha_BW, tau, eta, xi_f, rho, zeta.
void set_parameter(ParameterSet& p, const std::string& name, double value);
double get_parameter(const ParameterSet& p, const std::string& name);
std::vector<std::string> parameter_names();

/// Bisection for the critical parameter value where the k^2-minimum of
/// the patterning target crosses zero. Throws std::runtime_error with
/// the endpoint values if there is no sign change over the bracket.
struct CriticalParameterOptions {
    K2Window window{};
    double g_tol = 1e-8;
    int max_iters = 200;
};
double critical_parameter(const ParameterSet& p, const std::string& param_name,
                          double lo, double hi, CriticalMode mode,
                          const CriticalParameterOptions& opt = {});

}  // namespace primordia
