#include "primordia/params.hpp"

#include <cmath>

namespace primordia {

double ParameterSet::mu() const { return lame_from_E_nu(E, nu).mu; }
double ParameterSet::lambda() const { return lame_from_E_nu(E, nu).lambda; }

namespace {
void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("ParameterSet: " + what);
}
}  // namespace

void ParameterSet::validate() const {
    require(D_m > 0, "D_m must be > 0");
    require(D_f > 0, "D_f must be > 0");
    require(K1 > 0 && K2 > 0 && K3 > 0, "Hill half-saturations must be > 0");
    require(P1 > 0 && P2 > 0 && P3 > 0, "Hill exponents must be > 0");
    require(delta_F > 0, "delta_F must be > 0");
    require(delta_B > 0, "delta_B must be > 0");
    require(eta > 0, "eta must be > 0");
    require(rho > 0, "rho must be > 0");
    require(E > 0, "E must be > 0");
    require(nu > 0 && nu < 0.5, "nu must lie in (0, 0.5)");
    require(C0 >= 0, "C0 must be >= 0");
    require(kappa >= 0, "kappa must be >= 0");
    require(alpha_BW >= 0, "alpha_BW must be >= 0");
    require(kappa1 >= 0 && kappa2 >= 0 && kappa3 >= 0 && kappa4 >= 0,
            "kappa_i must be >= 0");
    require(omega1 >= 0 && omega2 >= 0 && omega3 >= 0, "omega_i must be >= 0");
    require(zeta >= 0, "zeta must be >= 0");
    require(xi_f >= 0, "xi_f must be >= 0");
    require(alpha >= 0, "alpha must be >= 0");
    require(m0 >= 0, "m0 must be >= 0");
}

double hill(double m, double K, double P) {
    if (m < 0) throw std::domain_error("hill: m must be >= 0");
    if (K <= 0) throw std::domain_error("hill: K must be > 0");
    if (P <= 0) throw std::domain_error("hill: P must be > 0");
    if (m == 0) return 0.0;
    const double r = std::pow(m / K, P);
    const double one_below = std::nextafter(1.0, 0.0);
    if (std::isinf(r)) return one_below;
    // the exact value is strictly below 1; keep the float one too
    return std::min(r / (1.0 + r), one_below);
}

double hill_deriv(double m, double K, double P) {
    if (m < 0) throw std::domain_error("hill_deriv: m must be >= 0");
    if (K <= 0) throw std::domain_error("hill_deriv: K must be > 0");
    if (P <= 0) throw std::domain_error("hill_deriv: P must be > 0");
    if (m == 0) return P > 1 ? 0.0 : (P == 1 ? 1.0 / K : INFINITY);
    // d/dm [r/(1+r)] with r = (m/K)^P  ->  P r / (m (1+r)^2)
    const double r = std::pow(m / K, P);
    if (std::isinf(r)) return 0.0;
    const double s = 1.0 + r;
    return P * r / (m * s * s);
}

double priming_wave(double x2, double t, const ParameterSet& p) {
    if (p.omega3 <= 0) throw std::domain_error("priming_wave: omega3 must be > 0");
    return 0.5 * p.omega1 * (1.0 + std::tanh(p.omega2 * (t - x2 / p.omega3)));
}

LameModuli lame_from_E_nu(double E, double nu) {
    if (E <= 0) throw std::domain_error("lame_from_E_nu: E must be > 0");
    if (nu < 0 || nu >= 0.5)
        throw std::domain_error("lame_from_E_nu: nu must lie in [0, 0.5)");
    return {E / (2.0 * (1.0 + nu)), E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu))};
}

SteadyState steady_state(const ParameterSet& p, std::optional<double> degenerate_e0) {
    const double m0 = p.m0;
    const double h1 = hill(m0, p.K1, p.P1);
    const double h2 = hill(m0, p.K2, p.P2);
    const double h3 = hill(m0, p.K3, p.P3);
    const double h1p = hill_deriv(m0, p.K1, p.P1);
    const double h2p = hill_deriv(m0, p.K2, p.P2);
    const double h3p = hill_deriv(m0, p.K3, p.P3);

    SteadyState s;
    s.m0 = m0;
    s.b0 = h3 * m0;
    s.k_on = p.kappa1 * p.omega1 * h1 + p.kappa2 * h2;
    s.k_off = (1.0 - h1) * (p.kappa3 + p.kappa4 * s.b0);
    s.A_e = s.k_on + s.k_off;
    if (s.A_e > 0) {
        s.e0 = s.k_on / s.A_e;
    } else if (degenerate_e0) {
        s.e0 = *degenerate_e0;
    } else {
        throw std::domain_error("steady_state: epithelium rates degenerate");
    }
    s.f0 = s.e0 / p.delta_F;

    const double k_on_m = p.kappa1 * p.omega1 * h1p + p.kappa2 * h2p;
    const double k_off_m = -h1p * (p.kappa3 + p.kappa4 * s.b0);
    s.A_m = k_on_m * (1.0 - s.e0) - k_off_m * s.e0;
    s.A_b = (1.0 - h1) * p.kappa4 * s.e0;
    s.H3 = h3 + h3p * m0;

    const auto lame = lame_from_E_nu(p.E, p.nu);
    s.mu = lame.mu;
    s.lambda = lame.lambda;
    const double zm2 = p.zeta * m0 * m0;
    s.sigma_act_lin =
        (lame.lambda + 2.0 * lame.mu / 3.0) * p.tau * (1.0 - zm2) / ((1.0 + zm2) * (1.0 + zm2));
    return s;
}

}  // namespace primordia
