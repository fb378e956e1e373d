#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "primordia/grid.hpp"
#include "primordia/stability.hpp"

namespace primordia::testing {

/// Deterministic positive parameter draws spanning the regimes the
/// analysis has to survive (stiff moduli, small storage, mixed rates).
inline ParameterSet random_parameter_set(uint64_t seed, uint64_t index) {
    const CounterRng rng(seed);
    const uint64_t base = index * 64;
    const auto logu = [&](uint64_t slot, double lo, double hi) {
        return lo * std::pow(hi / lo, rng.uniform(base + slot));
    };
    ParameterSet p;
    p.m0 = logu(0, 0.2, 4.0);
    p.D_m = logu(1, 1e-3, 0.3);
    p.D_f = logu(2, 1e-2, 1.0);
    p.alpha = logu(3, 0.1, 10.0);
    p.kappa1 = logu(4, 1e-3, 0.5);
    p.kappa2 = logu(5, 1e-3, 0.5);
    p.kappa3 = logu(6, 0.05, 2.0);
    p.kappa4 = logu(7, 0.05, 2.0);
    p.K1 = logu(8, 0.3, 3.0);
    p.K2 = logu(9, 0.5, 4.0);
    p.K3 = logu(10, 1.0, 8.0);
    p.P1 = logu(11, 1.0, 3.0);
    p.P2 = logu(12, 1.0, 3.0);
    p.P3 = logu(13, 1.0, 3.0);
    p.delta_F = logu(14, 0.3, 3.0);
    p.delta_B = logu(15, 0.3, 3.0);
    p.omega1 = logu(16, 0.5, 2.0);
    p.E = logu(17, 1.0, 1e5);
    p.nu = 0.05 + 0.4 * rng.uniform(base + 18);
    p.C0 = logu(19, 1e-4, 1e-1);
    p.kappa = logu(20, 1e-5, 1e-2);
    p.alpha_BW = logu(21, 1e-2, 1.0);
    p.tau = (rng.uniform(base + 22) < 0.5 ? -1.0 : 1.0) * logu(23, 0.1, 100.0);
    p.eta = logu(24, 1e-2, 1.0);
    p.xi_f = logu(25, 1e-3, 1.0);
    p.rho = logu(26, 0.1, 10.0);
    p.zeta = logu(27, 0.2, 5.0);
    p.gamma_exp = logu(28, 0.5, 2.0);
    return p;
}

/// Fits the degree-n polynomial through det-style samples taken at
/// n+1 equally spaced points on a circle of radius r; the Vandermonde
/// system there is a scaled DFT, so the fit is well conditioned.
inline std::vector<Complex> fit_polynomial(
    const std::function<Complex(Complex)>& f, int degree, double radius = 1.0) {
    const int n = degree + 1;
    Eigen::MatrixXcd V(n, n);
    Eigen::VectorXcd y(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n + 0.3;
        const Complex z = radius * Complex(std::cos(th), std::sin(th));
        Complex pw(1.0, 0.0);
        for (int j = 0; j < n; ++j) {
            V(k, j) = pw;
            pw *= z;
        }
        y(k) = f(z);
    }
    const Eigen::VectorXcd c = V.colPivHouseholderQr().solve(y);
    return {c.data(), c.data() + n};
}

/// det(M(phi))/B^(d-1): the degree-7 factor of the dispersion relation,
/// evaluated straight from the matrix (independent of char_poly).
inline Complex det_reduced(const ParameterSet& p, const SteadyState& s,
                           const WaveProbe& w, Complex phi) {
    const Eigen::MatrixXcd M = assemble_system_matrix(p, s, w, phi);
    const Complex B = p.rho * phi * phi + s.mu * w.k2;
    Complex det = system_matrix_det(M);
    for (int i = 0; i < w.dim() - 1; ++i) det /= B;
    return det;
}

inline double eval_scale(const std::vector<double>& coeffs, Complex z) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    return poly_eval_scale(c, z);
}

}  // namespace primordia::testing
