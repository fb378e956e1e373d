#include "primordia/stability.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

namespace primordia {

WaveProbe WaveProbe::from_vector(const std::vector<double>& k) {
    WaveProbe w;
    w.k_vec = k;
    w.k2 = 0.0;
    for (double ki : k) w.k2 += ki * ki;
    w.validate();
    return w;
}

WaveProbe WaveProbe::from_k2(double k2, int dim) {
    if (k2 < 0) throw std::invalid_argument("WaveProbe: k2 must be >= 0");
    WaveProbe w;
    w.k_vec.assign(dim, 0.0);
    w.k_vec[0] = std::sqrt(k2);
    w.k2 = k2;
    w.validate();
    return w;
}

void WaveProbe::validate() const {
    if (dim() != 2 && dim() != 3)
        throw std::invalid_argument("WaveProbe: dimension must be 2 or 3");
    double s = 0.0;
    for (double ki : k_vec) s += ki * ki;
    if (std::abs(s - k2) > 1e-14 * std::max(1.0, s))
        throw std::invalid_argument("WaveProbe: k2 does not match |k|^2");
}

double chemotaxis_factor(const ParameterSet& p) {
    return p.alpha * p.m0 * std::exp(-p.gamma_exp * p.m0);
}

Eigen::MatrixXcd assemble_system_matrix(const ParameterSet& p, const SteadyState& s,
                                        const WaveProbe& w, Complex phi) {
    w.validate();
    const int d = w.dim();
    const int n = d + 5;
    const double k2 = w.k2;
    const Complex I(0.0, 1.0);

    const Complex B = p.rho * phi * phi + s.mu * k2;
    const Complex C = p.C0 * phi + (p.kappa / p.eta) * k2;
    const double chi = chemotaxis_factor(p);

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    // momentum rows: (mu+lambda) k_i k_j + B delta_ij, pressure gradient,
    // and the active-stress column
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            M(i, j) = (s.mu + s.lambda) * w.k_vec[i] * w.k_vec[j];
            if (i == j) M(i, j) += B;
        }
        M(i, d) = I * w.k_vec[i];
        M(i, d + 1) = -I * s.sigma_act_lin * w.k_vec[i];
    }
    // fluid mass row
    for (int j = 0; j < d; ++j) M(d, j) = I * p.alpha_BW * phi * w.k_vec[j];
    M(d, d) = C;
    // chemotaxis block, rows (m, e, f, b)
    M(d + 1, d + 1) = phi + p.D_m * k2;
    M(d + 1, d + 3) = -chi * k2;
    M(d + 2, d + 1) = -s.A_m;
    M(d + 2, d + 2) = phi + s.A_e;
    M(d + 2, d + 4) = s.A_b;
    for (int j = 0; j < d; ++j) M(d + 3, j) = I * p.xi_f * w.k_vec[j];
    M(d + 3, d + 2) = -1.0;
    M(d + 3, d + 3) = phi + p.D_f * k2 + p.delta_F;
    M(d + 4, d + 1) = -s.H3;
    M(d + 4, d + 4) = phi + k2 + p.delta_B;
    return M;
}

Complex system_matrix_det(const Eigen::MatrixXcd& M) {
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
}

CharPoly char_poly(const ParameterSet& p, const SteadyState& s, double k2) {
    if (k2 < 0) throw std::invalid_argument("char_poly: k2 must be >= 0");
    CharPoly cp;
    cp.k2 = k2;

    const double S = s.A_e;  // k_on + k_off
    const double chi = chemotaxis_factor(p);
    const double om = p.kappa / p.eta;
    const double L = 2.0 * s.mu + s.lambda;

    // P2 = (phi+pm)(phi+S)(phi+pf)(phi+pb) - chi A_m k2 (phi+pb) + chi H3 A_b k2
    const double pm = p.D_m * k2;
    const double pf = p.D_f * k2 + p.delta_F;
    const double pb = k2 + p.delta_B;  // D_b == 1 after scaling
    const double e1 = pm + S + pf + pb;
    const double e2 = pm * S + pm * pf + pm * pb + S * pf + S * pb + pf * pb;
    const double e3 = pm * S * pf + pm * S * pb + pm * pf * pb + S * pf * pb;
    const double e4 = pm * S * pf * pb;
    cp.a = {e4 - chi * s.A_m * k2 * pb + chi * s.H3 * s.A_b * k2,
            e3 - chi * s.A_m * k2, e2, e1, 1.0};

    // P3 = ((2mu+lambda) k2 + rho phi^2)(C0 phi + om k2) + aBW phi k2
    cp.c = {om * L * k2 * k2, (p.C0 * L + p.alpha_BW) * k2, p.rho * om * k2,
            p.rho * p.C0};

    // P1 = coupling_const * (C0 phi + om k2)(phi + S)(phi + pb); the common
    // scalar carries k^4 as dictated by det(M).
    cp.coupling_const = -p.xi_f * s.sigma_act_lin * chi * k2 * k2;
    cp.bhat = {om * k2 * S * pb, p.C0 * S * pb + om * k2 * (S + pb),
               p.C0 * (S + pb) + om * k2, p.C0};
    for (int i = 0; i < 4; ++i) cp.b[i] = cp.coupling_const * cp.bhat[i];

    // full = conv(a, c) + b, degree 7
    cp.full.fill(0.0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) cp.full[i + j] += cp.a[i] * cp.c[j];
    for (int i = 0; i < 4; ++i) cp.full[i] += cp.b[i];
    return cp;
}

std::vector<double> default_k2_grid(double k2_min, double k2_max, int points) {
    if (points < 1 || k2_min <= 0 || k2_max <= k2_min)
        throw std::invalid_argument("default_k2_grid: bad window");
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = k2_max;
        return g;
    }
    const double l0 = std::log(k2_min), l1 = std::log(k2_max);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(l0 + (l1 - l0) * double(i) / double(points - 1));
    g.back() = k2_max;
    return g;
}

std::vector<DispersionPoint> dispersion(const ParameterSet& p, const SteadyState& s,
                                        const std::vector<double>& k2_grid,
                                        const DispersionOptions& opt) {
    if (k2_grid.empty()) throw std::invalid_argument("dispersion: empty k2 grid");
    for (size_t i = 1; i < k2_grid.size(); ++i)
        if (k2_grid[i] <= k2_grid[i - 1])
            throw std::invalid_argument("dispersion: k2 grid must be ascending");
    if (opt.dim != 2 && opt.dim != 3)
        throw std::invalid_argument("dispersion: dim must be 2 or 3");

    std::vector<DispersionPoint> out;
    out.reserve(k2_grid.size());
    for (double k2 : k2_grid) {
        const CharPoly cp = char_poly(p, s, k2);
        DispersionPoint pt;
        pt.k2 = k2;
        pt.roots = poly_roots(cp.full_vec());
        if (opt.include_inertial_factor) {
            // B = rho phi^2 + mu k2 has roots +-i sqrt(mu k2 / rho),
            // repeated d-1 times
            const double wv = std::sqrt(s.mu * k2 / p.rho);
            for (int r = 0; r < opt.dim - 1; ++r) {
                pt.roots.emplace_back(0.0, wv);
                pt.roots.emplace_back(0.0, -wv);
            }
            std::sort(pt.roots.begin(), pt.roots.end(),
                      [](const Complex& a, const Complex& b) {
                          if (a.real() != b.real()) return a.real() < b.real();
                          return a.imag() < b.imag();
                      });
        }
        pt.max_re = -INFINITY;
        for (const auto& r : pt.roots) pt.max_re = std::max(pt.max_re, r.real());
        // argmax with ties broken by largest imaginary part, then lexicographic
        pt.argmax_root = pt.roots.front();
        bool first = true;
        for (const auto& r : pt.roots) {
            if (r.real() != pt.max_re) continue;
            if (first || r.imag() > pt.argmax_root.imag()) {
                pt.argmax_root = r;
                first = false;
            }
        }
        out.push_back(std::move(pt));
    }
    return out;
}

RouthHurwitzResult routh_hurwitz_cubic(double a3, double a2, double a1, double a0) {
    if (a3 <= 0) throw std::invalid_argument("routh_hurwitz_cubic: alpha3 must be > 0");
    const double hurwitz = a2 * a1 - a3 * a0;
    RouthHurwitzResult r;
    r.margin = std::min({a3, a2, a1, a0, hurwitz});
    r.stable = r.margin > 0;
    return r;
}

}  // namespace primordia
