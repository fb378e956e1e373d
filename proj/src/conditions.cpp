#include "primordia/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace primordia {

A0Quadratic a0_quadratic(const ParameterSet& p, const SteadyState& s) {
    const double S = s.A_e;
    const double chi = chemotaxis_factor(p);
    A0Quadratic q;
    q.A3 = p.D_m * p.D_f * S;
    q.A2 = p.D_m * S * (p.D_f * p.delta_B + p.delta_F) - chi * s.A_m;
    q.A1 = p.D_m * S * p.delta_F * p.delta_B + chi * (s.H3 * s.A_b - s.A_m * p.delta_B);
    return q;
}

namespace {

// Shared grid + analytic-extrema minimisation of a smooth target(k^2).
template <typename F>
TargetMinimum minimize_over_window(F&& target, const std::vector<double>& extrema,
                                   const K2Window& win) {
    const auto grid = default_k2_grid(win.k2_min, win.k2_max, win.points);
    TargetMinimum best{target(grid[0]), grid[0]};
    for (double k2 : grid) {
        const double v = target(k2);
        if (v < best.value) best = {v, k2};
    }
    for (double k2 : extrema) {
        if (k2 <= 0 || k2 > win.k2_max) continue;
        const double v = target(k2);
        if (v < best.value) best = {v, k2};
    }
    return best;
}

std::vector<double> positive_real_roots(const std::vector<double>& coeffs) {
    double cmax = 0.0;
    for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) return {};
    const auto roots = poly_roots(coeffs);
    std::vector<double> out;
    for (const auto& z : roots) {
        if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z))) continue;
        if (z.real() <= 0) continue;
        out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    // collapse near-coincident roots (multiplicities)
    std::vector<double> uniq;
    for (double r : out) {
        if (uniq.empty() || r - uniq.back() > 1e-9 * (1.0 + r)) uniq.push_back(r);
    }
    return uniq;
}

}  // namespace

UncoupledConditions uncoupled_conditions(const ParameterSet& p, const SteadyState& s,
                                         const K2Window& win) {
    const A0Quadratic q = a0_quadratic(p, s);
    UncoupledConditions r;
    r.cond1 = q.A2;
    r.cond2 = q.A1;
    r.cond3 = 4.0 * q.A2 * q.A2 - 12.0 * q.A3 * q.A1;
    r.cond1_holds = r.cond1 < 0;
    r.cond2_holds = r.cond2 < 0;
    r.cond3_holds = r.cond3 > 0;
    const auto kc = critical_wavenumber(p, s, CriticalMode::Uncoupled);
    const auto m = minimize_over_window([&](double k2) { return q.eval_a0(k2); }, kc, win);
    r.min_a0 = m.value;
    r.argmin_k2 = m.k2;
    r.patterning = (r.cond1_holds || r.cond2_holds) && r.cond3_holds && r.min_a0 < 0;
    return r;
}

ThetaCoeffs coupled_theta(const ParameterSet& p, const SteadyState& s) {
    const A0Quadratic q = a0_quadratic(p, s);
    const double om = p.kappa / p.eta;
    const double L = 2.0 * s.mu + s.lambda;
    const double S = s.A_e;
    const double chi = chemotaxis_factor(p);
    const double coup = p.xi_f * s.sigma_act_lin * chi * S;
    ThetaCoeffs t;
    t.theta4 = 5.0 * om * L * q.A3;
    t.theta3 = 4.0 * om * (L * q.A2 - coup);
    t.theta2 = 3.0 * om * (L * q.A1 - coup * p.delta_B);
    t.theta1 = 0.0;  // the k^4 coupling power leaves no k^2 term in d0'
    return t;
}

double d0_value(const ParameterSet& p, const SteadyState& s, double k2) {
    return char_poly(p, s, k2).full[0];
}

CoupledConditions coupled_conditions(const ParameterSet& p, const SteadyState& s,
                                     const K2Window& win) {
    CoupledConditions r;
    r.theta = coupled_theta(p, s);
    const double t1 = r.theta.theta1, t2 = r.theta.theta2, t3 = r.theta.theta3,
                 t4 = r.theta.theta4;
    r.condC1 = std::min({t1, t2, t3});
    r.condC2 = t2 * t3 - t1 * t4;
    r.condC3 = t1 * t2 * t3 - t1 * t1 * t4;
    // discriminant of the quartic k^2 (t4 k^6 + t3 k^4 + t2 k^2 + t1):
    // Disc = t1^2 * Disc(cubic)
    const double disc3 = 18.0 * t4 * t3 * t2 * t1 - 4.0 * t3 * t3 * t3 * t1 +
                         t3 * t3 * t2 * t2 - 4.0 * t4 * t2 * t2 * t2 -
                         27.0 * t4 * t4 * t1 * t1;
    r.condCDisc = t1 * t1 * disc3;
    r.condC1_holds = t1 > 0 && t2 > 0 && t3 > 0;
    r.condC2_holds = r.condC2 > 0;
    r.condC3_holds = r.condC3 > 0;
    r.condCDisc_holds = r.condCDisc > 0;
    const auto kc = critical_wavenumber(p, s, CriticalMode::Coupled);
    const auto m =
        minimize_over_window([&](double k2) { return d0_value(p, s, k2); }, kc, win);
    r.min_d0 = m.value;
    r.argmin_k2 = m.k2;
    r.patterning = r.min_d0 < 0;
    return r;
}

std::vector<double> critical_wavenumber(const ParameterSet& p, const SteadyState& s,
                                        CriticalMode mode) {
    std::vector<double> coeffs;
    if (mode == CriticalMode::Uncoupled) {
        const A0Quadratic q = a0_quadratic(p, s);
        coeffs = {q.A1, 2.0 * q.A2, 3.0 * q.A3};  // a0'(x)
    } else {
        const ThetaCoeffs t = coupled_theta(p, s);
        coeffs = {t.theta1, t.theta2, t.theta3, t.theta4};  // d0'(x)/x
    }
    auto roots = positive_real_roots(coeffs);
    // keep only roots that really zero the derivative
    std::vector<double> ok;
    for (double x : roots) {
        const Complex val = poly_eval(coeffs, Complex(x, 0.0));
        std::vector<Complex> cc(coeffs.begin(), coeffs.end());
        const double scale = std::max(1.0, poly_eval_scale(cc, Complex(x, 0.0)));
        if (std::abs(val) <= 1e-8 * scale) ok.push_back(x);
    }
    return ok;
}

TargetMinimum minimize_target(const ParameterSet& p, const SteadyState& s,
                              CriticalMode mode, const K2Window& win) {
    const auto kc = critical_wavenumber(p, s, mode);
    if (mode == CriticalMode::Uncoupled) {
        const A0Quadratic q = a0_quadratic(p, s);
        return minimize_over_window([&](double k2) { return q.eval_a0(k2); }, kc, win);
    }
    return minimize_over_window([&](double k2) { return d0_value(p, s, k2); }, kc, win);
}

namespace {
using Field = double ParameterSet::*;
const std::map<std::string, Field>& field_map() {
    static const std::map<std::string, Field> m = {
        {"m0", &ParameterSet::m0},         {"D_m", &ParameterSet::D_m},
        {"D_f", &ParameterSet::D_f},       {"alpha", &ParameterSet::alpha},
        {"kappa1", &ParameterSet::kappa1}, {"kappa2", &ParameterSet::kappa2},
        {"kappa3", &ParameterSet::kappa3}, {"kappa4", &ParameterSet::kappa4},
        {"K1", &ParameterSet::K1},         {"K2", &ParameterSet::K2},
        {"K3", &ParameterSet::K3},         {"P1", &ParameterSet::P1},
        {"P2", &ParameterSet::P2},         {"P3", &ParameterSet::P3},
        {"delta_F", &ParameterSet::delta_F}, {"delta_B", &ParameterSet::delta_B},
        {"omega1", &ParameterSet::omega1}, {"omega2", &ParameterSet::omega2},
        {"omega3", &ParameterSet::omega3}, {"gamma_exp", &ParameterSet::gamma_exp},
        {"E", &ParameterSet::E},           {"nu", &ParameterSet::nu},
        {"C0", &ParameterSet::C0},         {"kappa", &ParameterSet::kappa},
        {"alpha_BW", &ParameterSet::alpha_BW}, {"tau", &ParameterSet::tau},
        {"eta", &ParameterSet::eta},       {"xi_f", &ParameterSet::xi_f},
        {"rho", &ParameterSet::rho},       {"zeta", &ParameterSet::zeta},
    };
    return m;
}
}  // namespace

void set_parameter(ParameterSet& p, const std::string& name, double value) {
    const auto& m = field_map();
    const auto it = m.find(name);
    if (it == m.end())
        throw std::invalid_argument("unknown parameter name: " + name);
    p.*(it->second) = value;
}

double get_parameter(const ParameterSet& p, const std::string& name) {
    const auto& m = field_map();
    const auto it = m.find(name);
    if (it == m.end())
        throw std::invalid_argument("unknown parameter name: " + name);
    return p.*(it->second);
}

std::vector<std::string> parameter_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : field_map()) names.push_back(k);
    return names;
}

double critical_parameter(const ParameterSet& p, const std::string& param_name,
                          double lo, double hi, CriticalMode mode,
                          const CriticalParameterOptions& opt) {
    if (!(lo < hi)) throw std::invalid_argument("critical_parameter: bad bracket");
    const auto g = [&](double theta) {
        ParameterSet q = p;
        set_parameter(q, param_name, theta);
        const SteadyState s = steady_state(q);
        return minimize_target(q, s, mode, opt.window).value;
    };
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo < 0) == (ghi < 0)) {
        std::ostringstream msg;
        msg << "critical_parameter: no sign change for " << param_name << " over ["
            << lo << ", " << hi << "]; g(lo) = " << glo << ", g(hi) = " << ghi;
        throw std::runtime_error(msg.str());
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < opt.max_iters; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::abs(gm) <= opt.g_tol) return mid;
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    }
    const double gm = g(mid);
    if (std::abs(gm) <= opt.g_tol) return mid;
    std::ostringstream msg;
    msg << "critical_parameter: |g| tolerance " << opt.g_tol
        << " not reached; best |g| = " << std::abs(gm);
    throw std::runtime_error(msg.str());
}

}  // namespace primordia
