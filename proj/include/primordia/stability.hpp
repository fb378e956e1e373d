#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "primordia/params.hpp"
#include "primordia/polynomial.hpp"

namespace primordia {

/// A wave vector probe; k2 is cached and must equal |k_vec|^2.
struct WaveProbe {
    std::vector<double> k_vec;  // d components, d in {2,3}
    double k2 = 0.0;

    int dim() const { return int(k_vec.size()); }
    static WaveProbe from_vector(const std::vector<double>& k);
    /// Axis-aligned probe (k, 0, ...) with k = sqrt(k2).
    static WaveProbe from_k2(double k2, int dim = 2);
    void validate() const;  // checks dim and the k2 = k.k invariant
};

/// Linearized plane-wave system matrix M(phi; k), size (d+5) x (d+5),
/// ordered (u_1..u_d, p, m, e, f, b). det(M) = B^(d-1) (P1 + P2 P3).
Eigen::MatrixXcd assemble_system_matrix(const ParameterSet& p, const SteadyState& s,
                                        const WaveProbe& w, Complex phi);

/// Determinant via complex partial-pivot LU (oracle helper).
Complex system_matrix_det(const Eigen::MatrixXcd& M);

/// Coefficients of the characteristic factors at a given k^2, ascending
/// order. full = conv(a, c) + b is the degree-7 polynomial whose roots
/// drive the dispersion relation; the inertial factor B(phi;k2)^(d-1)
/// is kept separate. coupling_const is the common scalar multiplying
/// the bhat coefficients: -xi_f sigma_act_lin (alpha m0 e^(-m0)) k^4.
/// (The k-power follows det(M); see char_poly notes in the repo docs.)
struct CharPoly {
    double k2 = 0.0;
    std::array<double, 5> a{};     // P2, chemotaxis quartic
    std::array<double, 4> b{};     // P1, poro-chemo coupling cubic
    std::array<double, 4> bhat{};  // b = coupling_const * bhat
    std::array<double, 4> c{};     // P3, poromechanics cubic
    std::array<double, 8> full{};  // P1 + P2*P3
    double coupling_const = 0.0;

    std::vector<double> full_vec() const { return {full.begin(), full.end()}; }
};

CharPoly char_poly(const ParameterSet& p, const SteadyState& s, double k2);

/// Chemotactic linearization factor alpha m0 exp(-gamma m0).
double chemotaxis_factor(const ParameterSet& p);

/// One dispersion sample: the seven growth factors at a given k^2.
struct DispersionPoint {
    double k2 = 0.0;
    std::vector<Complex> roots;  // sorted by (Re, Im); 7 entries, plus
                                 // 2(d-1) inertial roots when included
    double max_re = 0.0;
    Complex argmax_root;
};

struct DispersionOptions {
    bool include_inertial_factor = false;  // restore B(phi;k2)^(d-1) roots
    int dim = 2;
};

std::vector<DispersionPoint> dispersion(const ParameterSet& p, const SteadyState& s,
                                        const std::vector<double>& k2_grid,
                                        const DispersionOptions& opt = {});

/// Default k^2 scan window (0, 50], 500 log-spaced points.
std::vector<double> default_k2_grid(double k2_min = 1e-3, double k2_max = 50.0,
                                    int points = 500);

/// Routh-Hurwitz test for alpha3 phi^3 + ... + alpha0. Stable iff all
/// coefficients are positive and alpha2 alpha1 - alpha3 alpha0 > 0;
/// margin is the minimum of the tested quantities.
struct RouthHurwitzResult {
    bool stable = false;
    double margin = 0.0;
};
RouthHurwitzResult routh_hurwitz_cubic(double a3, double a2, double a1, double a0);

}  // namespace primordia
