#pragma once

#include <complex>
#include <vector>

namespace primordia {

using Complex = std::complex<double>;

/// Evaluate sum_i coeffs[i] z^i by Horner's rule.
Complex poly_eval(const std::vector<Complex>& coeffs, Complex z);
Complex poly_eval(const std::vector<double>& coeffs, Complex z);

/// Derivative coefficients of a polynomial given in ascending order.
std::vector<double> poly_deriv(const std::vector<double>& coeffs);

/// Full convolution of two coefficient arrays (polynomial product).
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b);

/// sum_i |c_i| max(1,|z|)^i, the natural magnitude of a Horner evaluation;
/// residuals are judged against 1e-8 times this.
double poly_eval_scale(const std::vector<Complex>& coeffs, Complex z);

/// Roots of a polynomial with real or complex coefficients in ascending
/// order. Leading coefficients below 1e-14 * max|c| are trimmed; exact
/// zero trailing coefficients yield exact zero roots. The solver runs a
/// balanced complex Hessenberg QR on the companion matrix followed by a
/// few Newton polish steps, and returns the multiset sorted by (Re, Im).
/// Throws std::invalid_argument if all coefficients vanish.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);
std::vector<Complex> poly_roots(const std::vector<double>& coeffs);

/// Independent Aberth-Ehrlich simultaneous iteration, used as a
/// cross-check oracle for poly_roots. Same trimming and ordering rules.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs,
                                  int max_iters = 200, double tol = 1e-14);
std::vector<Complex> aberth_roots(const std::vector<double>& coeffs,
                                  int max_iters = 200, double tol = 1e-14);

}  // namespace primordia
