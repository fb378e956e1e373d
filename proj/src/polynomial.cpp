#include "primordia/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primordia {

Complex poly_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex poly_eval(const std::vector<double>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<double> poly_deriv(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * double(i);
    return d;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

double poly_eval_scale(const std::vector<Complex>& coeffs, Complex z) {
    const double az = std::max(1.0, std::abs(z));
    double s = 0.0, pw = 1.0;
    for (const auto& c : coeffs) {
        s += std::abs(c) * pw;
        pw *= az;
    }
    return s;
}

namespace {

// Dense complex upper-Hessenberg QR iteration with Wilkinson shifts.
// The matrix is stored row-major in h (n x n); eigenvalues land in eig.
void hessenberg_qr_eigenvalues(std::vector<Complex>& h, int n, std::vector<Complex>& eig) {
    auto H = [&](int i, int j) -> Complex& { return h[size_t(i) * n + j]; };
    eig.assign(n, Complex(0, 0));
    int hi = n - 1;
    int iter_since_deflation = 0;
    const int max_total = 40 * n;
    int total = 0;

    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = H(0, 0);
            break;
        }
        // find the active block [lo..hi]: split where a subdiagonal is negligible
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(H(lo, lo - 1));
            const double diag = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
            if (sub <= 1e-32 + 2.3e-16 * diag) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[hi] = H(hi, hi);
            --hi;
            iter_since_deflation = 0;
            continue;
        }

        if (++total > max_total)
            throw std::runtime_error("poly_roots: QR iteration failed to converge");

        // Wilkinson shift from the trailing 2x2; occasional exceptional shift
        Complex shift;
        if (iter_since_deflation > 0 && iter_since_deflation % 12 == 0) {
            shift = H(hi, hi) + Complex(std::abs(H(hi, hi - 1)), 0.0);
        } else {
            const Complex a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
            const Complex c = H(hi, hi - 1), d = H(hi, hi);
            const Complex tr = a + d;
            const Complex det = a * d - b * c;
            Complex disc = std::sqrt(tr * tr - 4.0 * det);
            Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
            shift = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
        }
        ++iter_since_deflation;

        // implicit single-shift QR sweep on the active block via Givens rotations
        struct Givens {
            double c;
            Complex s;
        };
        std::vector<Givens> rots(hi - lo);
        Complex x = H(lo, lo) - shift;
        Complex y = H(lo + 1, lo);
        for (int k = lo; k < hi; ++k) {
            // rotation zeroing y against x
            double cg;
            Complex sg;
            const double ax = std::abs(x), ay = std::abs(y);
            if (ay == 0.0) {
                cg = 1.0;
                sg = Complex(0, 0);
            } else if (ax == 0.0) {
                cg = 0.0;
                sg = std::conj(y) / ay;
            } else {
                const double r = std::hypot(ax, ay);
                cg = ax / r;
                sg = (x / ax) * std::conj(y) / r;
            }
            rots[k - lo] = {cg, sg};
            // apply from the left to rows k, k+1
            const int jstart = std::max(lo, k - 1);
            for (int j = jstart; j <= hi; ++j) {
                const Complex t1 = H(k, j), t2 = H(k + 1, j);
                H(k, j) = cg * t1 + sg * t2;
                H(k + 1, j) = -std::conj(sg) * t1 + cg * t2;
            }
            // apply from the right to columns k, k+1
            const int iend = std::min(hi, k + 2);
            for (int i = lo; i <= iend; ++i) {
                const Complex t1 = H(i, k), t2 = H(i, k + 1);
                H(i, k) = cg * t1 + std::conj(sg) * t2;
                H(i, k + 1) = -sg * t1 + cg * t2;
            }
            if (k < hi - 1) {
                x = H(k + 1, k);
                y = H(k + 2, k);
            }
        }
    }
}

// Parlett-Reinsch balancing: diagonal similarity with powers of 2.
void balance(std::vector<Complex>& a, int n) {
    auto A = [&](int i, int j) -> Complex& { return a[size_t(i) * n + j]; };
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0, c = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(A(i, j));
                c += std::abs(A(j, i));
            }
            if (r == 0 || c == 0) continue;
            double f = 1.0;
            const double s = r + c;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (c + r < 0.95 * s && f != 1.0) {
                converged = false;
                for (int j = 0; j < n; ++j) A(i, j) /= f;
                for (int j = 0; j < n; ++j) A(j, i) *= f;
            }
        }
    }
}

struct Trimmed {
    std::vector<Complex> monic;  // ascending, monic, nonzero constant term
    int zero_roots = 0;
    int degree = 0;
};

Trimmed trim(const std::vector<Complex>& coeffs) {
    double cmax = 0.0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0 || coeffs.empty())
        throw std::invalid_argument("poly_roots: all coefficients vanish");
    int top = int(coeffs.size()) - 1;
    while (top > 0 && std::abs(coeffs[top]) <= 1e-14 * cmax) --top;
    if (top == 0) return {{}, 0, 0};
    int bottom = 0;
    while (bottom < top && coeffs[bottom] == Complex(0.0, 0.0)) ++bottom;
    Trimmed t;
    t.zero_roots = bottom;
    t.degree = top - bottom;
    t.monic.resize(t.degree + 1);
    const Complex lead = coeffs[top];
    for (int i = 0; i <= t.degree; ++i) t.monic[i] = coeffs[bottom + i] / lead;
    return t;
}

void sort_roots(std::vector<Complex>& r) {
    std::sort(r.begin(), r.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

// A few Newton steps on the monic polynomial; keeps the iterate only
// while the residual decreases.
Complex newton_polish(const std::vector<Complex>& monic, Complex z) {
    const auto eval_both = [&](Complex x, Complex& pd) {
        Complex pv(0, 0);
        pd = Complex(0, 0);
        for (auto it = monic.rbegin(); it != monic.rend(); ++it) {
            pd = pd * x + pv;
            pv = pv * x + *it;
        }
        return pv;
    };
    Complex pd;
    Complex pv = eval_both(z, pd);
    double best = std::abs(pv);
    Complex zbest = z;
    for (int it = 0; it < 4; ++it) {
        if (pd == Complex(0, 0)) break;
        z = z - pv / pd;
        pv = eval_both(z, pd);
        const double r = std::abs(pv);
        if (r < best) {
            best = r;
            zbest = z;
        } else {
            break;
        }
    }
    return zbest;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    const Trimmed t = trim(coeffs);
    std::vector<Complex> roots(t.zero_roots, Complex(0, 0));
    const int n = t.degree;
    if (n >= 1) {
        // companion matrix (already upper Hessenberg)
        std::vector<Complex> h(size_t(n) * n, Complex(0, 0));
        for (int i = 1; i < n; ++i) h[size_t(i) * n + (i - 1)] = Complex(1, 0);
        for (int i = 0; i < n; ++i) h[size_t(i) * n + (n - 1)] = -t.monic[i];
        balance(h, n);
        std::vector<Complex> eig;
        hessenberg_qr_eigenvalues(h, n, eig);
        for (auto& z : eig) roots.push_back(newton_polish(t.monic, z));
    }
    sort_roots(roots);
    return roots;
}

std::vector<Complex> poly_roots(const std::vector<double>& coeffs) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    return poly_roots(c);
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_iters,
                                  double tol) {
    const Trimmed t = trim(coeffs);
    std::vector<Complex> roots(t.zero_roots, Complex(0, 0));
    const int n = t.degree;
    if (n == 0) {
        sort_roots(roots);
        return roots;
    }
    // initial guesses on a slightly eccentric circle inside the Cauchy bound
    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(t.monic[i]));
    const double r0 = 1.0 + bound;
    std::vector<Complex> z(n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * (j + 0.35) / n + 0.5;
        z[j] = (0.6 * r0) * Complex(std::cos(th), std::sin(th));
    }
    const auto eval_both = [&](Complex x, Complex& pd) {
        Complex pv(0, 0);
        pd = Complex(0, 0);
        for (auto it = t.monic.rbegin(); it != t.monic.rend(); ++it) {
            pd = pd * x + pv;
            pv = pv * x + *it;
        }
        return pv;
    };
    for (int it = 0; it < max_iters; ++it) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            Complex pd;
            const Complex pv = eval_both(z[j], pd);
            Complex newt;
            if (pd == Complex(0, 0)) {
                newt = Complex(tol, tol);  // nudge off a critical point
            } else {
                newt = pv / pd;
            }
            Complex sum(0, 0);
            for (int k = 0; k < n; ++k) {
                if (k != j) sum += 1.0 / (z[j] - z[k]);
            }
            const Complex denom = 1.0 - newt * sum;
            const Complex step = (denom == Complex(0, 0)) ? newt : newt / denom;
            z[j] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[j])));
        }
        if (worst < tol) break;
    }
    for (int j = 0; j < n; ++j) roots.push_back(newton_polish(t.monic, z[j]));
    sort_roots(roots);
    return roots;
}

std::vector<Complex> aberth_roots(const std::vector<double>& coeffs, int max_iters,
                                  double tol) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    return aberth_roots(c, max_iters, tol);
}

}  // namespace primordia
