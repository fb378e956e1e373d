#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "primordia/polynomial.hpp"
#include "primordia/grid.hpp"

using namespace primordia;

namespace {

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{1.0};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0, 0));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return c;
}

double match_roots(const std::vector<Complex>& found, std::vector<Complex> expect) {
    REQUIRE(found.size() == expect.size());
    double worst = 0.0;
    for (const auto& z : found) {
        double best = 1e300;
        size_t pick = 0;
        for (size_t i = 0; i < expect.size(); ++i) {
            const double d = std::abs(z - expect[i]);
            if (d < best) {
                best = d;
                pick = i;
            }
        }
        expect.erase(expect.begin() + pick);
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("quadratic and cubic with known roots") {
    const auto r1 = poly_roots(std::vector<double>{1.0, 0.0, 1.0});  // phi^2 + 1
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r1[0].imag() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r1[1].imag() == doctest::Approx(1.0).epsilon(1e-14));

    // (phi-1)(phi-2)(phi-3) = -6 + 11 phi - 6 phi^2 + phi^3
    const auto r2 = poly_roots(std::vector<double>{-6.0, 11.0, -6.0, 1.0});
    REQUIRE(r2.size() == 3);
    CHECK(r2[0].real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r2[1].real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r2[2].real() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("complex coefficients") {
    const std::vector<Complex> roots{{1.0, 2.0}, {3.0, -1.0}};
    const auto found = poly_roots(poly_from_roots(roots));
    CHECK(match_roots(found, roots) < 1e-12);
}

TEST_CASE("degree 1 and degenerate input") {
    const auto r = poly_roots(std::vector<double>{3.0, -1.5});
    REQUIRE(r.size() == 1);
    CHECK(r[0].real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(poly_roots(std::vector<double>{0.0, 0.0, 0.0}),
                    std::invalid_argument);
    CHECK(poly_roots(std::vector<double>{5.0}).empty());
}

TEST_CASE("leading-coefficient trimming and exact zero roots") {
    // x^2 (x - 1): trailing zeros are exact zero roots
    const auto r = poly_roots(std::vector<double>{0.0, 0.0, -1.0, 1.0});
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Complex(0.0, 0.0));
    CHECK(r[1] == Complex(0.0, 0.0));
    CHECK(r[2].real() == doctest::Approx(1.0).epsilon(1e-14));

    // tiny leading coefficient is trimmed away
    const auto r2 = poly_roots(std::vector<double>{-2.0, 1.0, 1e-20});
    CHECK(r2.size() == 1);
    CHECK(r2[0].real() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("random degree-7 polynomials from known roots") {
    const CounterRng rng(7100);
    for (int t = 0; t < 200; ++t) {
        std::vector<Complex> roots;
        for (int j = 0; j < 7; ++j) {
            const double re = 3.0 * rng.symmetric(uint64_t(16 * t + 2 * j));
            const double im = 3.0 * rng.symmetric(uint64_t(16 * t + 2 * j + 1));
            roots.emplace_back(re, im);
        }
        // keep roots separated so conditioning stays sane
        bool ok = true;
        for (size_t i = 0; i < roots.size() && ok; ++i)
            for (size_t j = i + 1; j < roots.size(); ++j)
                if (std::abs(roots[i] - roots[j]) < 0.05) ok = false;
        if (!ok) continue;
        const auto coeffs = poly_from_roots(roots);
        CHECK(match_roots(poly_roots(coeffs), roots) < 1e-6);
        CHECK(match_roots(aberth_roots(coeffs), roots) < 1e-6);
    }
}

TEST_CASE("residual contract on random coefficients") {
    const CounterRng rng(7200);
    for (int t = 0; t < 200; ++t) {
        std::vector<Complex> coeffs;
        double cmax = 0.0;
        for (int j = 0; j < 8; ++j) {
            const double mag = std::pow(10.0, 4.0 * rng.symmetric(uint64_t(16 * t + 2 * j)));
            const double ph = M_PI * rng.symmetric(uint64_t(16 * t + 2 * j + 1));
            coeffs.emplace_back(mag * std::cos(ph), mag * std::sin(ph));
            cmax = std::max(cmax, mag);
        }
        const auto roots = poly_roots(coeffs);
        REQUIRE(roots.size() == 7);
        for (const auto& z : roots) {
            const double bound =
                1e-8 * cmax * std::pow(std::max(1.0, std::abs(z)), 7.0);
            CHECK(std::abs(poly_eval(coeffs, z)) <= bound);
        }
    }
}

TEST_CASE("deterministic ordering") {
    const std::vector<double> coeffs{-6.0, 11.0, -6.0, 1.0};
    const auto a = poly_roots(coeffs);
    const auto b = poly_roots(coeffs);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(std::is_sorted(a.begin(), a.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    }));
}
