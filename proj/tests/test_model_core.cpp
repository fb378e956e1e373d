#include <doctest.h>

#include <cmath>

#include "primordia/params.hpp"
#include "test_helpers.hpp"

using namespace primordia;

TEST_CASE("hill saturation values") {
    CHECK(hill(0.0, 1.0, 2.0) == 0.0);
    CHECK(hill(0.0, 5.0, 1.5) == 0.0);
    CHECK(hill(1.0, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hill(3.7, 3.7, 2.6) == doctest::Approx(0.5).epsilon(1e-15));
    // hand evaluation 4/(1+4)
    CHECK(hill(2.0, 1.0, 2.0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(hill(-1.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(hill(1.0, 0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(hill(1.0, -2.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(hill(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("hill is monotone and bounded on random triples") {
    const CounterRng rng(41);
    for (int t = 0; t < 500; ++t) {
        const double K = 0.05 + 5.0 * rng.uniform(4 * t);
        const double P = 0.2 + 5.8 * rng.uniform(4 * t + 1);
        const double m1 = 100.0 * rng.uniform(4 * t + 2);
        const double m2 = 100.0 * rng.uniform(4 * t + 3);
        const double h1 = hill(std::min(m1, m2), K, P);
        const double h2 = hill(std::max(m1, m2), K, P);
        CHECK(h1 >= 0.0);
        CHECK(h2 < 1.0);
        CHECK(h1 <= h2 + 1e-15);
    }
}

TEST_CASE("hill derivative matches central differences") {
    const CounterRng rng(42);
    for (int t = 0; t < 200; ++t) {
        const double K = 0.2 + 3.0 * rng.uniform(3 * t);
        const double P = 0.5 + 3.5 * rng.uniform(3 * t + 1);
        const double m = 0.05 + 6.0 * rng.uniform(3 * t + 2);
        const double h = 1e-6 * std::max(1.0, m);
        const double fd = (hill(m + h, K, P) - hill(m - h, K, P)) / (2 * h);
        CHECK(hill_deriv(m, K, P) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("priming wave front, saturation, and errors") {
    ParameterSet p;  // defaults
    // on the front: tanh(0)
    CHECK(priming_wave(p.omega3 * 7.5, 7.5, p) ==
          doctest::Approx(0.5 * p.omega1).epsilon(1e-14));
    // long-time saturation at omega1
    CHECK(priming_wave(3.0, 1e6, p) == doctest::Approx(p.omega1).epsilon(1e-15));
    // tanh argument 2600: saturated to within 1e-12
    CHECK(priming_wave(0.0, 520.0, p) == doctest::Approx(1.0).epsilon(1e-12));
    // early times switch off
    CHECK(priming_wave(10.0, 0.0, p) == doctest::Approx(0.0).epsilon(1e-12));
    ParameterSet bad = p;
    bad.omega3 = 0.0;
    CHECK_THROWS_AS(priming_wave(1.0, 1.0, bad), std::domain_error);
}

TEST_CASE("lame moduli from E and nu") {
    const auto l1 = lame_from_E_nu(3e4, 0.4);
    CHECK(l1.mu == doctest::Approx(10714.285714285714).epsilon(1e-13));
    CHECK(l1.lambda == doctest::Approx(42857.142857142855).epsilon(1e-13));
    const auto l2 = lame_from_E_nu(1.0, 0.0);
    CHECK(l2.mu == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(l2.lambda == 0.0);
    const auto l3 = lame_from_E_nu(2.6, 0.3);
    CHECK(l3.mu == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l3.lambda == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(lame_from_E_nu(3e4, 0.5), std::domain_error);
    CHECK_THROWS_AS(lame_from_E_nu(-1.0, 0.3), std::domain_error);
}

TEST_CASE("steady state at the reference parameters") {
    const ParameterSet p;  // defaults are the reference set
    const SteadyState s = steady_state(p);
    // exact fractions: h1(2)=4/5, h2(2)=1/2, h3(2)=4/29
    CHECK(s.b0 == doctest::Approx(8.0 / 29.0).epsilon(1e-14));
    CHECK(s.k_on == doctest::Approx(0.0525).epsilon(1e-14));
    CHECK(s.k_off == doctest::Approx(37.0 / 145.0).epsilon(1e-14));
    CHECK(s.e0 == doctest::Approx(609.0 / 3569.0).epsilon(1e-14));
    CHECK(s.f0 == doctest::Approx(s.e0 / p.delta_F).epsilon(1e-14));
    CHECK(s.A_e == doctest::Approx(s.k_on + s.k_off).epsilon(1e-15));
    // (lambda + 2mu/3) = 5e4, times tau=60, times (1-4)/25
    CHECK(s.sigma_act_lin == doctest::Approx(-3.6e5).epsilon(1e-12));
}

TEST_CASE("linearization coefficients match finite differences of the kinetics") {
    for (int t = 0; t < 100; ++t) {
        const ParameterSet p = testing::random_parameter_set(90, t);
        const SteadyState s = steady_state(p);
        // R(m, e, b): right side of the epithelium equation with w = omega1
        const auto R = [&](double m, double e, double b) {
            const double kon = p.kappa1 * p.omega1 * hill(m, p.K1, p.P1) +
                               p.kappa2 * hill(m, p.K2, p.P2);
            const double koff =
                (1.0 - hill(m, p.K1, p.P1)) * (p.kappa3 + p.kappa4 * b);
            return kon * (1.0 - e) - koff * e;
        };
        const double h = 1e-6 * std::max(1.0, p.m0);
        const double Am_fd =
            (R(p.m0 + h, s.e0, s.b0) - R(p.m0 - h, s.e0, s.b0)) / (2 * h);
        const double Ae_fd =
            -(R(p.m0, s.e0 + 1e-7, s.b0) - R(p.m0, s.e0 - 1e-7, s.b0)) / 2e-7;
        const double Ab_fd =
            -(R(p.m0, s.e0, s.b0 + 1e-7) - R(p.m0, s.e0, s.b0 - 1e-7)) / 2e-7;
        CHECK(s.A_m == doctest::Approx(Am_fd).epsilon(5e-5));
        CHECK(s.A_e == doctest::Approx(Ae_fd).epsilon(1e-6));
        CHECK(s.A_b == doctest::Approx(Ab_fd).epsilon(1e-6));
        const double hH = 1e-6 * std::max(1.0, p.m0);
        const double H3_fd = (hill(p.m0 + hH, p.K3, p.P3) * (p.m0 + hH) -
                              hill(p.m0 - hH, p.K3, p.P3) * (p.m0 - hH)) /
                             (2 * hH);
        CHECK(s.H3 == doctest::Approx(H3_fd).epsilon(5e-5));
        // the steady state really kills the kinetics
        CHECK(std::abs(R(p.m0, s.e0, s.b0)) <= 1e-12 * (s.k_on + s.k_off + 1.0));
    }
}

TEST_CASE("active stress linearization vanishes at m0 = 1/sqrt(zeta)") {
    ParameterSet p;
    p.m0 = 1.0;
    p.zeta = 1.0;
    CHECK(steady_state(p).sigma_act_lin == doctest::Approx(0.0));

    // bisection on the sign change
    p.zeta = 2.7;
    const auto sl = [&](double m0) {
        ParameterSet q = p;
        q.m0 = m0;
        return steady_state(q).sigma_act_lin;
    };
    double lo = 0.1, hi = 5.0;
    REQUIRE(sl(lo) > 0);
    REQUIRE(sl(hi) < 0);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sl(mid) > 0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(1.0 / std::sqrt(2.7)).epsilon(1e-10));
}

TEST_CASE("degenerate epithelium rates") {
    ParameterSet p;
    p.kappa1 = p.kappa2 = p.kappa3 = p.kappa4 = 0.0;
    CHECK_THROWS_WITH_AS(steady_state(p), "steady_state: epithelium rates degenerate",
                         std::domain_error);
    const SteadyState s0 = steady_state(p, 0.0);
    CHECK(s0.e0 == 0.0);
    CHECK(s0.A_m == 0.0);
    CHECK(s0.A_b == 0.0);
    const SteadyState s1 = steady_state(p, 1.0);
    CHECK(s1.e0 == 1.0);
    CHECK(s1.A_m == 0.0);
    CHECK(s1.A_b == 0.0);

    // zero activation alone needs no flag
    ParameterSet q;
    q.kappa1 = q.kappa2 = 0.0;
    CHECK(steady_state(q).e0 == 0.0);
    // zero inactivation alone gives a fully activated epithelium
    ParameterSet r;
    r.kappa3 = r.kappa4 = 0.0;
    CHECK(steady_state(r).e0 == 1.0);
}

TEST_CASE("parameter validation names the offender") {
    ParameterSet p;
    p.nu = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ParameterSet{};
    p.D_m = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ParameterSet{};
    p.eta = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_NOTHROW(ParameterSet{}.validate());
}
