#include <doctest.h>

#include <cmath>

#include "primordia/planewave.hpp"
#include "test_helpers.hpp"

using namespace primordia;
using namespace primordia::testing;

namespace {

Eigen::VectorXcd random_unit_vector(uint64_t seed, uint64_t index) {
    const CounterRng rng(seed);
    Eigen::VectorXcd w(7);
    for (int i = 0; i < 7; ++i)
        w[i] = Complex(rng.symmetric(index * 16 + uint64_t(2 * i)),
                       rng.symmetric(index * 16 + uint64_t(2 * i + 1)));
    return w / w.norm();
}

}  // namespace

TEST_CASE("constant fields have zero spatial residual") {
    const ParameterSet p;
    const SteadyState s = steady_state(p);
    const Eigen::VectorXcd w0 = random_unit_vector(11, 0);
    const auto r = planewave_residual_oracle(p, s, {0.0, 0.0}, Complex(0.3, -0.2), w0, 16);
    CHECK(r.rel_residual <= 1e-12);
}

TEST_CASE("fourth-order convergence against the system matrix") {
    for (int t = 0; t < 6; ++t) {
        const ParameterSet p = random_parameter_set(77, t);
        const SteadyState s = steady_state(p);
        const CounterRng rng(78);
        const std::vector<double> k{1.0 + 2.0 * rng.uniform(4 * t),
                                    -2.0 + 4.0 * rng.uniform(4 * t + 1)};
        const Complex phi(rng.symmetric(4 * t + 2), rng.symmetric(4 * t + 3));
        const Eigen::VectorXcd w0 = random_unit_vector(79, t);
        const double r1 = planewave_residual_oracle(p, s, k, phi, w0, 24).rel_residual;
        const double r2 = planewave_residual_oracle(p, s, k, phi, w0, 48).rel_residual;
        const double r3 = planewave_residual_oracle(p, s, k, phi, w0, 96).rel_residual;
        CHECK(r1 / r2 >= 12.0);
        CHECK(r2 / r3 >= 12.0);
        CHECK(r3 <= 1e-6);
    }
}

TEST_CASE("eigenvector of a dispersion root solves matrix and PDE") {
    const ParameterSet p;
    const SteadyState s = steady_state(p);
    const double k2 = 2.0;
    const auto pts = dispersion(p, s, {k2});
    const WaveProbe w = WaveProbe::from_k2(k2, 2);
    // pick the root with the largest real part and extract its null vector
    const Complex phi = pts.front().argmax_root;
    const Eigen::MatrixXcd M = assemble_system_matrix(p, s, w, phi);
    const Eigen::VectorXcd v = smallest_singular_vector(M);
    double mnorm = 0.0;
    for (int r = 0; r < 7; ++r) {
        double acc = 0.0;
        for (int c = 0; c < 7; ++c) acc += std::abs(M(r, c));
        mnorm = std::max(mnorm, acc);
    }
    CHECK((M * v).norm() <= 1e-6 * mnorm);
    const auto res = planewave_residual_oracle(p, s, {std::sqrt(k2), 0.0}, phi, v, 192);
    CHECK(res.rel_residual <= 1e-6);
}

TEST_CASE("input validation") {
    const ParameterSet p;
    const SteadyState s = steady_state(p);
    const Eigen::VectorXcd w0 = random_unit_vector(12, 1);
    CHECK_THROWS_AS(planewave_residual_oracle(p, s, {1.0}, Complex(0, 0), w0),
                    std::invalid_argument);
    CHECK_THROWS_AS(planewave_residual_oracle(p, s, {1.0, 0.0}, Complex(0, 0),
                                              Eigen::VectorXcd::Ones(5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(planewave_residual_oracle(p, s, {1.0, 0.0}, Complex(0, 0), w0, 4),
                    std::invalid_argument);
}
