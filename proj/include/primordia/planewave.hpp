#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "primordia/stability.hpp"

namespace primordia {

/// Evaluates the linearized poro-mechano-chemical system on the plane
/// wave (u, p, m, e, f, b) = w0 exp(i k.x + phi t) with 4th-order
/// centered differences on a periodic patch (one wave period per
/// direction, n_per_period nodes), and compares row by row against
/// M(phi; k) w0. Returns the worst relative discrepancy; expected to
/// fall by ~16x per halving of the spacing.
struct PlaneWaveOracleResult {
    double rel_residual = 0.0;  // max over equations and nodes
};
PlaneWaveOracleResult planewave_residual_oracle(const ParameterSet& p,
                                                const SteadyState& s,
                                                const std::vector<double>& k_vec,
                                                Complex phi,
                                                const Eigen::VectorXcd& w0,
                                                int n_per_period = 48);

/// Right singular vector of the smallest singular value; a numerical
/// null vector when phi is a root of the dispersion relation.
Eigen::VectorXcd smallest_singular_vector(const Eigen::MatrixXcd& M);

}  // namespace primordia
