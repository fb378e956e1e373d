#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>
#include <set>
#include <string>

#include "primordia/grid.hpp"
#include "primordia/params.hpp"

namespace primordia {

enum class Edge { Bottom, Top, Left, Right };

struct TractionLoad {
    double s0 = 0.0;      // magnitude
    double t_hat = 320.0; // period
    Edge edge = Edge::Top;

    /// t = (0, s0 sin(pi t / t_hat)) on the loaded edge
    double value_at(double t) const;
};

struct SimConfig {
    ParameterSet params;
    Grid2D grid{20.0, 20.0, 128, 128};
    double dt = 0.2;
    double t_final = 520.0;
    double noise_amplitude = 0.01;
    uint64_t seed = 1;
    int output_every = 200;  // steps between snapshots; 0 = final only
    double fixed_point_tol = 1e-6;
    int fixed_point_max_iters = 5;
    std::set<Edge> clamped{Edge::Bottom, Edge::Top, Edge::Left, Edge::Right};
    TractionLoad load;
    bool priming_saturated = false;  // freeze w at omega1
    double lin_tol = 1e-9;
    double clip_abort_fraction = 1e-3;  // clipped nodes per step above this abort

    void validate() const;
    std::set<Edge> traction_edges() const;  // complement of clamped
};

/// Thrown when a linear solve fails; carries residual diagnostics.
struct SimNumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepReport {
    int outer_iterations = 0;
    double final_change = 0.0;
    int clipped_nodes = 0;
    bool cfl_warning = false;
};

struct Diagnostics {
    double mass_m = 0, mass_e = 0, mass_f = 0, mass_b = 0;  // trapezoid integrals
    double var_m = 0;                                       // population variance
    double min_m = 0, max_m = 0, min_e = 0, max_e = 0;
    double min_f = 0, max_f = 0, min_b = 0, max_b = 0;
    double min_p = 0, max_p = 0;
    double min_u1 = 0, max_u1 = 0, min_u2 = 0, max_u2 = 0;
};

/// Time-domain simulator of the coupled dimensionless linear
/// poroelasticity + chemotaxis system on a uniform grid. Chemotaxis is
/// advanced IMEX (implicit 5-point diffusion in finite-volume form,
/// explicit flux-form chemotaxis, upwinded advection, nodal epithelium
/// kinetics); poromechanics by Newmark-beta (1/4, 1/2) with backward
/// Euler pressure, solved monolithically with a prefactored sparse LU.
class Simulator {
public:
    explicit Simulator(const SimConfig& cfg);
    ~Simulator();

    const SimConfig& config() const { return cfg_; }

    /// Noisy mesenchymal field over the base state; epithelium, FGF and
    /// BMP from the steady-state formulas with w(x, 0) pointwise;
    /// mechanics at rest.
    FieldState init_state() const;

    /// Advances (m, e, f, b) by dt using the velocity and displacement
    /// carried by the state. Returns the number of clipped nodes.
    int step_chemotaxis(FieldState& state, bool* cfl_warning = nullptr) const;

    /// Advances (u, v, a, p) by dt; the active stress is evaluated at
    /// the state's current m.
    void step_poroelastic(FieldState& state) const;

    /// One fixed-point coupled step of size dt.
    StepReport coupled_step(FieldState& state) const;

    Diagnostics diagnostics(const FieldState& state) const;

    /// Advances to t_final, dumping field snapshots at the output
    /// cadence and a per-step diagnostics CSV under out_dir (pass an
    /// empty string to skip all file output). Partial outputs are
    /// retained if a step aborts.
    FieldState run_simulation(const std::string& out_dir);

private:
    struct Operators;
    SimConfig cfg_;
    std::unique_ptr<Operators> ops_;

    double priming(double x2, double t) const;
};

/// Plain-text structured-grid snapshot (header lines, then row-major
/// nodal values at 17 significant digits).
void write_field_snapshot(const std::string& path, const Grid2D& grid, double t,
                          const std::string& field_name,
                          const std::vector<double>& values);
std::vector<double> read_field_snapshot(const std::string& path, Grid2D* grid_out = nullptr,
                                        double* t_out = nullptr,
                                        std::string* name_out = nullptr);

}  // namespace primordia
