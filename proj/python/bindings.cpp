#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "primordia/cli.hpp"
#include "primordia/config.hpp"
#include "primordia/growth_check.hpp"
#include "primordia/io.hpp"
#include "primordia/pattern_space.hpp"
#include "primordia/planewave.hpp"

namespace py = pybind11;
using namespace primordia;

namespace {

template <typename T, size_t N>
py::list to_list(const std::array<T, N>& a) {
    py::list out;
    for (const auto& v : a) out.append(v);
    return out;
}

}  // namespace

PYBIND11_MODULE(_primordia, m) {
    m.doc() = "poro-mechano-chemical patterning toolkit";
    m.attr("__version__") = kToolVersion;

    // ---- model core ----
    py::class_<ParameterSet> pset(m, "ParameterSet");
    pset.def(py::init<>());
#define PRIMORDIA_FIELD(name) pset.def_readwrite(#name, &ParameterSet::name)
    PRIMORDIA_FIELD(m0); PRIMORDIA_FIELD(D_m); PRIMORDIA_FIELD(D_f);
    PRIMORDIA_FIELD(alpha); PRIMORDIA_FIELD(kappa1); PRIMORDIA_FIELD(kappa2);
    PRIMORDIA_FIELD(kappa3); PRIMORDIA_FIELD(kappa4); PRIMORDIA_FIELD(K1);
    PRIMORDIA_FIELD(K2); PRIMORDIA_FIELD(K3); PRIMORDIA_FIELD(P1);
    PRIMORDIA_FIELD(P2); PRIMORDIA_FIELD(P3); PRIMORDIA_FIELD(delta_F);
    PRIMORDIA_FIELD(delta_B); PRIMORDIA_FIELD(omega1); PRIMORDIA_FIELD(omega2);
    PRIMORDIA_FIELD(omega3); PRIMORDIA_FIELD(gamma_exp); PRIMORDIA_FIELD(E);
    PRIMORDIA_FIELD(nu); PRIMORDIA_FIELD(C0); PRIMORDIA_FIELD(kappa);
    PRIMORDIA_FIELD(alpha_BW); PRIMORDIA_FIELD(tau); PRIMORDIA_FIELD(eta);
    PRIMORDIA_FIELD(xi_f); PRIMORDIA_FIELD(rho); PRIMORDIA_FIELD(zeta);
#undef PRIMORDIA_FIELD
    pset.def("mu", &ParameterSet::mu)
        .def("lambda_", &ParameterSet::lambda)
        .def("validate", &ParameterSet::validate);

    py::class_<SteadyState>(m, "SteadyState")
        .def_readonly("m0", &SteadyState::m0)
        .def_readonly("e0", &SteadyState::e0)
        .def_readonly("f0", &SteadyState::f0)
        .def_readonly("b0", &SteadyState::b0)
        .def_readonly("k_on", &SteadyState::k_on)
        .def_readonly("k_off", &SteadyState::k_off)
        .def_readonly("A_m", &SteadyState::A_m)
        .def_readonly("A_e", &SteadyState::A_e)
        .def_readonly("A_b", &SteadyState::A_b)
        .def_readonly("H3", &SteadyState::H3)
        .def_readonly("sigma_act_lin", &SteadyState::sigma_act_lin)
        .def_readonly("mu", &SteadyState::mu)
        .def_readonly("lambda_", &SteadyState::lambda);

    m.def("hill", &hill, py::arg("m"), py::arg("K"), py::arg("P"));
    m.def("hill_deriv", &hill_deriv, py::arg("m"), py::arg("K"), py::arg("P"));
    m.def("priming_wave", &priming_wave, py::arg("x2"), py::arg("t"), py::arg("params"));
    m.def("lame_from_E_nu", [](double E, double nu) {
        const auto l = lame_from_E_nu(E, nu);
        return py::make_tuple(l.mu, l.lambda);
    });
    m.def("steady_state", &steady_state, py::arg("params"),
          py::arg("degenerate_e0") = std::nullopt);

    // ---- polynomials & stability ----
    m.def("poly_roots",
          [](const std::vector<Complex>& c) { return poly_roots(c); });
    m.def("aberth_roots", [](const std::vector<Complex>& c) { return aberth_roots(c); });

    py::class_<CharPoly>(m, "CharPoly")
        .def_readonly("k2", &CharPoly::k2)
        .def_readonly("coupling_const", &CharPoly::coupling_const)
        .def_property_readonly("a", [](const CharPoly& c) { return to_list(c.a); })
        .def_property_readonly("b", [](const CharPoly& c) { return to_list(c.b); })
        .def_property_readonly("bhat", [](const CharPoly& c) { return to_list(c.bhat); })
        .def_property_readonly("c", [](const CharPoly& c) { return to_list(c.c); })
        .def_property_readonly("full", [](const CharPoly& c) { return to_list(c.full); });
    m.def("char_poly", &char_poly, py::arg("params"), py::arg("steady"), py::arg("k2"));

    m.def("assemble_system_matrix",
          [](const ParameterSet& p, const SteadyState& s, const std::vector<double>& k,
             Complex phi) {
              return assemble_system_matrix(p, s, WaveProbe::from_vector(k), phi);
          });

    py::class_<DispersionPoint>(m, "DispersionPoint")
        .def_readonly("k2", &DispersionPoint::k2)
        .def_readonly("roots", &DispersionPoint::roots)
        .def_readonly("max_re", &DispersionPoint::max_re)
        .def_readonly("argmax_root", &DispersionPoint::argmax_root);
    m.def(
        "dispersion",
        [](const ParameterSet& p, const SteadyState& s, const std::vector<double>& grid,
           bool include_inertial, int dim) {
            DispersionOptions opt;
            opt.include_inertial_factor = include_inertial;
            opt.dim = dim;
            return dispersion(p, s, grid, opt);
        },
        py::arg("params"), py::arg("steady"), py::arg("k2_grid"),
        py::arg("include_inertial_factor") = false, py::arg("dim") = 2);
    m.def("default_k2_grid", &default_k2_grid, py::arg("k2_min") = 1e-3,
          py::arg("k2_max") = 50.0, py::arg("points") = 500);

    m.def("routh_hurwitz_cubic", [](double a3, double a2, double a1, double a0) {
        const auto r = routh_hurwitz_cubic(a3, a2, a1, a0);
        return py::make_tuple(r.stable, r.margin);
    });

    py::class_<UncoupledConditions>(m, "UncoupledConditions")
        .def_readonly("cond1", &UncoupledConditions::cond1)
        .def_readonly("cond2", &UncoupledConditions::cond2)
        .def_readonly("cond3", &UncoupledConditions::cond3)
        .def_readonly("cond1_holds", &UncoupledConditions::cond1_holds)
        .def_readonly("cond2_holds", &UncoupledConditions::cond2_holds)
        .def_readonly("cond3_holds", &UncoupledConditions::cond3_holds)
        .def_readonly("min_a0", &UncoupledConditions::min_a0)
        .def_readonly("argmin_k2", &UncoupledConditions::argmin_k2)
        .def_readonly("patterning", &UncoupledConditions::patterning);
    py::class_<ThetaCoeffs>(m, "ThetaCoeffs")
        .def_readonly("theta1", &ThetaCoeffs::theta1)
        .def_readonly("theta2", &ThetaCoeffs::theta2)
        .def_readonly("theta3", &ThetaCoeffs::theta3)
        .def_readonly("theta4", &ThetaCoeffs::theta4);
    py::class_<CoupledConditions>(m, "CoupledConditions")
        .def_readonly("theta", &CoupledConditions::theta)
        .def_readonly("condC1", &CoupledConditions::condC1)
        .def_readonly("condC2", &CoupledConditions::condC2)
        .def_readonly("condC3", &CoupledConditions::condC3)
        .def_readonly("condCDisc", &CoupledConditions::condCDisc)
        .def_readonly("min_d0", &CoupledConditions::min_d0)
        .def_readonly("argmin_k2", &CoupledConditions::argmin_k2)
        .def_readonly("patterning", &CoupledConditions::patterning);

    py::class_<K2Window>(m, "K2Window")
        .def(py::init<>())
        .def_readwrite("k2_min", &K2Window::k2_min)
        .def_readwrite("k2_max", &K2Window::k2_max)
        .def_readwrite("points", &K2Window::points);
    py::enum_<CriticalMode>(m, "CriticalMode")
        .value("Uncoupled", CriticalMode::Uncoupled)
        .value("Coupled", CriticalMode::Coupled);

    m.def("uncoupled_conditions", &uncoupled_conditions, py::arg("params"),
          py::arg("steady"), py::arg("window") = K2Window{});
    m.def("coupled_theta", &coupled_theta);
    m.def("coupled_conditions", &coupled_conditions, py::arg("params"),
          py::arg("steady"), py::arg("window") = K2Window{});
    m.def("critical_wavenumber", &critical_wavenumber);
    m.def(
        "critical_parameter",
        [](const ParameterSet& p, const std::string& name, double lo, double hi,
           CriticalMode mode) { return critical_parameter(p, name, lo, hi, mode); },
        py::arg("params"), py::arg("name"), py::arg("lo"), py::arg("hi"),
        py::arg("mode"));
    m.def("d0_value", &d0_value);

    py::class_<AxisSpec>(m, "AxisSpec")
        .def(py::init([](const std::string& name, double lo, double hi, int count) {
                 return AxisSpec{name, lo, hi, count};
             }),
             py::arg("name"), py::arg("min"), py::arg("max"), py::arg("count"))
        .def_readonly("name", &AxisSpec::name)
        .def_readonly("min", &AxisSpec::min)
        .def_readonly("max", &AxisSpec::max)
        .def_readonly("count", &AxisSpec::count)
        .def("value_at", &AxisSpec::value_at);
    py::class_<PatternSpaceGrid>(m, "PatternSpaceGrid")
        .def_readonly("axis1", &PatternSpaceGrid::axis1)
        .def_readonly("axis2", &PatternSpaceGrid::axis2)
        .def_readonly("condUC1", &PatternSpaceGrid::condUC1)
        .def_readonly("condUC2", &PatternSpaceGrid::condUC2)
        .def_readonly("condUC3", &PatternSpaceGrid::condUC3)
        .def_readonly("condC1", &PatternSpaceGrid::condC1)
        .def_readonly("condC2", &PatternSpaceGrid::condC2)
        .def_readonly("condC3", &PatternSpaceGrid::condC3)
        .def_readonly("condCDisc", &PatternSpaceGrid::condCDisc)
        .def_readonly("patterning_uncoupled", &PatternSpaceGrid::patterning_uncoupled)
        .def_readonly("patterning_coupled", &PatternSpaceGrid::patterning_coupled)
        .def("cells", &PatternSpaceGrid::cells)
        .def("index", &PatternSpaceGrid::index);
    m.def("pattern_space", &pattern_space, py::arg("params"), py::arg("axis1"),
          py::arg("axis2"), py::arg("mode"), py::arg("window") = K2Window{});

    // ---- growth kinematics ----
    py::class_<GrowthFactors>(m, "GrowthFactors")
        .def(py::init([](std::array<double, 3> gamma, std::array<double, 3> delta,
                         int dim) {
                 GrowthFactors g;
                 g.gamma = gamma;
                 g.delta = delta;
                 g.dim = dim;
                 return g;
             }),
             py::arg("gamma") = std::array<double, 3>{0, 0, 0},
             py::arg("delta") = std::array<double, 3>{0, 0, 0}, py::arg("dim") = 3)
        .def_readwrite("gamma", &GrowthFactors::gamma)
        .def_readwrite("delta", &GrowthFactors::delta)
        .def_readwrite("dim", &GrowthFactors::dim);
    py::class_<DeformationState>(m, "DeformationState")
        .def_readonly("F", &DeformationState::F)
        .def_readonly("F_g", &DeformationState::F_g)
        .def_readonly("F_e", &DeformationState::F_e)
        .def_readonly("J", &DeformationState::J)
        .def_readonly("J_g", &DeformationState::J_g)
        .def_readonly("J_e", &DeformationState::J_e)
        .def_readonly("C", &DeformationState::C)
        .def_readonly("B_e", &DeformationState::B_e);
    m.def("growth_tensor", &growth_tensor);
    m.def("gamma_evolution", &gamma_evolution, py::arg("t"), py::arg("m"), py::arg("g"));
    m.def("elastic_decomposition", &elastic_decomposition);
    m.def("neo_hookean_stress", &neo_hookean_stress);
    m.def("fluid_stress", &fluid_stress);
    m.def("darcy_pullback", &darcy_pullback);
    m.def("mass_source_fluid", &mass_source_fluid);
    m.def("solid_mass_growth_rate",
          [](double phi_s, double m, double m0, double alpha0) {
              return solid_mass_growth_rate(PhaseFractions{phi_s, 1.0 - phi_s}, m, m0,
                                            alpha0);
          });
    m.def("growth_rate_constraint_residual", &growth_rate_constraint_residual,
          py::arg("gamma"), py::arg("gamma_dot"), py::arg("r_s"), py::arg("phi_s"),
          py::arg("dim") = 3);
    m.def("chemotaxis_pullback_tensor", &chemotaxis_pullback_tensor);
    m.def("run_growth_checks", [](int samples, uint64_t seed) {
        py::list out;
        for (const auto& l : run_growth_checks(samples, seed)) {
            py::dict d;
            d["name"] = l.name;
            d["worst"] = l.worst;
            d["tolerance"] = l.tolerance;
            d["passed"] = l.passed;
            out.append(d);
        }
        return out;
    }, py::arg("samples") = 1000, py::arg("seed") = 2024);

    // ---- simulator ----
    py::class_<Grid2D>(m, "Grid2D")
        .def(py::init([](double Lx, double Ly, int nx, int ny) {
                 return Grid2D{Lx, Ly, nx, ny};
             }),
             py::arg("Lx") = 20.0, py::arg("Ly") = 20.0, py::arg("nx") = 128,
             py::arg("ny") = 128)
        .def_readwrite("Lx", &Grid2D::Lx)
        .def_readwrite("Ly", &Grid2D::Ly)
        .def_readwrite("nx", &Grid2D::nx)
        .def_readwrite("ny", &Grid2D::ny);
    py::class_<FieldState>(m, "FieldState")
        .def_readonly("t", &FieldState::t)
        .def_readonly("u1", &FieldState::u1)
        .def_readonly("u2", &FieldState::u2)
        .def_readonly("p", &FieldState::p)
        .def_readonly("m", &FieldState::m)
        .def_readonly("e", &FieldState::e)
        .def_readonly("f", &FieldState::f)
        .def_readonly("b", &FieldState::b);
    py::class_<Diagnostics>(m, "Diagnostics")
        .def_readonly("mass_m", &Diagnostics::mass_m)
        .def_readonly("var_m", &Diagnostics::var_m)
        .def_readonly("min_m", &Diagnostics::min_m)
        .def_readonly("max_m", &Diagnostics::max_m)
        .def_readonly("min_e", &Diagnostics::min_e)
        .def_readonly("max_e", &Diagnostics::max_e);
    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("window", &RunConfig::window)
        .def_property_readonly("params",
                               [](const RunConfig& c) { return c.sim.params; });
    m.def("parse_config", &parse_config);
    m.def("parse_config_text", &parse_config_text, py::arg("text"),
          py::arg("origin") = "<config>");
    py::class_<Simulator>(m, "Simulator")
        .def(py::init([](const RunConfig& cfg) { return new Simulator(cfg.sim); }))
        .def("init_state", &Simulator::init_state)
        .def("coupled_step",
             [](const Simulator& s, FieldState& st) {
                 const auto rep = s.coupled_step(st);
                 py::dict d;
                 d["outer_iterations"] = rep.outer_iterations;
                 d["final_change"] = rep.final_change;
                 d["clipped_nodes"] = rep.clipped_nodes;
                 return d;
             })
        .def("diagnostics", &Simulator::diagnostics)
        .def("run_simulation", &Simulator::run_simulation, py::arg("out_dir"));

    m.def("dispatch", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
