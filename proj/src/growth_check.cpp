#include "primordia/growth_check.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "primordia/grid.hpp"

namespace primordia {

Tensor3 random_rotation(uint64_t seed, uint64_t index) {
    const CounterRng rng(seed);
    const uint64_t base = index * 8;
    const double u1 = rng.uniform(base), u2 = rng.uniform(base + 1),
                 u3 = rng.uniform(base + 2);
    // uniform quaternion (Shoemake)
    const double q0 = std::sqrt(1 - u1) * std::sin(2 * M_PI * u2);
    const double q1 = std::sqrt(1 - u1) * std::cos(2 * M_PI * u2);
    const double q2 = std::sqrt(u1) * std::sin(2 * M_PI * u3);
    const double q3 = std::sqrt(u1) * std::cos(2 * M_PI * u3);
    return Eigen::Quaterniond(q0, q1, q2, q3).normalized().toRotationMatrix();
}

Tensor3 random_deformation(uint64_t seed, uint64_t index) {
    const CounterRng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const uint64_t base = (index * 64 + uint64_t(attempt)) * 16 + 100000;
        Tensor3 A;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                A(i, j) = rng.symmetric(base + uint64_t(3 * i + j));
        Tensor3 F = Tensor3::Identity() + 0.4 * A;
        if (F.determinant() <= 0.2) continue;
        const Eigen::JacobiSVD<Tensor3> svd(F);
        const double cond =
            svd.singularValues()(0) / std::max(svd.singularValues()(2), 1e-300);
        if (cond > 1e3) continue;
        return F;
    }
    return Tensor3::Identity();
}

namespace {

GrowthFactors random_growth(uint64_t seed, uint64_t index, int dim) {
    const CounterRng rng(seed + 77);
    const Tensor3 R = random_rotation(seed + 13, index);
    GrowthFactors g;
    g.dim = dim;
    for (int i = 0; i < 3; ++i) {
        g.k[i] = R.col(i);
        g.gamma[i] = 2.0 * rng.uniform(index * 8 + uint64_t(i));
        g.delta[i] = 0.5 * rng.uniform(index * 8 + uint64_t(i) + 4) + 0.01;
    }
    return g;
}

double rel_err(const Tensor3& a, const Tensor3& b) {
    return (a - b).norm() / std::max(1.0, std::max(a.norm(), b.norm()));
}

}  // namespace

std::vector<GrowthCheckLine> run_growth_checks(int samples, uint64_t seed) {
    std::vector<GrowthCheckLine> out;
    const auto add = [&](const std::string& name, double worst, double tol) {
        out.push_back({name, samples, worst, tol, worst <= tol});
    };
    const CounterRng rng(seed + 1234);

    double worst_jj = 0, worst_frame = 0, worst_spd = 0, worst_energy = 0;
    double worst_trc = 0, worst_darcy = 0, worst_ptrace = 0, worst_mass = 0;
    double worst_rate = 0, worst_incomp = 0;

    for (int s = 0; s < samples; ++s) {
        const uint64_t idx = uint64_t(s);
        const Tensor3 F = random_deformation(seed, idx);
        const GrowthFactors g = random_growth(seed, idx, 3);
        const Tensor3 Fg = growth_tensor(g);
        const DeformationState st = elastic_decomposition(F, Fg);

        // J = Je Jg
        worst_jj = std::max(worst_jj,
                            std::abs(st.J - st.J_e * st.J_g) / std::max(1e-300, std::abs(st.J)));

        // frame invariance: det F_g unchanged under a rotated frame
        {
            GrowthFactors gr = g;
            const Tensor3 R = random_rotation(seed + 999, idx);
            for (int i = 0; i < 3; ++i) gr.k[i] = R * g.k[i];
            const double d1 = growth_tensor(g).determinant();
            const double d2 = growth_tensor(gr).determinant();
            const double axis = (1.0 + std::sqrt(g.gamma[0])) * (1.0 + std::sqrt(g.gamma[1])) *
                                (1.0 + g.gamma[2]);
            worst_frame = std::max(worst_frame, std::abs(d1 - d2) / std::max(1.0, axis));
            worst_frame = std::max(worst_frame, std::abs(d1 - axis) / std::max(1.0, axis));
        }

        // SPD pullback
        {
            const Tensor3 T = chemotaxis_pullback_tensor(F, 0.7);
            worst_spd = std::max(worst_spd, (T - T.transpose()).norm() / T.norm());
            const Eigen::SelfAdjointEigenSolver<Tensor3> es(T);
            if (es.eigenvalues()(0) <= 0) worst_spd = std::max(worst_spd, 1.0);
        }

        // energy consistency: P_e + psi J F^-T == J dPsi/dF (FD), psi matched to mu
        {
            const double mu = 3.0 + 2.0 * rng.uniform(idx);
            const double psi = psi_for_incompressibility(mu);
            const Tensor3 Pe = neo_hookean_stress(st, mu, psi);
            const auto energy = [&](const Tensor3& Fx) {
                const Tensor3 Fe = Fx * Fg.inverse();
                return 0.5 * mu * ((Fe.transpose() * Fe).trace() - 3.0);
            };
            Tensor3 fd;
            const double h = 1e-6;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    Tensor3 Fp = F, Fm = F;
                    Fp(i, j) += h;
                    Fm(i, j) -= h;
                    fd(i, j) = (energy(Fp) - energy(Fm)) / (2 * h);
                }
            const Tensor3 lhs = Pe + psi * st.J * F.inverse().transpose();
            const Tensor3 rhs = st.J * fd;
            worst_energy = std::max(worst_energy, rel_err(lhs, rhs));
        }

        // tr C - d: zero at identity and 2 div u at first order
        {
            Tensor3 G;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    G(i, j) = 1e-4 * rng.symmetric(idx * 16 + uint64_t(3 * i + j + 1));
            const Tensor3 Fl = Tensor3::Identity() + G;
            const double trc = (Fl.transpose() * Fl).trace() - 3.0;
            worst_trc = std::max(worst_trc, std::abs(trc - 2.0 * G.trace()));
        }

        // Darcy objectivity: rigid rotation maps the Eulerian value by R
        {
            const Tensor3 R = random_rotation(seed + 555, idx);
            Vector3 gp;
            gp << rng.symmetric(idx * 4 + 1), rng.symmetric(idx * 4 + 2),
                rng.symmetric(idx * 4 + 3);
            const Vector3 v_rot = darcy_pullback(R, 0.3, 0.4, gp);
            const Vector3 v_eul = -(0.3 / 0.4) * gp;
            worst_darcy =
                std::max(worst_darcy, (v_rot - R * v_eul).norm() / std::max(1.0, v_eul.norm()));
        }

        // fluid stress trace identity tr(P_f F^T)/J = -d aBW p
        {
            const double pv = rng.symmetric(idx * 4 + 9);
            const Tensor3 Pf = fluid_stress(F, pv, 0.25);
            const double lhs = (Pf * F.transpose()).trace() / st.J;
            worst_ptrace = std::max(worst_ptrace, std::abs(lhs - (-3.0 * 0.25 * pv)));
        }

        // mass source chain rule: FD of gamma3(m(t)) matches the folded term
        {
            const double m = 2.0 * rng.uniform(idx * 4 + 11);
            const double mdot = rng.symmetric(idx * 4 + 13);
            const double dt = 1e-6;
            const auto gamma3 = [&](double mm) { return g.delta[2] * mm / (1.0 + mm * mm); };
            const double fd = (gamma3(m + dt * mdot) - gamma3(m - dt * mdot)) / (2 * dt);
            const double term = gamma3_m_derivative(m, g.delta[2]) * mdot;
            worst_mass = std::max(worst_mass, std::abs(fd - term));
            const double ell = mass_source_fluid(g, mdot, 1.0, m);
            worst_mass = std::max(
                worst_mass, std::abs(ell - (2 * g.delta[0] + g.delta[1] + term)));
        }

        // rate constraint on exponential growth histories
        {
            const double c1 = rng.symmetric(idx * 4 + 17), c2 = rng.symmetric(idx * 4 + 18),
                         c3 = rng.symmetric(idx * 4 + 19);
            const double t = 0.7;
            const std::array<double, 3> gam = {std::exp(c1 * t), std::exp(c2 * t),
                                               std::exp(c3 * t)};
            const std::array<double, 3> gdot = {c1 * gam[0], c2 * gam[1], c3 * gam[2]};
            const double rs = 0.3, phis = 0.6;
            const double resid = growth_rate_constraint_residual(gam, gdot, rs, phis, 3);
            worst_rate =
                std::max(worst_rate, std::abs(resid - (c1 + c2 + c3 - rs / phis)));
        }

        // incompressibility diagnostic: det F_e = 1 constructions give J = Jg
        {
            Tensor3 Fe = random_deformation(seed + 321, idx);
            Fe /= std::cbrt(Fe.determinant());
            const Tensor3 Fc = Fe * Fg;
            const DeformationState stc = elastic_decomposition(Fc, Fg);
            worst_incomp = std::max(worst_incomp,
                                    std::abs(stc.J - stc.J_g) / std::max(1.0, stc.J_g));
            worst_incomp = std::max(worst_incomp, std::abs(stc.J_e - 1.0));
        }
    }

    add("J = Je * Jg", worst_jj, 1e-10);
    add("growth tensor frame invariance", worst_frame, 1e-12);
    add("pullback tensor SPD", worst_spd, 1e-12);
    add("neo-Hookean energy consistency", worst_energy, 1e-6);
    add("tr C - d linearization", worst_trc, 1e-7);
    add("Darcy pullback objectivity", worst_darcy, 1e-12);
    add("fluid stress trace identity", worst_ptrace, 1e-10);
    add("fluid mass source chain rule", worst_mass, 1e-6);
    add("growth rate constraint", worst_rate, 1e-12);
    add("incompressible states give J = Jg", worst_incomp, 1e-10);
    return out;
}

std::string format_growth_table(const std::vector<GrowthCheckLine>& lines) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-36s %8s %12s %10s %s\n", "identity", "samples",
                  "worst", "tol", "status");
    os << buf;
    for (const auto& l : lines) {
        std::snprintf(buf, sizeof(buf), "%-36s %8d %12.3e %10.1e %s\n", l.name.c_str(),
                      l.samples, l.worst, l.tolerance, l.passed ? "PASS" : "FAIL");
        os << buf;
    }
    return os.str();
}

}  // namespace primordia
