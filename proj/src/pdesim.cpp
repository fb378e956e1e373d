#include "primordia/pdesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace primordia {

namespace {
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

constexpr double kNewmarkBeta = 0.25;
constexpr double kNewmarkGamma = 0.5;

// Jacobi-preconditioned conjugate gradient; tol is relative to ||b||.
void cg_solve(const SpMat& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
              double tol, int max_iters, const char* what) {
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero();
        return;
    }
    Eigen::VectorXd diag = A.diagonal();
    for (int i = 0; i < diag.size(); ++i)
        if (diag[i] <= 0) diag[i] = 1.0;
    Eigen::VectorXd r = b - A * x;
    Eigen::VectorXd z = r.cwiseQuotient(diag);
    Eigen::VectorXd d = z;
    double rz = r.dot(z);
    for (int it = 0; it < max_iters; ++it) {
        if (r.norm() <= tol * bnorm) return;
        const Eigen::VectorXd Ad = A * d;
        const double alpha = rz / d.dot(Ad);
        x += alpha * d;
        r -= alpha * Ad;
        z = r.cwiseQuotient(diag);
        const double rz_new = r.dot(z);
        d = z + (rz_new / rz) * d;
        rz = rz_new;
    }
    if (r.norm() <= tol * bnorm) return;
    std::ostringstream msg;
    msg << what << ": CG failed to reach tol " << tol << " in " << max_iters
        << " iterations; relative residual " << r.norm() / bnorm;
    throw SimNumericalError(msg.str());
}

}  // namespace

double TractionLoad::value_at(double t) const {
    if (t_hat <= 0) throw std::invalid_argument("TractionLoad: t_hat must be > 0");
    return s0 * std::sin(M_PI * t / t_hat);
}

void SimConfig::validate() const {
    params.validate();
    grid.validate();
    if (dt <= 0) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (t_final < 0) throw std::invalid_argument("SimConfig: t_final must be >= 0");
    if (fixed_point_tol <= 0)
        throw std::invalid_argument("SimConfig: fixed_point_tol must be > 0");
    if (fixed_point_max_iters < 1)
        throw std::invalid_argument("SimConfig: fixed_point_max_iters must be >= 1");
    if (noise_amplitude < 0)
        throw std::invalid_argument("SimConfig: noise amplitude must be >= 0");
    if (load.s0 != 0 && load.t_hat <= 0)
        throw std::invalid_argument("SimConfig: traction period must be > 0");
    if (load.s0 != 0 && clamped.count(load.edge))
        throw std::invalid_argument("SimConfig: traction edge is clamped");
}

std::set<Edge> SimConfig::traction_edges() const {
    std::set<Edge> out;
    for (Edge e : {Edge::Bottom, Edge::Top, Edge::Left, Edge::Right})
        if (!clamped.count(e)) out.insert(e);
    return out;
}

struct Simulator::Operators {
    int N = 0;                  // nodes
    int npx = 0, npy = 0;
    double hx = 0, hy = 0;
    std::vector<double> area;   // finite-volume node areas (trapezoid weights)
    std::vector<char> u_fixed;  // per node
    std::vector<char> p_fixed;
    SpMat S_m, S_f, S_b;        // implicit chemotaxis matrices
    SpMat B;                    // divergence coupling, N x 2N (unconstrained)
    SpMat poro;                 // monolithic (u, p) matrix, 3N x 3N
    Eigen::SparseLU<SpMat> poro_lu;
    Eigen::VectorXd traction_unit;  // 3N load pattern for unit traction
    Eigen::VectorXd mlump;          // 2N lumped vector mass (geometric)
    double act_coeff = 0;           // (lambda + 2 mu/3) tau
    double mu = 0, lambda = 0;
};

Simulator::Simulator(const SimConfig& cfg) : cfg_(cfg), ops_(new Operators) {
    cfg_.validate();
    const Grid2D& g = cfg_.grid;
    Operators& op = *ops_;
    op.npx = g.npx();
    op.npy = g.npy();
    op.N = g.nodes();
    op.hx = g.hx();
    op.hy = g.hy();

    const auto lame = lame_from_E_nu(cfg_.params.E, cfg_.params.nu);
    op.mu = lame.mu;
    op.lambda = lame.lambda;
    op.act_coeff = (lame.lambda + 2.0 * lame.mu / 3.0) * cfg_.params.tau;

    // node areas: half cells at edges, quarter cells at corners
    op.area.assign(op.N, 0.0);
    for (int j = 0; j < op.npy; ++j) {
        const double wy = (j == 0 || j == g.ny) ? 0.5 * op.hy : op.hy;
        for (int i = 0; i < op.npx; ++i) {
            const double wx = (i == 0 || i == g.nx) ? 0.5 * op.hx : op.hx;
            op.area[g.node(i, j)] = wx * wy;
        }
    }

    // boundary flags
    op.u_fixed.assign(op.N, 0);
    op.p_fixed.assign(op.N, 0);
    const auto on_edge = [&](Edge e, int i, int j) {
        switch (e) {
            case Edge::Bottom: return j == 0;
            case Edge::Top: return j == g.ny;
            case Edge::Left: return i == 0;
            case Edge::Right: return i == g.nx;
        }
        return false;
    };
    const auto sigma = cfg_.traction_edges();
    for (int j = 0; j < op.npy; ++j)
        for (int i = 0; i < op.npx; ++i) {
            const int n = g.node(i, j);
            for (Edge e : cfg_.clamped)
                if (on_edge(e, i, j)) op.u_fixed[n] = 1;
            for (Edge e : sigma)
                if (on_edge(e, i, j)) op.p_fixed[n] = 1;
        }

    // ---- chemotaxis: finite-volume diffusion matrices (SPD) ----
    const auto build_chemo = [&](double D) {
        std::vector<Triplet> tr;
        tr.reserve(size_t(op.N) * 5);
        for (int n = 0; n < op.N; ++n) tr.emplace_back(n, n, op.area[n]);
        const double dtD = cfg_.dt * D;
        for (int j = 0; j < op.npy; ++j) {
            const double wy = (j == 0 || j == g.ny) ? 0.5 * op.hy : op.hy;
            for (int i = 0; i + 1 < op.npx; ++i) {  // x faces
                const double c = dtD * wy / op.hx;
                const int n1 = g.node(i, j), n2 = g.node(i + 1, j);
                tr.emplace_back(n1, n1, c);
                tr.emplace_back(n2, n2, c);
                tr.emplace_back(n1, n2, -c);
                tr.emplace_back(n2, n1, -c);
            }
        }
        for (int i = 0; i < op.npx; ++i) {
            const double wx = (i == 0 || i == g.nx) ? 0.5 * op.hx : op.hx;
            for (int j = 0; j + 1 < op.npy; ++j) {  // y faces
                const double c = dtD * wx / op.hy;
                const int n1 = g.node(i, j), n2 = g.node(i, j + 1);
                tr.emplace_back(n1, n1, c);
                tr.emplace_back(n2, n2, c);
                tr.emplace_back(n1, n2, -c);
                tr.emplace_back(n2, n1, -c);
            }
        }
        SpMat A(op.N, op.N);
        A.setFromTriplets(tr.begin(), tr.end());
        return A;
    };
    op.S_m = build_chemo(cfg_.params.D_m);
    op.S_f = build_chemo(cfg_.params.D_f);
    op.S_b = build_chemo(1.0);  // D_b == 1 after scaling

    // ---- poromechanics: Q1 element matrices on the uniform cell ----
    // displacement dofs 2*node+comp, pressure dofs 2N+node
    double Ke[8][8] = {};
    double Be[4][8] = {};
    double Kpe[4][4] = {};
    {
        const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
        for (double xi : gp)
            for (double et : gp) {
                const double Nv[4] = {(1 - xi) * (1 - et), xi * (1 - et), xi * et,
                                      (1 - xi) * et};
                const double dNx[4] = {-(1 - et) / op.hx, (1 - et) / op.hx, et / op.hx,
                                       -et / op.hx};
                const double dNy[4] = {-(1 - xi) / op.hy, -xi / op.hy, xi / op.hy,
                                       (1 - xi) / op.hy};
                const double wq = 0.25 * op.hx * op.hy;
                for (int a = 0; a < 4; ++a) {
                    const double ga[2] = {dNx[a], dNy[a]};
                    for (int b = 0; b < 4; ++b) {
                        const double gb[2] = {dNx[b], dNy[b]};
                        const double dot = ga[0] * gb[0] + ga[1] * gb[1];
                        for (int d = 0; d < 2; ++d)
                            for (int e = 0; e < 2; ++e)
                                Ke[2 * a + d][2 * b + e] +=
                                    wq * (op.lambda * ga[d] * gb[e] +
                                          op.mu * ((d == e) ? dot : 0.0) +
                                          op.mu * ga[e] * gb[d]);
                        Kpe[a][b] += wq * dot;
                    }
                    for (int b = 0; b < 4; ++b)
                        for (int e = 0; e < 2; ++e)
                            Be[a][2 * b + e] += wq * Nv[a] * (e == 0 ? dNx[b] : dNy[b]);
                }
            }
    }

    std::vector<Triplet> trB, trP;
    const double aBW = cfg_.params.alpha_BW;
    const double om = cfg_.params.kappa / cfg_.params.eta;
    const double rho = cfg_.params.rho;
    const double inert = rho / (kNewmarkBeta * cfg_.dt * cfg_.dt);
    op.mlump.setZero(2 * op.N);

    const int N = op.N;
    const auto udof = [](int node, int c) { return 2 * node + c; };
    const auto pdof = [N](int node) { return 2 * N + node; };

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int nodes[4] = {g.node(i, j), g.node(i + 1, j), g.node(i + 1, j + 1),
                                  g.node(i, j + 1)};
            for (int a = 0; a < 4; ++a) {
                for (int c = 0; c < 2; ++c)
                    op.mlump[udof(nodes[a], c)] += 0.25 * op.hx * op.hy;
                for (int b = 0; b < 4; ++b) {
                    // momentum block: inertia + stiffness
                    for (int d = 0; d < 2; ++d)
                        for (int e = 0; e < 2; ++e) {
                            double v = Ke[2 * a + d][2 * b + e];
                            if (a == b && d == e) v += inert * 0.25 * op.hx * op.hy;
                            trP.emplace_back(udof(nodes[a], d), udof(nodes[b], e), v);
                        }
                    // divergence coupling and pressure stiffness
                    for (int e = 0; e < 2; ++e)
                        trB.emplace_back(nodes[a], udof(nodes[b], e), Be[a][2 * b + e]);
                    // momentum -B^T p block
                    for (int e = 0; e < 2; ++e)
                        trP.emplace_back(udof(nodes[b], e), pdof(nodes[a]),
                                         -Be[a][2 * b + e]);
                }
            }
        }
    op.B.resize(op.N, 2 * op.N);
    op.B.setFromTriplets(trB.begin(), trB.end());

    // pressure row; symmetric scaling by -dt/alpha_BW when coupled
    const bool coupled = aBW > 0;
    const double mass_scale = coupled ? -cfg_.dt / aBW : 1.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int nodes[4] = {g.node(i, j), g.node(i + 1, j), g.node(i + 1, j + 1),
                                  g.node(i, j + 1)};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double kp = Kpe[a][b];
                    // (C0/dt) Mp + om Kp, times mass_scale
                    double v = mass_scale * om * kp;
                    if (a == b)
                        v += mass_scale * (cfg_.params.C0 / cfg_.dt) * 0.25 * op.hx * op.hy;
                    trP.emplace_back(pdof(nodes[a]), pdof(nodes[b]), v);
                }
        }
    if (coupled) {
        // -B u^{n+1} term of the scaled mass row: mass_scale * (aBW/dt) B = -B
        for (int k = 0; k < op.B.outerSize(); ++k)
            for (SpMat::InnerIterator it(op.B, k); it; ++it)
                trP.emplace_back(pdof(int(it.row())), int(it.col()), -it.value());
    }

    // constraints: drop rows/cols of fixed dofs, unit diagonal
    std::vector<char> fixed(3 * op.N, 0);
    for (int n = 0; n < op.N; ++n) {
        if (op.u_fixed[n]) fixed[udof(n, 0)] = fixed[udof(n, 1)] = 1;
        if (op.p_fixed[n]) fixed[pdof(n)] = 1;
    }
    std::vector<Triplet> trF;
    trF.reserve(trP.size() + fixed.size());
    for (const auto& t : trP)
        if (!fixed[t.row()] && !fixed[t.col()]) trF.push_back(t);
    for (int k = 0; k < 3 * op.N; ++k)
        if (fixed[k]) trF.emplace_back(k, k, 1.0);
    op.poro.resize(3 * op.N, 3 * op.N);
    op.poro.setFromTriplets(trF.begin(), trF.end());
    op.poro.makeCompressed();
    op.poro_lu.compute(op.poro);
    if (op.poro_lu.info() != Eigen::Success)
        throw SimNumericalError("poroelastic system factorization failed");

    // unit traction load on the configured edge (y-direction for top/bottom,
    // x-direction for left/right is not used by the sinusoidal load, which
    // is always (0, s(t)); lumped edge integration)
    op.traction_unit.setZero(3 * op.N);
    if (cfg_.load.s0 != 0.0) {
        const Edge e = cfg_.load.edge;
        const bool horizontal = (e == Edge::Bottom || e == Edge::Top);
        const int count = horizontal ? op.npx : op.npy;
        const double h = horizontal ? op.hx : op.hy;
        for (int idx = 0; idx < count; ++idx) {
            int i = 0, j = 0;
            if (e == Edge::Bottom) { i = idx; j = 0; }
            if (e == Edge::Top) { i = idx; j = g.ny; }
            if (e == Edge::Left) { i = 0; j = idx; }
            if (e == Edge::Right) { i = g.nx; j = idx; }
            const int n = g.node(i, j);
            if (op.u_fixed[n]) continue;
            const double w = (idx == 0 || idx == count - 1) ? 0.5 * h : h;
            op.traction_unit[udof(n, 1)] += w;  // load acts in the y direction
        }
    }
}

Simulator::~Simulator() = default;

double Simulator::priming(double x2, double t) const {
    if (cfg_.priming_saturated) return cfg_.params.omega1;
    return priming_wave(x2, t, cfg_.params);
}

FieldState Simulator::init_state() const {
    const Grid2D& g = cfg_.grid;
    FieldState st;
    st.resize(g.nodes());
    st.t = 0.0;
    const CounterRng rng(cfg_.seed);
    const ParameterSet& p = cfg_.params;
    const double h1 = hill(p.m0, p.K1, p.P1);
    const double h2 = hill(p.m0, p.K2, p.P2);
    const double h3 = hill(p.m0, p.K3, p.P3);
    const double b0 = h3 * p.m0;
    const double koff = (1.0 - h1) * (p.kappa3 + p.kappa4 * b0);
    for (int j = 0; j < g.npy(); ++j)
        for (int i = 0; i < g.npx(); ++i) {
            const int n = g.node(i, j);
            st.m[n] = p.m0 + cfg_.noise_amplitude * rng.symmetric(uint64_t(n));
            const double w = priming(g.y(j), 0.0);
            const double kon = p.kappa1 * w * h1 + p.kappa2 * h2;
            if (kon + koff <= 0)
                throw std::domain_error("init_state: epithelium rates degenerate");
            st.e[n] = kon / (kon + koff);
            st.f[n] = st.e[n] / p.delta_F;
            st.b[n] = b0;
        }
    return st;
}

int Simulator::step_chemotaxis(FieldState& st, bool* cfl_warning) const {
    const Grid2D& g = cfg_.grid;
    const Operators& op = *ops_;
    const ParameterSet& p = cfg_.params;
    const double dt = cfg_.dt;
    const int N = op.N;

    // divergence of displacement (FGF sink), central in the interior
    std::vector<double> divu(N);
    for (int j = 0; j < op.npy; ++j)
        for (int i = 0; i < op.npx; ++i) {
            const auto ddx = [&](const std::vector<double>& u) {
                if (i == 0) return (u[g.node(1, j)] - u[g.node(0, j)]) / op.hx;
                if (i == g.nx)
                    return (u[g.node(g.nx, j)] - u[g.node(g.nx - 1, j)]) / op.hx;
                return (u[g.node(i + 1, j)] - u[g.node(i - 1, j)]) / (2 * op.hx);
            };
            const auto ddy = [&](const std::vector<double>& u) {
                if (j == 0) return (u[g.node(i, 1)] - u[g.node(i, 0)]) / op.hy;
                if (j == g.ny)
                    return (u[g.node(i, g.ny)] - u[g.node(i, g.ny - 1)]) / op.hy;
                return (u[g.node(i, j + 1)] - u[g.node(i, j - 1)]) / (2 * op.hy);
            };
            divu[g.node(i, j)] = ddx(st.u1) + ddy(st.u2);
        }

    // upwind advection v . grad X
    const auto advect = [&](const std::vector<double>& X, int i, int j) {
        const int n = g.node(i, j);
        const double vx = st.v1[n], vy = st.v2[n];
        double ax = 0.0, ay = 0.0;
        if (vx > 0)
            ax = (i > 0) ? (X[n] - X[g.node(i - 1, j)]) / op.hx : 0.0;
        else if (vx < 0)
            ax = (i < g.nx) ? (X[g.node(i + 1, j)] - X[n]) / op.hx : 0.0;
        if (vy > 0)
            ay = (j > 0) ? (X[n] - X[g.node(i, j - 1)]) / op.hy : 0.0;
        else if (vy < 0)
            ay = (j < g.ny) ? (X[g.node(i, j + 1)] - X[n]) / op.hy : 0.0;
        return vx * ax + vy * ay;
    };

    // explicit chemotactic flux divergence, conservative face form
    std::vector<double> chemo(N, 0.0);
    double max_vel = 0.0;
    const auto face_flux = [&](int n1, int n2, double dist, double facelen) {
        const double df = (st.f[n2] - st.f[n1]) / dist;
        const double m_up = df > 0 ? st.m[n1] : st.m[n2];
        const double coeff = p.alpha * m_up * std::exp(-p.gamma_exp * m_up);
        const double J = coeff * df;
        chemo[n1] -= J * facelen;
        chemo[n2] += J * facelen;
        const double vel = p.alpha * std::exp(-p.gamma_exp * m_up) * std::abs(df);
        max_vel = std::max(max_vel, vel);
    };
    for (int j = 0; j < op.npy; ++j) {
        const double wy = (j == 0 || j == g.ny) ? 0.5 * op.hy : op.hy;
        for (int i = 0; i + 1 < op.npx; ++i)
            face_flux(g.node(i, j), g.node(i + 1, j), op.hx, wy);
    }
    for (int i = 0; i < op.npx; ++i) {
        const double wx = (i == 0 || i == g.nx) ? 0.5 * op.hx : op.hx;
        for (int j = 0; j + 1 < op.npy; ++j)
            face_flux(g.node(i, j), g.node(i, j + 1), op.hy, wx);
    }
    for (int n = 0; n < N; ++n) {
        max_vel = std::max(max_vel, std::abs(st.v1[n]));
        max_vel = std::max(max_vel, std::abs(st.v2[n]));
    }
    const bool cfl_bad = dt * max_vel / std::min(op.hx, op.hy) > 0.5;
    if (cfl_warning) *cfl_warning = cfl_bad;

    const int max_cg = 10 * N;
    Eigen::VectorXd rhs(N), sol(N);

    // mesenchymal density
    for (int j = 0; j < op.npy; ++j)
        for (int i = 0; i < op.npx; ++i) {
            const int n = g.node(i, j);
            const double expl = -advect(st.m, i, j) + chemo[n] / op.area[n];
            rhs[n] = op.area[n] * (st.m[n] + dt * expl);
        }
    sol = Eigen::Map<const Eigen::VectorXd>(st.m.data(), N);
    cg_solve(op.S_m, rhs, sol, cfg_.lin_tol, max_cg, "chemotaxis m-solve");
    std::vector<double> m_new(sol.data(), sol.data() + N);

    // epithelium: per-node linear kinetics with frozen coefficients; the
    // update is a convex combination so e stays in [0, 1]
    std::vector<double> e_new(N);
    for (int j = 0; j < op.npy; ++j)
        for (int i = 0; i < op.npx; ++i) {
            const int n = g.node(i, j);
            const double mh = st.m[n] < 0 ? 0.0 : st.m[n];
            const double h1 = hill(mh, p.K1, p.P1);
            const double h2 = hill(mh, p.K2, p.P2);
            const double w = priming(g.y(j), st.t);
            const double kon = p.kappa1 * w * h1 + p.kappa2 * h2;
            const double koff = (1.0 - h1) * (p.kappa3 + p.kappa4 * std::max(st.b[n], 0.0));
            e_new[n] = (st.e[n] + dt * kon) / (1.0 + dt * (kon + koff));
        }

    // FGF
    for (int j = 0; j < op.npy; ++j)
        for (int i = 0; i < op.npx; ++i) {
            const int n = g.node(i, j);
            const double expl = -advect(st.f, i, j) + st.e[n] - p.delta_F * st.f[n] -
                                p.xi_f * divu[n];
            rhs[n] = op.area[n] * (st.f[n] + dt * expl);
        }
    sol = Eigen::Map<const Eigen::VectorXd>(st.f.data(), N);
    cg_solve(op.S_f, rhs, sol, cfg_.lin_tol, max_cg, "chemotaxis f-solve");
    std::vector<double> f_new(sol.data(), sol.data() + N);

    // BMP
    for (int j = 0; j < op.npy; ++j)
        for (int i = 0; i < op.npx; ++i) {
            const int n = g.node(i, j);
            const double mh = st.m[n] < 0 ? 0.0 : st.m[n];
            const double expl = -advect(st.b, i, j) + hill(mh, p.K3, p.P3) * mh -
                                p.delta_B * st.b[n];
            rhs[n] = op.area[n] * (st.b[n] + dt * expl);
        }
    sol = Eigen::Map<const Eigen::VectorXd>(st.b.data(), N);
    cg_solve(op.S_b, rhs, sol, cfg_.lin_tol, max_cg, "chemotaxis b-solve");
    std::vector<double> b_new(sol.data(), sol.data() + N);

    int clipped = 0;
    for (int n = 0; n < N; ++n) {
        if (m_new[n] < 0) {
            m_new[n] = 0;
            ++clipped;
        }
        if (b_new[n] < 0) {
            b_new[n] = 0;
            ++clipped;
        }
    }
    if (clipped > cfg_.clip_abort_fraction * double(2 * N)) {
        std::ostringstream msg;
        msg << "chemotaxis step clipped " << clipped << " of " << 2 * N
            << " node values below zero (limit fraction " << cfg_.clip_abort_fraction
            << ")";
        throw SimNumericalError(msg.str());
    }
    st.m.swap(m_new);
    st.e.swap(e_new);
    st.f.swap(f_new);
    st.b.swap(b_new);
    return clipped;
}

void Simulator::step_poroelastic(FieldState& st) const {
    const Operators& op = *ops_;
    const ParameterSet& p = cfg_.params;
    const double dt = cfg_.dt;
    const int N = op.N;
    const double inert = p.rho / (kNewmarkBeta * dt * dt);

    // Newmark predictor
    Eigen::VectorXd util(2 * N);
    for (int n = 0; n < N; ++n) {
        util[2 * n] = st.u1[n] + dt * st.v1[n] + dt * dt * (0.5 - kNewmarkBeta) * st.a1[n];
        util[2 * n + 1] =
            st.u2[n] + dt * st.v2[n] + dt * dt * (0.5 - kNewmarkBeta) * st.a2[n];
    }

    // nodal active stress s(m) = (lambda + 2mu/3) tau m / (1 + zeta m^2)
    Eigen::VectorXd s_act(N);
    for (int n = 0; n < N; ++n) {
        const double m = st.m[n];
        s_act[n] = op.act_coeff * m / (1.0 + p.zeta * m * m);
    }

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(3 * N);
    // momentum: traction + active stress + inertia history
    const double tval = cfg_.load.s0 != 0 ? cfg_.load.value_at(st.t + dt) : 0.0;
    Eigen::VectorXd fu = -op.B.transpose() * s_act;
    for (int k = 0; k < 2 * N; ++k)
        rhs[k] = fu[k] + inert * op.mlump[k] * util[k] + tval * op.traction_unit[k];

    // pressure history
    Eigen::VectorXd uold(2 * N);
    for (int n = 0; n < N; ++n) {
        uold[2 * n] = st.u1[n];
        uold[2 * n + 1] = st.u2[n];
    }
    const bool coupled = p.alpha_BW > 0;
    if (coupled) {
        const Eigen::VectorXd Bu = op.B * uold;
        for (int n = 0; n < N; ++n)
            rhs[2 * N + n] =
                -Bu[n] - (p.C0 / p.alpha_BW) * op.area[n] * st.p[n];
    } else {
        for (int n = 0; n < N; ++n)
            rhs[2 * N + n] = (p.C0 / dt) * op.area[n] * st.p[n];
    }
    // constrained dofs carry homogeneous values
    for (int n = 0; n < N; ++n) {
        if (op.u_fixed[n]) rhs[2 * n] = rhs[2 * n + 1] = 0.0;
        if (op.p_fixed[n]) rhs[2 * N + n] = 0.0;
    }

    const Eigen::VectorXd x = op.poro_lu.solve(rhs);
    if (ops_->poro_lu.info() != Eigen::Success)
        throw SimNumericalError("poroelastic solve failed");
    const double resid = (op.poro * x - rhs).norm() / (rhs.norm() + 1e-300);
    if (!(resid < 1e-8)) {
        std::ostringstream msg;
        msg << "poroelastic solve residual " << resid << " exceeds 1e-8";
        throw SimNumericalError(msg.str());
    }

    for (int n = 0; n < N; ++n) {
        const double u1n = x[2 * n], u2n = x[2 * n + 1];
        const double a1n = (u1n - util[2 * n]) / (kNewmarkBeta * dt * dt);
        const double a2n = (u2n - util[2 * n + 1]) / (kNewmarkBeta * dt * dt);
        st.v1[n] += dt * ((1 - kNewmarkGamma) * st.a1[n] + kNewmarkGamma * a1n);
        st.v2[n] += dt * ((1 - kNewmarkGamma) * st.a2[n] + kNewmarkGamma * a2n);
        st.u1[n] = u1n;
        st.u2[n] = u2n;
        st.a1[n] = a1n;
        st.a2[n] = a2n;
        st.p[n] = x[2 * N + n];
    }
}

namespace {
double rel_change(const std::vector<double>& a, const std::vector<double>& b) {
    double dn = 0, an = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dn = std::max(dn, std::abs(a[i] - b[i]));
        an = std::max(an, std::abs(a[i]));
    }
    return dn / (an + 1e-300);
}
}  // namespace

StepReport Simulator::coupled_step(FieldState& st) const {
    const FieldState base = st;
    StepReport rep;
    FieldState iterate;
    bool have_prev = false;
    for (int it = 1; it <= cfg_.fixed_point_max_iters; ++it) {
        FieldState work = base;
        // latest chemo iterate feeds the active stress
        if (have_prev) work.m = iterate.m;
        step_poroelastic(work);
        work.m = base.m;
        work.e = base.e;
        work.f = base.f;
        work.b = base.b;
        bool cfl = false;
        rep.clipped_nodes = step_chemotaxis(work, &cfl);
        rep.cfl_warning = rep.cfl_warning || cfl;
        rep.outer_iterations = it;
        if (have_prev) {
            double ch = rel_change(work.u1, iterate.u1);
            ch = std::max(ch, rel_change(work.u2, iterate.u2));
            ch = std::max(ch, rel_change(work.p, iterate.p));
            ch = std::max(ch, rel_change(work.m, iterate.m));
            ch = std::max(ch, rel_change(work.e, iterate.e));
            ch = std::max(ch, rel_change(work.f, iterate.f));
            ch = std::max(ch, rel_change(work.b, iterate.b));
            rep.final_change = ch;
            iterate = std::move(work);
            if (ch <= cfg_.fixed_point_tol) break;
        } else {
            iterate = std::move(work);
            have_prev = true;
            if (cfg_.fixed_point_max_iters == 1) break;
        }
    }
    st = std::move(iterate);
    st.t = base.t + cfg_.dt;
    return rep;
}

Diagnostics Simulator::diagnostics(const FieldState& st) const {
    const Operators& op = *ops_;
    Diagnostics d;
    const auto scan = [&](const std::vector<double>& x, double& mn, double& mx) {
        mn = x[0];
        mx = x[0];
        for (double v : x) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    };
    const auto mass = [&](const std::vector<double>& x) {
        double acc = 0;
        for (int n = 0; n < op.N; ++n) acc += op.area[n] * x[n];
        return acc;
    };
    d.mass_m = mass(st.m);
    d.mass_e = mass(st.e);
    d.mass_f = mass(st.f);
    d.mass_b = mass(st.b);
    double mean = 0;
    for (double v : st.m) mean += v;
    mean /= double(op.N);
    double var = 0;
    for (double v : st.m) var += (v - mean) * (v - mean);
    d.var_m = var / double(op.N);
    scan(st.m, d.min_m, d.max_m);
    scan(st.e, d.min_e, d.max_e);
    scan(st.f, d.min_f, d.max_f);
    scan(st.b, d.min_b, d.max_b);
    scan(st.p, d.min_p, d.max_p);
    scan(st.u1, d.min_u1, d.max_u1);
    scan(st.u2, d.min_u2, d.max_u2);
    return d;
}

FieldState Simulator::run_simulation(const std::string& out_dir) {
    namespace fs = std::filesystem;
    const bool emit = !out_dir.empty();
    std::ofstream csv;
    if (emit) {
        fs::create_directories(out_dir);
        csv.open(out_dir + "/diagnostics.csv");
        csv << "t,mass_m,var_m,min_m,max_m,min_e,max_e,min_f,max_f,min_b,max_b,"
               "min_p,max_p,min_u1,max_u1,min_u2,max_u2,outer_iterations,"
               "final_change,clipped_nodes\n";
    }
    const auto emit_fields = [&](const FieldState& st, int step) {
        if (!emit) return;
        char tag[32];
        std::snprintf(tag, sizeof(tag), "%06d", step);
        for (const auto& [name, data] :
             std::initializer_list<std::pair<const char*, const std::vector<double>*>>{
                 {"m", &st.m}, {"e", &st.e}, {"f", &st.f}, {"b", &st.b},
                 {"p", &st.p}, {"u1", &st.u1}, {"u2", &st.u2}})
            write_field_snapshot(out_dir + "/fields_" + tag + "_" + name + ".dat",
                                 cfg_.grid, st.t, name, *data);
    };
    const auto emit_diag = [&](const FieldState& st, const StepReport& rep) {
        if (!emit) return;
        const Diagnostics d = diagnostics(st);
        char line[768];
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%d\n",
                      st.t, d.mass_m, d.var_m, d.min_m, d.max_m, d.min_e, d.max_e,
                      d.min_f, d.max_f, d.min_b, d.max_b, d.min_p, d.max_p, d.min_u1,
                      d.max_u1, d.min_u2, d.max_u2, rep.outer_iterations,
                      rep.final_change, rep.clipped_nodes);
        csv << line;
        csv.flush();
    };

    FieldState st = init_state();
    emit_fields(st, 0);
    emit_diag(st, StepReport{});
    const int nsteps = int(std::llround(cfg_.t_final / cfg_.dt));
    for (int step = 1; step <= nsteps; ++step) {
        const StepReport rep = coupled_step(st);
        emit_diag(st, rep);
        if (cfg_.output_every > 0 && step % cfg_.output_every == 0)
            emit_fields(st, step);
    }
    if (cfg_.output_every == 0 || nsteps % std::max(cfg_.output_every, 1) != 0)
        emit_fields(st, nsteps);
    return st;
}

void write_field_snapshot(const std::string& path, const Grid2D& grid, double t,
                          const std::string& field_name,
                          const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    char buf[64];
    out << "nx " << grid.nx << "\nny " << grid.ny << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", grid.Lx);
    out << "Lx " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", grid.Ly);
    out << "Ly " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    out << "t " << buf << "\n";
    out << "field " << field_name << "\n";
    for (int j = 0; j < grid.npy(); ++j) {
        for (int i = 0; i < grid.npx(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", values[grid.node(i, j)]);
            out << buf << (i + 1 < grid.npx() ? " " : "\n");
        }
    }
}

std::vector<double> read_field_snapshot(const std::string& path, Grid2D* grid_out,
                                        double* t_out, std::string* name_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Grid2D g;
    double t = 0;
    std::string name, key;
    in >> key >> g.nx >> key >> g.ny >> key >> g.Lx >> key >> g.Ly >> key >> t >>
        key >> name;
    std::vector<double> values(g.nodes());
    for (int j = 0; j < g.npy(); ++j)
        for (int i = 0; i < g.npx(); ++i) in >> values[g.node(i, j)];
    if (!in) throw std::runtime_error("truncated snapshot " + path);
    if (grid_out) *grid_out = g;
    if (t_out) *t_out = t;
    if (name_out) *name_out = name;
    return values;
}

}  // namespace primordia
