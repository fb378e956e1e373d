#include "primordia/planewave.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace primordia {

namespace {

// periodic 2-D complex field with 4th-order difference operators
struct Patch {
    int n1, n2;
    double h1, h2;
    std::vector<Complex> v;

    Complex& at(int i, int j) { return v[size_t(wrap(i, n1)) * n2 + wrap(j, n2)]; }
    const Complex& at(int i, int j) const {
        return v[size_t(wrap(i, n1)) * n2 + wrap(j, n2)];
    }
    static int wrap(int i, int n) { return ((i % n) + n) % n; }

    // difference-first groupings cancel exactly on constant fields
    Complex dx(int i, int j) const {
        return (8.0 * (at(i + 1, j) - at(i - 1, j)) - (at(i + 2, j) - at(i - 2, j))) /
               (12.0 * h1);
    }
    Complex dy(int i, int j) const {
        return (8.0 * (at(i, j + 1) - at(i, j - 1)) - (at(i, j + 2) - at(i, j - 2))) /
               (12.0 * h2);
    }
    Complex dxx(int i, int j) const {
        const Complex c0 = at(i, j);
        return (16.0 * ((at(i + 1, j) - c0) + (at(i - 1, j) - c0)) -
                ((at(i + 2, j) - c0) + (at(i - 2, j) - c0))) /
               (12.0 * h1 * h1);
    }
    Complex dyy(int i, int j) const {
        const Complex c0 = at(i, j);
        return (16.0 * ((at(i, j + 1) - c0) + (at(i, j - 1) - c0)) -
                ((at(i, j + 2) - c0) + (at(i, j - 2) - c0))) /
               (12.0 * h2 * h2);
    }
    Complex lap(int i, int j) const { return dxx(i, j) + dyy(i, j); }
    // mixed derivative as composition of 4th-order first derivatives
    Complex dxy(int i, int j) const {
        const auto dxat = [&](int ii, int jj) {
            return (8.0 * (at(ii + 1, jj) - at(ii - 1, jj)) -
                    (at(ii + 2, jj) - at(ii - 2, jj))) /
                   (12.0 * h1);
        };
        return (8.0 * (dxat(i, j + 1) - dxat(i, j - 1)) -
                (dxat(i, j + 2) - dxat(i, j - 2))) /
               (12.0 * h2);
    }
};

}  // namespace

PlaneWaveOracleResult planewave_residual_oracle(const ParameterSet& p,
                                                const SteadyState& s,
                                                const std::vector<double>& k_vec,
                                                Complex phi,
                                                const Eigen::VectorXcd& w0,
                                                int n_per_period) {
    if (k_vec.size() != 2)
        throw std::invalid_argument("planewave_residual_oracle: d must be 2");
    if (w0.size() != 7)
        throw std::invalid_argument("planewave_residual_oracle: w0 must have 7 entries");
    if (n_per_period < 8)
        throw std::invalid_argument("planewave_residual_oracle: patch too coarse");

    const int n1 = n_per_period, n2 = n_per_period;
    // one full wave period per direction keeps the patch exactly periodic;
    // a zero component degenerates to a constant direction
    const double L1 = k_vec[0] != 0.0 ? 2.0 * M_PI / std::abs(k_vec[0]) : 2.0 * M_PI;
    const double L2 = k_vec[1] != 0.0 ? 2.0 * M_PI / std::abs(k_vec[1]) : 2.0 * M_PI;

    enum { U1, U2, PP, MM, EE, FF, BB };
    std::array<Patch, 7> F;
    for (auto& f : F) {
        f.n1 = n1;
        f.n2 = n2;
        f.h1 = L1 / n1;
        f.h2 = L2 / n2;
        f.v.resize(size_t(n1) * n2);
    }
    std::vector<Complex> wave(size_t(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const double x = i * F[0].h1, y = j * F[0].h2;
            wave[size_t(i) * n2 + j] =
                std::exp(Complex(0.0, k_vec[0] * x + k_vec[1] * y));
        }
    for (int c = 0; c < 7; ++c)
        for (size_t idx = 0; idx < wave.size(); ++idx) F[c].v[idx] = w0[c] * wave[idx];

    const WaveProbe w = WaveProbe::from_vector(k_vec);
    const Eigen::MatrixXcd M = assemble_system_matrix(p, s, w, phi);
    const Eigen::VectorXcd Mw = M * w0;

    // per-equation magnitude scale: sum_j |M_ij| |w0_j|, floored so that
    // equations whose terms all vanish are judged against the system scale
    Eigen::VectorXd scale(7);
    double acc_max = 0.0;
    for (int r = 0; r < 7; ++r) {
        double acc = 0.0;
        for (int c = 0; c < 7; ++c) acc += std::abs(M(r, c)) * std::abs(w0[c]);
        scale[r] = acc;
        acc_max = std::max(acc_max, acc);
    }
    for (int r = 0; r < 7; ++r)
        scale[r] = std::max(scale[r], std::max(1e-8 * acc_max, 1e-300));

    const double chi = chemotaxis_factor(p);
    const double om = p.kappa / p.eta;
    double worst = 0.0;
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const Complex ph = wave[size_t(i) * n2 + j];
            const Complex u1 = F[U1].at(i, j), u2 = F[U2].at(i, j);
            const Complex pr = F[PP].at(i, j), m = F[MM].at(i, j);
            const Complex e = F[EE].at(i, j), f = F[FF].at(i, j), b = F[BB].at(i, j);

            // div(lambda div u I + 2 mu eps(u)) = (mu+lambda) grad(div u) + mu lap u
            const Complex graddiv1 = F[U1].dxx(i, j) + F[U2].dxy(i, j);
            const Complex graddiv2 = F[U1].dxy(i, j) + F[U2].dyy(i, j);
            const Complex divu = F[U1].dx(i, j) + F[U2].dy(i, j);

            Complex resid[7];
            resid[0] = p.rho * phi * phi * u1 -
                       ((s.mu + s.lambda) * graddiv1 + s.mu * F[U1].lap(i, j)) +
                       F[PP].dx(i, j) - s.sigma_act_lin * F[MM].dx(i, j);
            resid[1] = p.rho * phi * phi * u2 -
                       ((s.mu + s.lambda) * graddiv2 + s.mu * F[U2].lap(i, j)) +
                       F[PP].dy(i, j) - s.sigma_act_lin * F[MM].dy(i, j);
            resid[2] = p.C0 * phi * pr + p.alpha_BW * phi * divu - om * F[PP].lap(i, j);
            resid[3] = phi * m - p.D_m * F[MM].lap(i, j) + chi * F[FF].lap(i, j);
            resid[4] = phi * e - s.A_m * m + s.A_e * e + s.A_b * b;
            resid[5] = phi * f - p.D_f * F[FF].lap(i, j) - e + p.delta_F * f + p.xi_f * divu;
            resid[6] = phi * b - F[BB].lap(i, j) - s.H3 * m + p.delta_B * b;

            for (int r = 0; r < 7; ++r) {
                const double d = std::abs(resid[r] - Mw[r] * ph) / scale[r];
                worst = std::max(worst, d);
            }
        }
    }
    return {worst};
}

Eigen::VectorXcd smallest_singular_vector(const Eigen::MatrixXcd& M) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    return svd.matrixV().col(M.cols() - 1);
}

}  // namespace primordia
