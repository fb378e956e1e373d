#include "primordia/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace primordia {

void GrowthFactors::validate() const {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("GrowthFactors: dim must be 2 or 3");
    for (int i = 0; i < 3; ++i) {
        if (gamma[i] < 0)
            throw std::invalid_argument("GrowthFactors: gamma must be >= 0");
        if (std::abs(k[i].norm() - 1.0) > 1e-12)
            throw std::invalid_argument("GrowthFactors: directions must be unit");
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(k[i].dot(k[j])) > 1e-12)
                throw std::invalid_argument("GrowthFactors: directions must be orthogonal");
    }
}

Tensor3 growth_tensor(const GrowthFactors& g) {
    g.validate();
    Tensor3 Fg = Tensor3::Identity();
    Fg += std::sqrt(g.gamma[0]) * g.k[0] * g.k[0].transpose();
    Fg += std::sqrt(g.gamma[1]) * g.k[1] * g.k[1].transpose();
    if (g.dim == 3) Fg += g.gamma[2] * g.k[2] * g.k[2].transpose();
    return Fg;
}

std::array<double, 3> gamma_evolution(double t, double m, const GrowthFactors& g) {
    if (t < 0) throw std::invalid_argument("gamma_evolution: t must be >= 0");
    if (m < 0) throw std::invalid_argument("gamma_evolution: m must be >= 0");
    const double sat = m / (1.0 + m * m);
    if (g.dim == 2) {
        const double val = g.delta[1] * t + g.delta[2] * sat;
        return {val, val, 0.0};
    }
    return {g.delta[0] * t, g.delta[0] * t, g.delta[1] * t + g.delta[2] * sat};
}

double gamma3_m_derivative(double m, double delta3) {
    const double d = 1.0 + m * m;
    return delta3 * (1.0 - m * m) / (d * d);
}

DeformationState elastic_decomposition(const Tensor3& F, const Tensor3& F_g) {
    DeformationState st;
    st.F = F;
    st.F_g = F_g;
    st.J = F.determinant();
    st.J_g = F_g.determinant();
    if (st.J <= 0) throw std::invalid_argument("elastic_decomposition: det F must be > 0");
    if (st.J_g <= 0 || !std::isfinite(st.J_g))
        throw std::invalid_argument("elastic_decomposition: F_g is singular");
    st.F_e = F * F_g.inverse();
    st.J_e = st.F_e.determinant();
    st.C = F.transpose() * F;
    st.B_e = st.F_e * st.F_e.transpose();
    return st;
}

Tensor3 neo_hookean_stress(const DeformationState& st, double mu, double psi) {
    if (st.J <= 0) throw std::invalid_argument("neo_hookean_stress: det F must be > 0");
    const Tensor3 Finv_t = st.F.inverse().transpose();
    return st.J * (mu * st.B_e - psi * Tensor3::Identity()) * Finv_t;
}

double psi_for_incompressibility(double mu) { return mu; }

Tensor3 fluid_stress(const Tensor3& F, double p, double alpha_BW) {
    const double J = F.determinant();
    if (J <= 0) throw std::invalid_argument("fluid_stress: det F must be > 0");
    return -alpha_BW * J * p * F.inverse().transpose();
}

Vector3 darcy_pullback(const Tensor3& F, double kappa_over_eta, double phi_f,
                       const Vector3& grad_p) {
    if (phi_f <= 0) throw std::invalid_argument("darcy_pullback: phi_f must be > 0");
    const double J = F.determinant();
    if (J <= 0) throw std::invalid_argument("darcy_pullback: det F must be > 0");
    const Tensor3 Cinv = (F.transpose() * F).inverse();
    return -(kappa_over_eta / phi_f) * (F * (Cinv * grad_p));
}

double mass_source_fluid(const GrowthFactors& g, double dm_dt, double ell0, double m) {
    return ell0 * (2.0 * g.delta[0] + g.delta[1] + gamma3_m_derivative(m, g.delta[2]) * dm_dt);
}

void PhaseFractions::validate() const {
    if (phi_s < 0 || phi_s > 1 || phi_f < 0 || phi_f > 1)
        throw std::invalid_argument("PhaseFractions: fractions must lie in [0,1]");
    if (std::abs(phi_s + phi_f - 1.0) > 1e-12)
        throw std::invalid_argument("PhaseFractions: fractions must sum to 1");
}

double solid_mass_growth_rate(const PhaseFractions& phi, double m, double m0,
                              double alpha0) {
    phi.validate();
    return alpha0 * phi.phi_s * (1.0 - phi.phi_s) * (m - m0);
}

double growth_rate_constraint_residual(const std::array<double, 3>& gamma,
                                       const std::array<double, 3>& gamma_dot,
                                       double r_s, double phi_s, int dim) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("growth_rate_constraint_residual: dim must be 2 or 3");
    if (phi_s <= 0)
        throw std::domain_error("growth_rate_constraint_residual: phi_s must be > 0");
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
        if (gamma[i] == 0)
            throw std::domain_error("growth_rate_constraint_residual: gamma_i must be nonzero");
        acc += gamma_dot[i] / gamma[i];
    }
    return acc - r_s / phi_s;
}

Tensor3 chemotaxis_pullback_tensor(const Tensor3& F, double D_scalar) {
    const double J = F.determinant();
    if (J <= 0)
        throw std::invalid_argument("chemotaxis_pullback_tensor: det F must be > 0");
    const Tensor3 Cinv = (F.transpose() * F).inverse();
    return J * D_scalar * Cinv;
}

}  // namespace primordia
