#include "primordia/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace primordia {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_steady_csv(std::ostream& os, const SteadyState& s) {
    os << "m0,e0,f0,b0,k_on,k_off,A_m,A_e,A_b,H3,sigma_act_lin,mu,lambda\n";
    const double vals[] = {s.m0,  s.e0,  s.f0, s.b0, s.k_on,         s.k_off, s.A_m,
                           s.A_e, s.A_b, s.H3, s.sigma_act_lin, s.mu,    s.lambda};
    for (size_t i = 0; i < std::size(vals); ++i)
        os << format_g17(vals[i]) << (i + 1 < std::size(vals) ? "," : "\n");
}

void write_dispersion_csv(std::ostream& os, const std::vector<DispersionPoint>& pts) {
    if (pts.empty()) throw std::invalid_argument("write_dispersion_csv: no points");
    const size_t nroots = pts.front().roots.size();
    os << "k2,max_re";
    for (size_t r = 0; r < nroots; ++r) os << ",re_" << r;
    for (size_t r = 0; r < nroots; ++r) os << ",im_" << r;
    os << "\n";
    for (const auto& pt : pts) {
        os << format_g17(pt.k2) << "," << format_g17(pt.max_re);
        for (const auto& z : pt.roots) os << "," << format_g17(z.real());
        for (const auto& z : pt.roots) os << "," << format_g17(z.imag());
        os << "\n";
    }
}

void write_patternspace_csv(std::ostream& os, const PatternSpaceGrid& g) {
    os << g.axis1.name << "," << g.axis2.name
       << ",condUC1,condUC2,condUC3,condC1,condC2,condC3,condCDisc,"
          "patterning_uncoupled,patterning_coupled\n";
    for (int i1 = 0; i1 < g.axis1.count; ++i1)
        for (int i2 = 0; i2 < g.axis2.count; ++i2) {
            const int c = g.index(i1, i2);
            const double cols[] = {g.axis1.value_at(i1),      g.axis2.value_at(i2),
                                   g.condUC1[c],              g.condUC2[c],
                                   g.condUC3[c],              g.condC1[c],
                                   g.condC2[c],               g.condC3[c],
                                   g.condCDisc[c],            g.patterning_uncoupled[c],
                                   g.patterning_coupled[c]};
            for (size_t k = 0; k < std::size(cols); ++k)
                os << format_g17(cols[k]) << (k + 1 < std::size(cols) ? "," : "\n");
        }
}

}  // namespace primordia
