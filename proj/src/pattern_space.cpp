#include "primordia/pattern_space.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace primordia {

int worker_count() {
    if (const char* env = std::getenv("PRIMORDIA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
}

PatternSpaceGrid pattern_space(const ParameterSet& p, const AxisSpec& axis1,
                               const AxisSpec& axis2, CriticalMode mode,
                               const K2Window& win) {
    for (const AxisSpec* ax : {&axis1, &axis2}) {
        get_parameter(p, ax->name);  // throws on unknown axis name
        if (ax->count < 2)
            throw std::invalid_argument("pattern_space: grid sizes must be >= 2");
    }
    PatternSpaceGrid g;
    g.axis1 = axis1;
    g.axis2 = axis2;
    g.mode = mode;
    const int n = g.cells();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto* v : {&g.condUC1, &g.condUC2, &g.condUC3, &g.condC1, &g.condC2,
                    &g.condC3, &g.condCDisc, &g.patterning_uncoupled,
                    &g.patterning_coupled})
        v->assign(n, nan);

    std::atomic<int> next{0};
    const auto work = [&]() {
        for (;;) {
            const int cell = next.fetch_add(1);
            if (cell >= n) return;
            const int i1 = cell / axis2.count;
            const int i2 = cell % axis2.count;
            ParameterSet q = p;
            set_parameter(q, axis1.name, axis1.value_at(i1));
            set_parameter(q, axis2.name, axis2.value_at(i2));
            try {
                const SteadyState s = steady_state(q);
                const UncoupledConditions uc = uncoupled_conditions(q, s, win);
                g.condUC1[cell] = uc.cond1;
                g.condUC2[cell] = uc.cond2;
                g.condUC3[cell] = uc.cond3;
                g.patterning_uncoupled[cell] = uc.patterning ? 1.0 : 0.0;
                if (mode == CriticalMode::Coupled) {
                    const CoupledConditions cc = coupled_conditions(q, s, win);
                    g.condC1[cell] = cc.condC1;
                    g.condC2[cell] = cc.condC2;
                    g.condC3[cell] = cc.condC3;
                    g.condCDisc[cell] = cc.condCDisc;
                    g.patterning_coupled[cell] = cc.patterning ? 1.0 : 0.0;
                }
            } catch (const std::exception&) {
                // cell stays NaN
            }
        }
    };

    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return g;
}

}  // namespace primordia
