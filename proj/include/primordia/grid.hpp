#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace primordia {

/// Uniform rectangular grid; fields live on the (nx+1) x (ny+1) nodes.
struct Grid2D {
    double Lx = 20.0, Ly = 20.0;
    int nx = 128, ny = 128;  // cell counts

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    int npx() const { return nx + 1; }
    int npy() const { return ny + 1; }
    int nodes() const { return npx() * npy(); }
    int node(int i, int j) const { return j * npx() + i; }
    double x(int i) const { return i * hx(); }
    double y(int j) const { return j * hy(); }

    void validate() const {
        if (nx < 8 || ny < 8)
            throw std::invalid_argument("Grid2D: nx, ny must be >= 8");
        if (Lx <= 0 || Ly <= 0)
            throw std::invalid_argument("Grid2D: Lx, Ly must be > 0");
    }
};

/// Nodal state of the coupled simulation.
struct FieldState {
    double t = 0.0;
    std::vector<double> u1, u2;  // displacement
    std::vector<double> v1, v2;  // velocity
    std::vector<double> a1, a2;  // acceleration
    std::vector<double> p;       // pore pressure
    std::vector<double> m, e, f, b;

    void resize(int n) {
        for (auto* v : {&u1, &u2, &v1, &v2, &a1, &a2, &p, &m, &e, &f, &b})
            v->assign(n, 0.0);
    }
};

/// SplitMix64 in counter mode: sample i of a stream is
/// splitmix64(splitmix64(seed) + i) scaled by 2^-64. Any implementation
/// of this recipe reproduces the noise streams bit for bit.
struct CounterRng {
    uint64_t base;

    explicit CounterRng(uint64_t seed) : base(mix(seed)) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double uniform(uint64_t counter) const {
        return double(mix(base + counter)) * 0x1.0p-64;
    }
    /// uniform in (-1, 1)
    double symmetric(uint64_t counter) const { return 2.0 * uniform(counter) - 1.0; }
};

}  // namespace primordia
