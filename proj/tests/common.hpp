// Shared helpers for unit and acceptance tests.
#pragma once

#include <algorithm>
#include <random>

#include "jcl/model.hpp"
#include "jcl/scattering.hpp"

namespace jcl::testing {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(unsigned long long seed) : engine(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine); }
};

inline ModelConfig random_config(Rng& rng, int cutoff) {
    ModelConfig c;
    c.left.bias = rng.uniform(-1.0, 2.0);
    c.right.bias = rng.uniform(-1.0, 2.0);
    c.dot.level_base = rng.uniform(0.0, 3.0);
    c.dot.spacing = rng.uniform(0.3, 2.5);
    c.dot.contact_angle = rng.uniform(0.0, 3.14159);
    c.dot.contact_phase = rng.uniform(0.0, 6.28318);
    c.photon.omega = rng.uniform(0.7, 3.0);
    c.photon.cutoff = cutoff;
    c.g_el = rng.uniform(0.2, 1.0);
    c.g_ph = rng.uniform(0.05, 0.6);
    return c;
}

// An energy with at least one open channel, away from band edges.
inline double random_in_band_energy(Rng& rng, const ValidatedConfig& cfg) {
    const ModelConfig& c = cfg.config();
    const double lo = std::min(c.left.bias, c.right.bias);
    const double hi = std::max(c.left.bias, c.right.bias) + 4.0 + (cfg.cutoff() - 1) * cfg.omega();
    for (;;) {
        const double lambda = rng.uniform(lo, hi);
        if (scattering::open_channels(cfg, lambda).size() > 0) return lambda;
    }
}

}  // namespace jcl::testing
