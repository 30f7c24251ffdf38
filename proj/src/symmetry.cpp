#include "jcl/symmetry.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace jcl::symmetry {

SymmetryFlags classify(const ModelConfig& config, const ThermalState& thermal) {
    const DotParams& d = config.dot;
    SymmetryFlags f;
    f.time_reversible = d.contact_phase == 0.0 || d.contact_angle == 0.0;
    f.mirror_symmetric = config.left.bias == config.right.bias &&
                         d.contact_angle == std::numbers::pi / 4 && d.contact_phase == 0.0;
    f.case_E = thermal.mu_left == thermal.mu_right;
    f.case_S = config.left.bias >= config.right.bias + 4.0 || config.right.bias >= config.left.bias + 4.0;
    f.case_C = d.contact_angle == 0.0;
    return f;
}

scattering::CrossSectionTable mirror_swap(const scattering::CrossSectionTable& table) {
    const int k = static_cast<int>(table.channels.size());
    std::vector<scattering::Channel> swapped = table.channels;
    for (auto& c : swapped) c.lead = other(c.lead);

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (swapped[a].n != swapped[b].n) return swapped[a].n < swapped[b].n;
        return swapped[a].lead == Side::left && swapped[b].lead == Side::right;
    });

    scattering::CrossSectionTable out;
    out.lambda = table.lambda;
    out.channels.resize(k);
    out.sigma.resize(k, k);
    for (int i = 0; i < k; ++i) {
        out.channels[i] = swapped[order[i]];
        for (int j = 0; j < k; ++j) out.sigma(i, j) = table.sigma(order[i], order[j]);
    }
    return out;
}

}  // namespace jcl::symmetry
