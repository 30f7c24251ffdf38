// symmetry.hpp: structural time-reversal / mirror predicates and the
// current-vanishing cases (E), (S), (C).
//
// All predicates compare configured values exactly; no tolerances.

#pragma once

#include "jcl/model.hpp"
#include "jcl/scattering.hpp"

namespace jcl::symmetry {

struct SymmetryFlags {
    bool time_reversible = false;  // real contact basis: phi = 0 or theta = 0
    bool mirror_symmetric = false; // v_l = v_r, theta = pi/4, phi = 0
    bool case_E = false;           // mu_l = mu_r
    bool case_S = false;           // disjoint lead bands: |v_l - v_r| >= 4
    bool case_C = false;           // theta = 0, contact basis = eigenbasis

    // rho^el commutes with the contact scattering matrix.
    bool commuting() const noexcept { return case_E || case_S || case_C; }
};

SymmetryFlags classify(const ModelConfig& config, const ThermalState& thermal);

// Relabels l <-> r in both indices and restores the (n, left-before-right) order.
scattering::CrossSectionTable mirror_swap(const scattering::CrossSectionTable& table);

}  // namespace jcl::symmetry
