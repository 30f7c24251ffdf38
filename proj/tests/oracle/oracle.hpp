// oracle.hpp: independent wave-matching S-matrix solver (tests only).
//
// Every channel (lead, n), open or closed, gets `window` explicit lattice sites.
// Beyond the window the wave is fixed analytically: open channels carry
//   psi(x) = -delta_cc' e^{-ikx}/sqrt(2 sin k) + S_cc' e^{ikx}/sqrt(2 sin k),
// closed channels decay as C q^{x - L} with q + 1/q = a - lambda, |q| < 1.
// The lattice equations on all explicit sites, the dot equations and the
// matching condition at site L determine S, C and the dot amplitudes exactly.

#pragma once

#include "jcl/model.hpp"
#include "jcl/scattering.hpp"

namespace jcl::oracle {

struct MatchingProblem {
    int window = 2;
    double lambda = 0.0;
};

// Throws Error(SingularLinearSystem) when the matching system is singular.
scattering::SMatrix wavematch_smatrix(const ValidatedConfig& config, const MatchingProblem& problem);

inline scattering::SMatrix wavematch_smatrix(const ValidatedConfig& config, double lambda) {
    return wavematch_smatrix(config, MatchingProblem{2, lambda});
}

}  // namespace jcl::oracle
