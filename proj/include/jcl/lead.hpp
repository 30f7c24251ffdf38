// lead.hpp: analytics of one semi-infinite Dirichlet tight-binding lead.
//
// The lead Hamiltonian is -Laplacian + v on sites x = 1, 2, ... with f(0) = 0,
// i.e. onsite 2 + v and hopping -1. In photon channel n every energy is shifted
// by n * omega, so the chain onsite becomes a = v + n omega + 2.

#pragma once

#include <complex>
#include <optional>

#include "jcl/model.hpp"

namespace jcl::lead {

// Onsite constant of the chain seen by channel n.
inline double channel_onsite(const LeadParams& lead, int n, double omega) noexcept {
    return lead.bias + n * omega + 2.0;
}

// Momentum k in (0, pi) with lambda = a - 2 cos k, or nullopt when the
// channel is closed (band edges are excluded).
std::optional<double> momentum(const LeadParams& lead, int n, double omega, double lambda) noexcept;

// Energy-normalized generalized eigenfunction g(x, lambda_rel) of the bare
// lead (no photon shift). Throws Error(OutOfBand) outside (v, v + 4).
double eigenfunction(const LeadParams& lead, double lambda_rel, int x);

// Retarded surface Green function of a chain with the given onsite constant.
// For real z the in-band root has Im g <= 0 and the out-of-band root |g| < 1;
// for Im z > 0 the root with |g| < 1 is returned. Throws
// Error(BandEdgeSingularity) at a real band edge.
std::complex<double> surface_gf(double onsite, std::complex<double> z);

inline std::complex<double> surface_gf(const LeadParams& lead, int n, double omega, std::complex<double> z) {
    return surface_gf(channel_onsite(lead, n, omega), z);
}

// Level width g_el^2 sqrt(4 - (lambda - a)^2) inside the band, 0 outside.
double gamma(const LeadParams& lead, int n, double omega, double lambda, double g_el) noexcept;

}  // namespace jcl::lead
