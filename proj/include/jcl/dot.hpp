// dot.hpp: the truncated dot (x) photon Hamiltonian (Jaynes-Cummings block).
//
// Basis ordering is electron-fastest: index(j, n) = 2 n + j, with j the dot
// state (0 = ground e0, 1 = excited e1) and n the photon number. The
// annihilator b is projected onto span{Y_0 .. Y_{N-1}}, so the element
// sqrt(N) leaving the top level is dropped.

#pragma once

#include <vector>

#include <Eigen/Core>

#include "jcl/model.hpp"

namespace jcl::dot {

enum class Basis { eigen, contact };

inline int index(int dot_state, int n) noexcept { return 2 * n + dot_state; }

struct DotPhotonHamiltonian {
    Eigen::MatrixXcd matrix;
    Basis basis = Basis::eigen;

    int dim() const noexcept { return static_cast<int>(matrix.rows()); }
};

// h_S (x) I + I (x) omega b*b + g_ph (sigma+ (x) b + sigma- (x) b*). In the
// contact basis the matrix is U^dagger H U with U = I (x) [delta0 delta1].
DotPhotonHamiltonian build_dot_hamiltonian(const ValidatedConfig& config, Basis basis);

// Block-diagonal I_N (x) [delta0 delta1].
Eigen::MatrixXcd contact_rotation(const ValidatedConfig& config);

// N_JC = sigma+ sigma- (x) I + I (x) b*b in the eigenbasis (diagonal).
Eigen::MatrixXcd excitation_number(int cutoff);

// {lambda0} and, for 1 <= n <= n_max,
// lambda0 + n omega + (eps - omega)/2 +- sqrt((eps - omega)^2/4 + g^2 n); sorted.
std::vector<double> jc_spectrum_closed_form(const ValidatedConfig& config, int n_max);

}  // namespace jcl::dot
