// scattering.hpp: on-shell multichannel S-matrix of the dot coupled to two leads.
//
// A channel (lead, n) is open at total energy lambda when lambda - n omega lies
// strictly inside the lead band. S is built from the dot resolvent dressed by
// the lead self-energies:
//   S_cc' = delta_cc' - i sqrt(Gamma_c Gamma_c') <d_c| (lambda - H_D - Sigma)^{-1} |d_c'>
// where d_(l,n) = delta0 (x) Y_n and d_(r,n) = delta1 (x) Y_n. Only |S_cc'|^2 is
// convention independent; per-channel phases are implementation defined.

#pragma once

#include <vector>

#include <Eigen/Core>

#include "jcl/dot.hpp"
#include "jcl/model.hpp"

namespace jcl::scattering {

struct Channel {
    Side lead = Side::left;
    int n = 0;

    friend bool operator==(const Channel&, const Channel&) = default;
};

// Open channels ordered by (n ascending, left before right).
struct ChannelSet {
    double lambda = 0.0;
    std::vector<Channel> channels;

    int size() const noexcept { return static_cast<int>(channels.size()); }
    // Row of the channel in S, or -1 when it is closed.
    int index_of(const Channel& c) const noexcept;
};

struct SMatrix {
    double lambda = 0.0;
    ChannelSet channel_set;
    Eigen::MatrixXcd entries;

    // max |(S^dagger S - I)_ij|
    double unitarity_defect() const;
};

// sigma(out, in) = |S_out,in - delta|^2 with rows/columns in channel_set order.
struct CrossSectionTable {
    double lambda = 0.0;
    std::vector<Channel> channels;
    Eigen::MatrixXd sigma;

    int index_of(const Channel& c) const noexcept;
    // 0 when either channel is closed.
    double at(const Channel& out, const Channel& in) const noexcept;
    // max_k |sum_j sigma_jk - sum_j sigma_kj|
    double sum_rule_defect() const;
};

ChannelSet open_channels(const ValidatedConfig& config, double lambda);

// Sum over all channels (open and closed, n < cutoff) of
// g_el^2 g^r_(alpha,n)(lambda) |d_(alpha,n)><d_(alpha,n)|, in the requested basis.
Eigen::MatrixXcd self_energy(const ValidatedConfig& config, double lambda,
                             dot::Basis basis = dot::Basis::eigen);

// Reusable solver for one configuration. In the eigenbasis with electron-fastest
// ordering lambda - H_D - Sigma is tridiagonal, so every energy costs O(N_ph)
// per open channel. Thread-safe: evaluate() keeps no mutable state.
class Scatterer {
public:
    explicit Scatterer(ValidatedConfig config);

    const ValidatedConfig& config() const noexcept { return config_; }

    // Throws Error(SingularLinearSystem) when the reciprocal condition number
    // of lambda - H_D - Sigma drops below 1e-14, Error(BandEdgeSingularity)
    // at a channel band edge.
    SMatrix evaluate(double lambda) const;

private:
    ValidatedConfig config_;
    Eigen::VectorXd h_diag_;
    Eigen::VectorXd h_off_;  // (i, i+1) entries; nonzero only for i odd
};

SMatrix smatrix(const ValidatedConfig& config, double lambda);

// Same object from a dense LU solve in either basis; used for cross-checks.
SMatrix smatrix_dense(const ValidatedConfig& config, double lambda,
                      dot::Basis basis = dot::Basis::eigen);

// Pure-electron problem (g_ph = 0, one photon level) at energy lambda_rel.
SMatrix contact_smatrix(const ValidatedConfig& config, double lambda_rel);

CrossSectionTable cross_sections(const SMatrix& s);

}  // namespace jcl::scattering
