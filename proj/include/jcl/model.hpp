// model.hpp: physical parameters of the dot/leads/resonator system and their validation.
//
// Energies are measured in units of the lead hopping. A lead with bias v has
// the band [v, v + 4]; the photon ladder is {n * omega : 0 <= n < cutoff}.

#pragma once

#include <complex>
#include <limits>
#include <string>

#include <Eigen/Core>

namespace jcl {

enum class Side { left, right };

inline const char* to_string(Side s) noexcept { return s == Side::left ? "l" : "r"; }
inline Side other(Side s) noexcept { return s == Side::left ? Side::right : Side::left; }

struct LeadParams {
    double bias = 0.0;
    Side side = Side::left;

    double band_low() const noexcept { return bias; }
    double band_high() const noexcept { return bias + 4.0; }
};

struct DotParams {
    double level_base = 0.0;     // lowest dot eigenvalue
    double spacing = 1.0;        // epsilon > 0
    double contact_angle = 0.0;  // theta in [0, pi)
    double contact_phase = 0.0;  // phi in [0, 2 pi)
};

struct PhotonParams {
    double omega = 1.0;
    int cutoff = 4;  // Fock levels 0 .. cutoff-1
};

struct ModelConfig {
    LeadParams left{0.0, Side::left};
    LeadParams right{0.0, Side::right};
    DotParams dot;
    PhotonParams photon;
    double g_el = 0.0;
    double g_ph = 0.0;
    double charge_unit = 1.0;  // multiplies every electron current

    const LeadParams& lead(Side s) const noexcept { return s == Side::left ? left : right; }
};

// Inverse temperature; the zero-temperature limit is a distinct state rather
// than a large float so the step-function branches are exact.
class Beta {
public:
    Beta() = default;
    explicit Beta(double value) : value_(value) {}
    static Beta infinite() { return Beta(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
    double value() const noexcept { return value_; }

private:
    double value_ = 1.0;
};

struct ThermalState {
    Beta beta;
    double mu_left = 0.0;
    double mu_right = 0.0;

    double mu(Side s) const noexcept { return s == Side::left ? mu_left : mu_right; }

    // Gibbs weight (1 - e^{-beta omega}) e^{-n beta omega}; delta_{0n} at beta = inf.
    double photon_weight(int n, double omega) const noexcept;
};

// f_FD(x) = 1 / (1 + e^{beta x}); the indicator of x < 0 at beta = inf.
double fermi_dirac(const Beta& beta, double x) noexcept;

// Orthonormal contact vectors (delta0, delta1) in eigenbasis coordinates.
struct ContactBasis {
    Eigen::Vector2cd d0;
    Eigen::Vector2cd d1;

    const Eigen::Vector2cd& for_lead(Side s) const noexcept { return s == Side::left ? d0 : d1; }
    // Columns are d0, d1.
    Eigen::Matrix2cd unitary() const;
};

ContactBasis contact_basis(const DotParams& dot);

// A configuration that passed validate(); derived quantities are cached.
class ValidatedConfig {
public:
    const ModelConfig& config() const noexcept { return config_; }
    const ContactBasis& basis() const noexcept { return basis_; }
    int cutoff() const noexcept { return config_.photon.cutoff; }
    double omega() const noexcept { return config_.photon.omega; }

    // Band of channel (side, n): [v + n omega, v + 4 + n omega].
    double channel_band_low(Side s, int n) const noexcept;
    double channel_band_high(Side s, int n) const noexcept;

    // Same physics with a different photon cutoff / couplings; re-validates.
    ValidatedConfig with_cutoff(int cutoff) const;
    ValidatedConfig with_photon_coupling(double g_ph) const;

private:
    friend ValidatedConfig validate(const ModelConfig& config);
    ValidatedConfig(ModelConfig config, ContactBasis basis)
        : config_(std::move(config)), basis_(std::move(basis)) {}

    ModelConfig config_;
    ContactBasis basis_;
};

// Throws ConfigError naming the offending field.
ValidatedConfig validate(const ModelConfig& config);

// beta must be positive (or infinite), chemical potentials finite.
void validate(const ThermalState& thermal);

}  // namespace jcl
