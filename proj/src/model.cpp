#include "jcl/model.hpp"

#include <cmath>

#include "jcl/error.hpp"

namespace jcl {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveOmega: return "NonPositiveOmega";
        case ErrorCode::NonPositiveSpacing: return "NonPositiveSpacing";
        case ErrorCode::ZeroCutoff: return "ZeroCutoff";
        case ErrorCode::NonFiniteField: return "NonFiniteField";
        case ErrorCode::OutOfBand: return "OutOfBand";
        case ErrorCode::BandEdgeSingularity: return "BandEdgeSingularity";
        case ErrorCode::SingularLinearSystem: return "SingularLinearSystem";
        case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorCode::CutoffNotConverged: return "CutoffNotConverged";
        case ErrorCode::ScenarioAssertionFailed: return "ScenarioAssertionFailed";
    }
    return "Unknown";
}

double ThermalState::photon_weight(int n, double omega) const noexcept {
    if (n < 0) return 0.0;
    if (beta.is_infinite()) return n == 0 ? 1.0 : 0.0;
    const double x = beta.value() * omega;
    return -std::expm1(-x) * std::exp(-x * n);
}

double fermi_dirac(const Beta& beta, double x) noexcept {
    if (beta.is_infinite()) return x < 0.0 ? 1.0 : 0.0;
    const double t = beta.value() * x;
    if (t > 0.0) {
        const double e = std::exp(-t);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(t));
}

Eigen::Matrix2cd ContactBasis::unitary() const {
    Eigen::Matrix2cd u;
    u.col(0) = d0;
    u.col(1) = d1;
    return u;
}

ContactBasis contact_basis(const DotParams& dot) {
    const double c = std::cos(dot.contact_angle);
    const double s = std::sin(dot.contact_angle);
    const std::complex<double> phase = std::polar(1.0, dot.contact_phase);
    ContactBasis b;
    b.d0 << c, phase * s;
    b.d1 << -std::conj(phase) * s, c;
    return b;
}

double ValidatedConfig::channel_band_low(Side s, int n) const noexcept {
    return config_.lead(s).band_low() + n * config_.photon.omega;
}

double ValidatedConfig::channel_band_high(Side s, int n) const noexcept {
    return config_.lead(s).band_high() + n * config_.photon.omega;
}

ValidatedConfig ValidatedConfig::with_cutoff(int cutoff) const {
    ModelConfig c = config_;
    c.photon.cutoff = cutoff;
    return validate(c);
}

ValidatedConfig ValidatedConfig::with_photon_coupling(double g_ph) const {
    ModelConfig c = config_;
    c.g_ph = g_ph;
    return validate(c);
}

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) throw ConfigError(ErrorCode::NonFiniteField, field, "must be finite");
}

}  // namespace

ValidatedConfig validate(const ModelConfig& config) {
    require_finite(config.left.bias, "v_l");
    require_finite(config.right.bias, "v_r");
    require_finite(config.dot.level_base, "level_base");
    require_finite(config.dot.spacing, "spacing");
    require_finite(config.dot.contact_angle, "contact_angle");
    require_finite(config.dot.contact_phase, "contact_phase");
    require_finite(config.photon.omega, "omega");
    require_finite(config.g_el, "g_el");
    require_finite(config.g_ph, "g_ph");
    require_finite(config.charge_unit, "charge_unit");

    if (!(config.photon.omega > 0.0))
        throw ConfigError(ErrorCode::NonPositiveOmega, "omega", "photon frequency must be > 0");
    if (!(config.dot.spacing > 0.0))
        throw ConfigError(ErrorCode::NonPositiveSpacing, "spacing", "dot level spacing must be > 0");
    if (config.photon.cutoff < 1)
        throw ConfigError(ErrorCode::ZeroCutoff, "cutoff", "photon cutoff must be >= 1");

    ModelConfig c = config;
    c.left.side = Side::left;
    c.right.side = Side::right;
    return ValidatedConfig(c, contact_basis(c.dot));
}

void validate(const ThermalState& thermal) {
    if (!thermal.beta.is_infinite() && !(std::isfinite(thermal.beta.value()) && thermal.beta.value() > 0.0))
        throw ConfigError(ErrorCode::NonFiniteField, "beta", "inverse temperature must be > 0 or inf");
    require_finite(thermal.mu_left, "mu_left");
    require_finite(thermal.mu_right, "mu_right");
}

}  // namespace jcl
