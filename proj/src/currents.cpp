#include "jcl/currents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "jcl/error.hpp"
#include "jcl/scattering.hpp"

namespace jcl::currents {

namespace {

using scattering::Channel;

enum Component { kTotalL, kTotalR, kContactL, kPhoton, kDirectL, kDirectR, kPaired, kContactPhoton, kDim };

// Channel weights below this are treated as zero when clipping the energy domain.
constexpr double kNegligibleWeight = 1e-18;

double thermal_weight(const DistributionSpec& dist, Side lead, double lambda, int n, double omega) {
    return dist.thermal.photon_weight(n, omega) * fermi(dist, lead, lambda, n, omega);
}

// Upper end of the energy window outside which every channel weight is negligible.
double significant_upper_bound(const ValidatedConfig& config, const DistributionSpec& dist, double top) {
    if (dist.kind == DistributionSpec::Kind::custom) return top;
    const Beta& beta = dist.thermal.beta;
    const double omega = config.omega();
    double hi = -std::numeric_limits<double>::infinity();
    for (Side s : {Side::left, Side::right}) {
        for (int n = 0; n < config.cutoff(); ++n) {
            const double low = config.channel_band_low(s, n);
            const double high = config.channel_band_high(s, n);
            double edge;
            if (beta.is_infinite()) {
                if (n != 0) continue;
                edge = dist.thermal.mu(s);
            } else {
                const double rho = dist.thermal.photon_weight(n, omega);
                if (rho <= kNegligibleWeight) continue;
                edge = dist.thermal.mu(s) + n * omega + std::log(rho / kNegligibleWeight - 1.0) / beta.value();
            }
            if (edge <= low) continue;
            hi = std::max(hi, std::min(edge, high));
        }
    }
    return std::min(hi, top);
}

std::vector<double> breakpoints(const ValidatedConfig& config, const DistributionSpec& dist) {
    const ModelConfig& c = config.config();
    const double lo = std::min(c.left.bias, c.right.bias);
    const double top = std::max(c.left.bias, c.right.bias) + 4.0 + (config.cutoff() - 1) * config.omega();
    const double hi = significant_upper_bound(config, dist, top);
    if (!(hi > lo)) return {};

    std::vector<double> pts{lo, hi};
    auto add = [&](double x) {
        if (x > lo && x < hi) pts.push_back(x);
    };
    for (int n = 0; n < config.cutoff(); ++n) {
        for (Side s : {Side::left, Side::right}) {
            add(config.channel_band_low(s, n));
            add(config.channel_band_high(s, n));
            add(dist.thermal.mu(s) + n * config.omega());
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Block-diagonal contact scattering matrix over the channels of s: the block
// of photon number n is s_c(lambda - n omega).
Eigen::MatrixXcd contact_blocks(const scattering::Scatterer& contact, const scattering::SMatrix& s,
                                double omega) {
    const auto& ch = s.channel_set.channels;
    const int k = s.channel_set.size();
    Eigen::MatrixXcd sc = Eigen::MatrixXcd::Identity(k, k);
    int i = 0;
    while (i < k) {
        const int n = ch[i].n;
        int end = i;
        while (end < k && ch[end].n == n) ++end;
        const scattering::SMatrix block = contact.evaluate(s.lambda - n * omega);
        for (int a = i; a < end; ++a)
            for (int b = i; b < end; ++b) {
                const int ra = block.channel_set.index_of({ch[a].lead, 0});
                const int rb = block.channel_set.index_of({ch[b].lead, 0});
                // Rounding of lambda - n omega can close a channel that sits on a band edge.
                if (ra < 0 || rb < 0) continue;
                sc(a, b) = block.entries(ra, rb);
            }
        i = end;
    }
    return sc;
}

double reported_change(const CurrentReport& a, const CurrentReport& b) {
    return std::max({std::abs(a.j_contact_left - b.j_contact_left), std::abs(a.j_photon_left - b.j_photon_left),
                     std::abs(a.j_total_left - b.j_total_left), std::abs(a.j_total_right - b.j_total_right),
                     std::abs(a.j_photon_number - b.j_photon_number)});
}

double reported_scale(const CurrentReport& r) {
    return std::abs(r.j_contact_left) + std::abs(r.j_photon_left) + std::abs(r.j_total_left) +
           std::abs(r.j_total_right) + std::abs(r.j_photon_number);
}

}  // namespace

double fermi(const DistributionSpec& spec, Side lead, double lambda, int n, double omega) {
    const double x = lambda - spec.thermal.mu(lead) - n * omega;
    if (spec.kind == DistributionSpec::Kind::custom) return spec.custom(x);
    return fermi_dirac(spec.thermal.beta, x);
}

const char* to_string(Method m) noexcept { return m == Method::direct ? "direct" : "decomposition"; }

int cutoff_policy(const ValidatedConfig& config, const ThermalState& thermal) {
    const ModelConfig& c = config.config();
    const double omega = config.omega();
    const double lambda_min = std::min(c.left.bias, c.right.bias);
    const double mu_max = std::max(thermal.mu_left, thermal.mu_right);
    int n = std::max(4, static_cast<int>(std::ceil((mu_max - lambda_min) / omega)) + 3);
    if (!thermal.beta.is_infinite())
        n = std::max(n, static_cast<int>(std::ceil(std::log(1e12) / (thermal.beta.value() * omega))) + 2);
    return n;
}

CurrentReport currents_at_cutoff(const ValidatedConfig& config, const DistributionSpec& dist,
                                 const CurrentOptions& options) {
    validate(dist.thermal);
    const ModelConfig& c = config.config();
    const double omega = config.omega();
    const double e = c.charge_unit;

    CurrentReport report;
    report.nph_used = config.cutoff();
    report.symmetry = symmetry::classify(c, dist.thermal);
    const bool commuting = report.symmetry.commuting();
    const bool paired = commuting && report.symmetry.time_reversible;
    const bool need_contact_blocks = commuting || options.debug_contact_photon;
    report.photon_method = commuting ? Method::direct : Method::decomposition;

    const scattering::Scatterer full(config);
    const scattering::Scatterer contact(config.with_cutoff(1).with_photon_coupling(0.0));

    auto integrand = [&](double lambda, std::span<double> out) {
        const scattering::SMatrix s = full.evaluate(lambda);
        const auto& ch = s.channel_set.channels;
        const int k = s.channel_set.size();

        // Contact current from the bare two-lead problem at photon number 0.
        {
            const scattering::SMatrix sc = contact.evaluate(lambda);
            const int il = sc.channel_set.index_of({Side::left, 0});
            const int ir = sc.channel_set.index_of({Side::right, 0});
            if (il >= 0 && ir >= 0) {
                const double sigma_c = std::norm(sc.entries(ir, il));
                out[kContactL] = -e * (fermi(dist, Side::left, lambda, 0, omega) -
                                       fermi(dist, Side::right, lambda, 0, omega)) * sigma_c;
            }
        }
        if (k == 0) return;

        std::vector<double> w(k);
        for (int i = 0; i < k; ++i) w[i] = thermal_weight(dist, ch[i].lead, lambda, ch[i].n, omega);
        const Eigen::MatrixXcd t = s.entries - Eigen::MatrixXcd::Identity(k, k);

        Eigen::MatrixXcd sc;
        Eigen::MatrixXd sigma_ph;
        if (need_contact_blocks) sc = contact_blocks(contact, s, omega);
        if (commuting) sigma_ph = (s.entries * sc.adjoint() - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs2();

        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < k; ++i) {
                if (i == j) continue;
                // flux from channel i into channel j
                const double sigma = std::norm(t(j, i));
                const double dw = w[j] - w[i];
                const double dn = ch[j].n - ch[i].n;
                out[ch[j].lead == Side::left ? kTotalL : kTotalR] += -e * dw * sigma;
                out[kPhoton] += dn * w[i] * sigma;
                if (commuting) {
                    out[ch[j].lead == Side::left ? kDirectL : kDirectR] += -e * dw * sigma_ph(j, i);
                    if (paired && dn > 0) out[kPaired] += dn * (w[i] - w[j]) * sigma_ph(j, i);
                }
                if (options.debug_contact_photon) out[kContactPhoton] += dn * w[i] * std::norm(sc(j, i));
            }
        }
    };

    quad::Options qopt;
    qopt.rel_tol = options.rel_tol;
    qopt.abs_tol = options.abs_tol;
    qopt.threads = options.threads;
    qopt.max_intervals = options.max_intervals;
    const quad::Result q = quad::integrate(integrand, kDim, breakpoints(config, dist), qopt);
    const double inv = 1.0 / (2.0 * std::numbers::pi);
    auto val = [&](Component i) { return q.value[i] * inv; };
    auto err = [&](Component i) { return q.error[i] * inv; };

    report.j_total_left = val(kTotalL);
    report.j_total_right = val(kTotalR);
    report.j_contact_left = val(kContactL);
    report.j_contact_right = -report.j_contact_left;
    report.j_photon_left = report.j_total_left - report.j_contact_left;
    report.j_photon_right = report.j_total_right - report.j_contact_right;
    report.j_photon_number = val(kPhoton);
    if (commuting) {
        report.j_photon_left_direct = val(kDirectL);
        report.j_photon_right_direct = val(kDirectR);
    }
    if (paired) report.j_photon_number_paired = val(kPaired);
    if (options.debug_contact_photon) report.j_contact_photon_debug = val(kContactPhoton);

    report.quad_error.j_total_left = err(kTotalL);
    report.quad_error.j_total_right = err(kTotalR);
    report.quad_error.j_contact_left = err(kContactL);
    report.quad_error.j_photon_left = err(kTotalL) + err(kContactL);
    report.quad_error.j_photon_number = err(kPhoton);
    report.evaluations = q.evaluations;
    return report;
}

CurrentReport compute_currents(const ValidatedConfig& config, const DistributionSpec& dist,
                               const CurrentOptions& options) {
    validate(dist.thermal);
    const int n = options.nph.value_or(cutoff_policy(config, dist.thermal));
    CurrentReport report = currents_at_cutoff(config.with_cutoff(n), dist, options);
    if (!options.check_cutoff) return report;

    const CurrentReport finer = currents_at_cutoff(config.with_cutoff(n + 2), dist, options);
    report.cutoff_change = reported_change(report, finer);
    const double tol = std::max(1e-8 * reported_scale(report), 1e-12);
    report.converged = report.cutoff_change < tol;
    report.evaluations += finer.evaluations;
    if (!report.converged && options.strict) {
        std::ostringstream msg;
        msg << "currents moved by " << report.cutoff_change << " between nph = " << n << " and " << n + 2
            << " (tolerance " << tol << ")";
        throw ConvergenceError(ErrorCode::CutoffNotConverged, report.cutoff_change, msg.str());
    }
    return report;
}

LeadPair contact_electron_current(const ValidatedConfig& config, const ThermalState& thermal,
                                  const CurrentOptions& options) {
    // The contact problem never sees the photon ladder.
    CurrentOptions o = options;
    o.check_cutoff = false;
    const CurrentReport r = currents_at_cutoff(config.with_cutoff(1), DistributionSpec::fermi_dirac(thermal), o);
    return {r.j_contact_left, r.j_contact_right};
}

LeadPair total_electron_current(const ValidatedConfig& config, const ThermalState& thermal,
                                const CurrentOptions& options) {
    CurrentOptions o = options;
    o.strict = true;
    const CurrentReport r = compute_currents(config, thermal, o);
    return {r.j_total_left, r.j_total_right};
}

PhotonInduced photon_induced_electron_current(const ValidatedConfig& config, const ThermalState& thermal,
                                              const CurrentOptions& options) {
    const CurrentReport r = compute_currents(config, thermal, options);
    if (r.photon_method == Method::direct) return {{*r.j_photon_left_direct, *r.j_photon_right_direct}, Method::direct};
    return {{r.j_photon_left, r.j_photon_right}, Method::decomposition};
}

double photon_current(const ValidatedConfig& config, const ThermalState& thermal, const CurrentOptions& options) {
    const CurrentReport r = compute_currents(config, thermal, options);
    if (r.j_photon_number_paired) {
        const double tol = 10.0 * r.quad_error.j_photon_number + 1e-12;
        if (std::abs(*r.j_photon_number_paired - r.j_photon_number) > tol) {
            std::ostringstream msg;
            msg << "paired photon current " << *r.j_photon_number_paired << " differs from " << r.j_photon_number;
            throw Error(ErrorCode::ScenarioAssertionFailed, msg.str());
        }
    }
    return r.j_photon_number;
}

double contact_photon_current(const ValidatedConfig& config, const ThermalState& thermal,
                              const CurrentOptions& options) {
    if (options.debug_contact_photon) {
        CurrentOptions o = options;
        o.check_cutoff = false;
        const int n = options.nph.value_or(cutoff_policy(config, thermal));
        const CurrentReport r = currents_at_cutoff(config.with_cutoff(n), DistributionSpec::fermi_dirac(thermal), o);
        if (!(std::abs(*r.j_contact_photon_debug) <= 1e-12)) {
            std::ostringstream msg;
            msg << "contact photon current evaluated to " << *r.j_contact_photon_debug;
            throw Error(ErrorCode::ScenarioAssertionFailed, msg.str());
        }
    }
    return 0.0;
}

ModelConfig light_absorbing_config(const ScenarioParams& p) {
    ModelConfig c;
    c.left.bias = p.omega;
    c.right.bias = 0.0;
    c.dot.level_base = p.level_base;
    c.dot.spacing = p.spacing.value_or(p.omega);
    c.dot.contact_angle = std::numbers::pi / 4;
    c.dot.contact_phase = 0.0;
    c.photon.omega = p.omega;
    c.g_el = p.g_el;
    c.g_ph = p.g_ph;
    return c;
}

ThermalState light_absorbing_thermal(const ScenarioParams& p) {
    return {Beta(p.beta), 0.0, p.omega};
}

CurrentReport light_absorbing_scenario(const ScenarioParams& params, const CurrentOptions& options) {
    if (!(params.omega >= 4.0))
        throw ConfigError(ErrorCode::NonFiniteField, "omega", "light-absorbing scenario needs omega >= 4");
    const CurrentReport r =
        compute_currents(validate(light_absorbing_config(params)), light_absorbing_thermal(params), options);
    const double tol =
        1e-9 + 10.0 * std::max(r.quad_error.j_photon_number, r.quad_error.j_photon_left);
    if (r.j_photon_number > tol || r.j_photon_left > tol) {
        std::ostringstream msg;
        msg << "light-absorbing signs violated: j_photon_number = " << r.j_photon_number
            << ", j_photon_left = " << r.j_photon_left << " (tolerance " << tol << ")";
        throw Error(ErrorCode::ScenarioAssertionFailed, msg.str());
    }
    return r;
}

std::string to_json(const CurrentReport& r, int indent) {
    nlohmann::ordered_json j;
    j["j_contact_left"] = r.j_contact_left;
    j["j_photon_left"] = r.j_photon_left;
    j["j_total_left"] = r.j_total_left;
    j["j_total_right"] = r.j_total_right;
    j["j_photon_number"] = r.j_photon_number;
    j["quad_error"] = {
        {"j_contact_left", r.quad_error.j_contact_left},   {"j_photon_left", r.quad_error.j_photon_left},
        {"j_total_left", r.quad_error.j_total_left},       {"j_total_right", r.quad_error.j_total_right},
        {"j_photon_number", r.quad_error.j_photon_number},
    };
    j["nph_used"] = r.nph_used;
    j["converged"] = r.converged;
    j["cutoff_change"] = r.cutoff_change;
    j["photon_method"] = to_string(r.photon_method);
    if (r.j_photon_left_direct) j["j_photon_left_direct"] = *r.j_photon_left_direct;
    if (r.j_photon_number_paired) j["j_photon_number_paired"] = *r.j_photon_number_paired;
    j["symmetry"] = {
        {"time_reversible", r.symmetry.time_reversible},
        {"mirror_symmetric", r.symmetry.mirror_symmetric},
        {"case_E", r.symmetry.case_E},
        {"case_S", r.symmetry.case_S},
        {"case_C", r.symmetry.case_C},
    };
    return j.dump(indent);
}

}  // namespace jcl::currents
