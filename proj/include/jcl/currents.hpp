// currents.hpp: steady-state Landauer-Buttiker currents of the JCL model.
//
// With channel weights w_c(lambda) = rho_ph(n_c) f(lambda - mu_(alpha_c) - n_c omega)
// and cross-sections sigma_jc = |S_jc - delta_jc|^2 (from c into j):
//   total electron current   J_alpha  = -(e/2pi) int sum_{j in alpha, c} (w_j - w_c) sigma_jc
//   contact current          J^c_l    = -(e/2pi) int (f(lambda - mu_l) - f(lambda - mu_r)) sigma_c(lambda)
//   photon-induced current   J^ph     = J - J^c, or the same pairwise formula with the
//                                       cross-sections of S_ph = S S_c^dagger when rho^el
//                                       commutes with s_c
//   photon current           J_ph     = (1/2pi) int sum_{j,c} (n_j - n_c) w_c sigma_jc
// All integrals are evaluated together as one vector integrand.

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "jcl/model.hpp"
#include "jcl/quadrature.hpp"
#include "jcl/symmetry.hpp"

namespace jcl::currents {

struct DistributionSpec {
    enum class Kind { fermi_dirac, custom };

    Kind kind = Kind::fermi_dirac;
    ThermalState thermal;  // beta also sets the photon Gibbs weights
    std::function<double(double)> custom;  // bounded, nonnegative, used for Kind::custom

    static DistributionSpec fermi_dirac(const ThermalState& thermal) { return {Kind::fermi_dirac, thermal, {}}; }
};

// f(lambda - mu_lead - n omega).
double fermi(const DistributionSpec& spec, Side lead, double lambda, int n, double omega);

enum class Method { direct, decomposition };
const char* to_string(Method m) noexcept;

struct CurrentOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    std::optional<int> nph;      // overrides the cutoff policy
    bool check_cutoff = true;    // re-run at nph + 2
    bool strict = false;         // throw CutoffNotConverged instead of flagging
    bool debug_contact_photon = false;
    int threads = 0;
    int max_intervals = 200000;  // quadrature budget before QuadratureNotConverged
};

struct QuadErrors {
    double j_contact_left = 0.0;
    double j_photon_left = 0.0;
    double j_total_left = 0.0;
    double j_total_right = 0.0;
    double j_photon_number = 0.0;
};

struct CurrentReport {
    double j_contact_left = 0.0;
    double j_contact_right = 0.0;
    double j_photon_left = 0.0;   // j_total_left - j_contact_left
    double j_photon_right = 0.0;
    double j_total_left = 0.0;
    double j_total_right = 0.0;
    double j_photon_number = 0.0;

    // Pairwise formula with S_ph cross-sections; set only in the commuting cases.
    std::optional<double> j_photon_left_direct;
    std::optional<double> j_photon_right_direct;
    // Paired (n > m) photon current; set when the commuting case is time reversible.
    std::optional<double> j_photon_number_paired;
    // Contact photon current evaluated as an integral (debug mode only).
    std::optional<double> j_contact_photon_debug;

    Method photon_method = Method::decomposition;
    QuadErrors quad_error;
    int nph_used = 0;
    bool converged = true;
    double cutoff_change = 0.0;  // max |J(nph + 2) - J(nph)| over reported currents
    long evaluations = 0;
    symmetry::SymmetryFlags symmetry;
};

// max(4, ceil((mu_max - lambda_min)/omega) + 3, ceil(ln(1e12)/(beta omega)) + 2);
// the thermal term is dropped at beta = inf.
int cutoff_policy(const ValidatedConfig& config, const ThermalState& thermal);

// All currents at exactly config.cutoff() photon levels; no convergence check.
CurrentReport currents_at_cutoff(const ValidatedConfig& config, const DistributionSpec& dist,
                                 const CurrentOptions& options = {});

// Policy (or options.nph) cutoff, with the nph + 2 convergence check.
CurrentReport compute_currents(const ValidatedConfig& config, const DistributionSpec& dist,
                               const CurrentOptions& options = {});
inline CurrentReport compute_currents(const ValidatedConfig& config, const ThermalState& thermal,
                                      const CurrentOptions& options = {}) {
    return compute_currents(config, DistributionSpec::fermi_dirac(thermal), options);
}

struct LeadPair {
    double left = 0.0;
    double right = 0.0;
};

struct PhotonInduced {
    LeadPair value;
    Method method = Method::decomposition;
};

LeadPair contact_electron_current(const ValidatedConfig& config, const ThermalState& thermal,
                                  const CurrentOptions& options = {});
LeadPair total_electron_current(const ValidatedConfig& config, const ThermalState& thermal,
                                const CurrentOptions& options = {});
PhotonInduced photon_induced_electron_current(const ValidatedConfig& config, const ThermalState& thermal,
                                              const CurrentOptions& options = {});
// Throws ScenarioAssertionFailed if the paired form disagrees in a time-reversible commuting case.
double photon_current(const ValidatedConfig& config, const ThermalState& thermal, const CurrentOptions& options = {});
// Photon-number conserving contact scattering carries no photon current. With
// options.debug_contact_photon the integral is evaluated and checked to be <= 1e-12.
double contact_photon_current(const ValidatedConfig& config, const ThermalState& thermal,
                              const CurrentOptions& options = {});

// v_r = 0, v_l = omega >= 4, mu_l = 0, mu_r = omega, time-reversible contact
// basis (theta = pi/4, phi = 0).
struct ScenarioParams {
    double omega = 4.0;
    double beta = 1.0;
    double g_el = 0.2;
    double g_ph = 0.2;
    double level_base = 2.0;
    std::optional<double> spacing;  // defaults to omega
};

ModelConfig light_absorbing_config(const ScenarioParams& params);
ThermalState light_absorbing_thermal(const ScenarioParams& params);

// Throws Error(ScenarioAssertionFailed) when J_ph > tol or J^ph_el,left > tol;
// tol = 10 x the larger quadrature error estimate plus 1e-9.
CurrentReport light_absorbing_scenario(const ScenarioParams& params, const CurrentOptions& options = {});

std::string to_json(const CurrentReport& report, int indent = 2);

}  // namespace jcl::currents
