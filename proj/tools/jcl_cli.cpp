// jcl: command-line driver for the dot/leads/resonator transport model.
//
//   jcl spectrum    --config FILE   closed-form vs numeric JC eigenvalues (CSV)
//   jcl smatrix     --config FILE   cross-sections over an energy grid (CSV)
//   jcl currents    --config FILE   one current report (JSON)
//   jcl sweep       --config FILE --sweep KEY:START:STOP:STEPS   current reports along an axis (CSV)
//   jcl convergence --config FILE   currents vs photon cutoff (CSV)
//   jcl validate    --config FILE   structural assertion suite
//
// Exit codes: 1 config error, 2 numerical non-convergence, 3 validate failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "jcl/currents.hpp"
#include "jcl/dot.hpp"
#include "jcl/error.hpp"
#include "jcl/scattering.hpp"
#include "jcl/symmetry.hpp"

namespace {

using namespace jcl;

constexpr int kExitConfig = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitValidate = 3;

// Config problems detected by the driver itself (parse errors, unknown keys).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Numerics {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    std::optional<int> nph;
    int threads = 0;
    int max_intervals = 200000;
    std::optional<double> grid_start, grid_stop;
    int grid_steps = 201;
};

struct RunConfig {
    ModelConfig model;
    ThermalState thermal;
    Numerics numerics;
};

double parse_real(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError(key + ": expected a real number, got '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError(key + ": expected an integer, got '" + text + "'");
    }
}

// Real scalar fields addressable from the config file and by --sweep.
std::map<std::string, double*> real_fields(RunConfig& c) {
    return {
        {"leads.left", &c.model.left.bias},
        {"leads.right", &c.model.right.bias},
        {"leads.g_el", &c.model.g_el},
        {"dot.level_base", &c.model.dot.level_base},
        {"dot.spacing", &c.model.dot.spacing},
        {"dot.contact_angle", &c.model.dot.contact_angle},
        {"dot.contact_phase", &c.model.dot.contact_phase},
        {"photon.omega", &c.model.photon.omega},
        {"photon.g_ph", &c.model.g_ph},
        {"thermal.mu_left", &c.thermal.mu_left},
        {"thermal.mu_right", &c.thermal.mu_right},
        {"numerics.charge_unit", &c.model.charge_unit},
        {"numerics.rel_tol", &c.numerics.rel_tol},
        {"numerics.abs_tol", &c.numerics.abs_tol},
    };
}

void set_beta(RunConfig& c, double v) { c.thermal.beta = Beta(v); }

RunConfig load_config(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw UsageError(e.what());
    }
    RunConfig c;
    auto reals = real_fields(c);
    for (const auto& [section, entries] : tree) {
        if (entries.empty() && !entries.data().empty())
            throw UsageError("key '" + section + "' outside a section");
        for (const auto& [name, value] : entries) {
            const std::string key = section + "." + name;
            const std::string text = value.data();
            if (auto it = reals.find(key); it != reals.end()) {
                *it->second = parse_real(key, text);
            } else if (key == "thermal.beta") {
                set_beta(c, parse_real(key, text));
            } else if (key == "photon.cutoff") {
                c.model.photon.cutoff = parse_int(key, text);
            } else if (key == "numerics.nph") {
                c.numerics.nph = parse_int(key, text);
            } else if (key == "numerics.max_intervals") {
                c.numerics.max_intervals = parse_int(key, text);
            } else if (key == "numerics.threads") {
                c.numerics.threads = parse_int(key, text);
            } else if (key == "numerics.grid_start") {
                c.numerics.grid_start = parse_real(key, text);
            } else if (key == "numerics.grid_stop") {
                c.numerics.grid_stop = parse_real(key, text);
            } else if (key == "numerics.grid_steps") {
                c.numerics.grid_steps = parse_int(key, text);
            } else {
                throw UsageError("unknown config key '" + key + "'");
            }
        }
    }
    if (c.numerics.grid_steps < 1) throw UsageError("numerics.grid_steps: must be >= 1");
    return c;
}

struct Sweep {
    std::string key;
    double start = 0.0, stop = 0.0;
    int steps = 0;
};

Sweep parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 4) throw UsageError("--sweep: expected KEY:START:STOP:STEPS, got '" + text + "'");
    Sweep s{parts[0], parse_real("--sweep START", parts[1]), parse_real("--sweep STOP", parts[2]),
            parse_int("--sweep STEPS", parts[3])};
    if (s.steps < 1) throw UsageError("--sweep: STEPS must be >= 1");
    return s;
}

// Resolves a bare field name (mu_right) or a section-qualified one (thermal.mu_right).
std::string resolve_sweep_key(RunConfig& c, const std::string& key) {
    if (key == "beta" || key == "thermal.beta") return "thermal.beta";
    std::vector<std::string> matches;
    for (const auto& [name, ptr] : real_fields(c)) {
        if (name == key) return name;
        if (name.substr(name.find('.') + 1) == key) matches.push_back(name);
    }
    if (matches.size() != 1) throw UsageError("--sweep: '" + key + "' is not a real scalar field of the model");
    return matches.front();
}

void set_field(RunConfig& c, const std::string& key, double v) {
    if (key == "thermal.beta") {
        set_beta(c, v);
        return;
    }
    *real_fields(c).at(key) = v;
}

std::string num(double x) {
    if (x == 0.0) x = 0.0;  // no "-0" in tables
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

currents::CurrentOptions current_options(const RunConfig& c) {
    currents::CurrentOptions o;
    o.rel_tol = c.numerics.rel_tol;
    o.abs_tol = c.numerics.abs_tol;
    o.nph = c.numerics.nph;
    o.threads = c.numerics.threads;
    o.max_intervals = c.numerics.max_intervals;
    return o;
}

// Cutoff used by commands that do not run the current policy.
int display_cutoff(const RunConfig& c) { return c.numerics.nph.value_or(c.model.photon.cutoff); }

void dump_matrix(const std::string& path, const Eigen::MatrixXcd& m) {
    std::ofstream out(path);
    out << "row,col,re,im\n";
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out << i << ',' << j << ',' << num(m(i, j).real()) << ',' << num(m(i, j).imag()) << '\n';
}

void dump_matrices(const ValidatedConfig& cfg, const std::string& prefix) {
    dump_matrix(prefix + "dot_hamiltonian_eigen.csv", dot::build_dot_hamiltonian(cfg, dot::Basis::eigen).matrix);
    dump_matrix(prefix + "dot_hamiltonian_contact.csv", dot::build_dot_hamiltonian(cfg, dot::Basis::contact).matrix);
    std::cerr << "wrote " << prefix << "dot_hamiltonian_{eigen,contact}.csv\n";
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    ModelConfig m = c.model;
    m.photon.cutoff = display_cutoff(c);
    const auto cfg = validate(m);
    const int n_max = m.photon.cutoff - 1;
    auto closed = dot::jc_spectrum_closed_form(cfg, n_max);
    // The truncation leaves the top excited level (n_max, upper dot state) uncoupled.
    closed.push_back(m.dot.level_base + m.dot.spacing + n_max * m.photon.omega);
    std::sort(closed.begin(), closed.end());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dot::build_dot_hamiltonian(cfg, dot::Basis::eigen).matrix,
                                                       Eigen::EigenvaluesOnly);
    out << "index,closed_form,numeric,abs_diff\n";
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double a = closed[i], b = es.eigenvalues()(i);
        out << i << ',' << num(a) << ',' << num(b) << ',' << num(std::abs(a - b)) << '\n';
    }
    return 0;
}

std::vector<double> energy_grid(const RunConfig& c, const ValidatedConfig& cfg) {
    const auto& m = cfg.config();
    const double lo = c.numerics.grid_start.value_or(std::min(m.left.bias, m.right.bias));
    const double hi = c.numerics.grid_stop.value_or(
        std::max(cfg.channel_band_high(Side::left, cfg.cutoff() - 1), cfg.channel_band_high(Side::right, cfg.cutoff() - 1)));
    const int steps = c.numerics.grid_steps;
    std::vector<double> grid;
    for (int i = 0; i < steps; ++i) grid.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return grid;
}

bool grid_point_singular(const jcl::Error& e) {
    return e.code() == ErrorCode::BandEdgeSingularity || e.code() == ErrorCode::SingularLinearSystem;
}

int cmd_smatrix(const RunConfig& c, std::ostream& out) {
    ModelConfig m = c.model;
    m.photon.cutoff = display_cutoff(c);
    const auto cfg = validate(m);
    const scattering::Scatterer sc(cfg);
    out << "lambda,out_lead,out_n,in_lead,in_n,sigma\n";
    for (double lambda : energy_grid(c, cfg)) {
        scattering::CrossSectionTable t;
        try {
            t = scattering::cross_sections(sc.evaluate(lambda));
        } catch (const jcl::Error& e) {
            if (!grid_point_singular(e)) throw;
            std::cerr << "skipping lambda = " << num(lambda) << ": " << e.what() << '\n';
            continue;
        }
        for (std::size_t j = 0; j < t.channels.size(); ++j)
            for (std::size_t k = 0; k < t.channels.size(); ++k)
                out << num(lambda) << ',' << to_string(t.channels[j].lead) << ',' << t.channels[j].n << ','
                    << to_string(t.channels[k].lead) << ',' << t.channels[k].n << ',' << num(t.sigma(j, k)) << '\n';
    }
    return 0;
}

int cmd_currents(const RunConfig& c, std::ostream& out) {
    validate(c.thermal);
    const auto r = currents::compute_currents(validate(c.model), c.thermal, current_options(c));
    out << currents::to_json(r) << '\n';
    return r.converged ? 0 : kExitConvergence;
}

const char* kReportHeader =
    "j_contact_left,j_contact_right,j_photon_left,j_photon_right,j_total_left,j_total_right,j_photon_number,"
    "nph_used,converged,cutoff_change";

std::string report_row(const currents::CurrentReport& r) {
    std::ostringstream s;
    s << num(r.j_contact_left) << ',' << num(r.j_contact_right) << ',' << num(r.j_photon_left) << ','
      << num(r.j_photon_right) << ',' << num(r.j_total_left) << ',' << num(r.j_total_right) << ','
      << num(r.j_photon_number) << ',' << r.nph_used << ',' << (r.converged ? 1 : 0) << ',' << num(r.cutoff_change);
    return s.str();
}

int cmd_sweep(RunConfig c, const Sweep& sweep, std::ostream& out) {
    const std::string key = resolve_sweep_key(c, sweep.key);
    out << key << ',' << kReportHeader << '\n';
    bool all_converged = true;
    for (int i = 0; i < sweep.steps; ++i) {
        const double v =
            sweep.steps == 1 ? sweep.start : sweep.start + (sweep.stop - sweep.start) * i / (sweep.steps - 1);
        set_field(c, key, v);
        validate(c.thermal);
        const auto r = currents::compute_currents(validate(c.model), c.thermal, current_options(c));
        all_converged = all_converged && r.converged;
        out << num(v) << ',' << report_row(r) << '\n';
    }
    return all_converged ? 0 : kExitConvergence;
}

int cmd_convergence(const RunConfig& c, std::ostream& out) {
    validate(c.thermal);
    const auto cfg = validate(c.model);
    const int policy = c.numerics.nph.value_or(currents::cutoff_policy(cfg, c.thermal));
    auto o = current_options(c);
    const auto dist = currents::DistributionSpec::fermi_dirac(c.thermal);
    out << "nph,is_policy," << "j_contact_left,j_photon_left,j_total_left,j_total_right,j_photon_number,max_change\n";
    std::optional<currents::CurrentReport> prev;
    for (int n = std::max(1, policy - 4); n <= policy + 4; ++n) {
        const auto r = currents::currents_at_cutoff(cfg.with_cutoff(n), dist, o);
        double change = std::numeric_limits<double>::quiet_NaN();
        if (prev)
            change = std::max({std::abs(r.j_contact_left - prev->j_contact_left),
                               std::abs(r.j_photon_left - prev->j_photon_left),
                               std::abs(r.j_total_left - prev->j_total_left),
                               std::abs(r.j_total_right - prev->j_total_right),
                               std::abs(r.j_photon_number - prev->j_photon_number)});
        out << n << ',' << (n == policy ? 1 : 0) << ',' << num(r.j_contact_left) << ',' << num(r.j_photon_left) << ','
            << num(r.j_total_left) << ',' << num(r.j_total_right) << ',' << num(r.j_photon_number) << ','
            << num(change) << '\n';
        prev = r;
    }
    return 0;
}

// Structural assertions: unitarity, sum rule, reciprocity, mirror symmetry,
// charge conservation, decomposition and the vanishing contact current.
int cmd_validate(const RunConfig& c, std::ostream& out) {
    validate(c.thermal);
    ModelConfig m = c.model;
    m.photon.cutoff = display_cutoff(c);
    const auto cfg = validate(m);
    const auto flags = symmetry::classify(m, c.thermal);
    int passed = 0, failed = 0;
    auto check = [&](const std::string& name, double value, double tol) {
        const bool ok = value <= tol;
        (ok ? passed : failed)++;
        out << (ok ? "PASS " : "FAIL ") << name << ": " << num(value) << " (tol " << tol << ")\n";
    };

    const scattering::Scatterer sc(cfg);
    double unit = 0.0, sum_rule = 0.0, reciprocity = 0.0, mirror = 0.0;
    int points = 0;
    for (double lambda : energy_grid(c, cfg)) {
        scattering::SMatrix s;
        try {
            s = sc.evaluate(lambda);
        } catch (const jcl::Error& e) {
            if (!grid_point_singular(e)) throw;
            continue;
        }
        ++points;
        const auto t = scattering::cross_sections(s);
        unit = std::max(unit, s.unitarity_defect());
        sum_rule = std::max(sum_rule, t.sum_rule_defect());
        if (t.channels.empty()) continue;
        if (flags.time_reversible)
            reciprocity = std::max(reciprocity, (t.sigma - t.sigma.transpose()).cwiseAbs().maxCoeff());
        if (flags.mirror_symmetric)
            mirror = std::max(mirror, (t.sigma - symmetry::mirror_swap(t).sigma).cwiseAbs().maxCoeff());
    }
    out << "energies evaluated: " << points << '\n';
    check("unitarity", unit, 1e-10);
    check("sum rule", sum_rule, 1e-10);
    if (flags.time_reversible) check("reciprocity", reciprocity, 1e-10);
    if (flags.mirror_symmetric) check("mirror symmetry", mirror, 1e-10);

    const auto r = currents::compute_currents(validate(c.model), c.thermal, current_options(c));
    check("charge conservation", std::abs(r.j_total_left + r.j_total_right), 1e-8);
    check("decomposition", std::abs(r.j_total_left - r.j_contact_left - r.j_photon_left), 1e-12);
    check("contact antisymmetry", std::abs(r.j_contact_left + r.j_contact_right), 1e-12);
    if (flags.commuting()) {
        check("zero contact current", std::abs(r.j_contact_left), 1e-9);
        check("direct vs difference", std::abs(*r.j_photon_left_direct - r.j_photon_left), 1e-8);
    }
    check("cutoff convergence", r.converged ? 0.0 : r.cutoff_change, 0.0);

    out << "passed " << passed << " failed " << failed << '\n';
    return failed == 0 ? 0 : kExitValidate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transport through a two-level dot coupled to leads and a photon resonator"};
    app.require_subcommand(1, 1);

    std::string config_path, out_path, sweep_text;
    std::optional<double> tol;
    std::optional<int> nph;
    bool dump = false;
    app.add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--tol", tol, "Relative quadrature tolerance");
    app.add_option("--nph", nph, "Fixed photon cutoff (overrides the policy)");
    app.add_option("--sweep", sweep_text, "KEY:START:STOP:STEPS for the sweep command");
    app.add_flag("--debug-dump-matrices", dump, "Write the dot-photon Hamiltonian as CSV (real, imag)");
    app.fallthrough();

    auto* spectrum = app.add_subcommand("spectrum", "Closed-form vs numeric JC eigenvalues");
    auto* smatrix = app.add_subcommand("smatrix", "Cross-sections over an energy grid");
    auto* currents_cmd = app.add_subcommand("currents", "Current report as JSON");
    auto* sweep = app.add_subcommand("sweep", "Current reports along a parameter axis");
    auto* convergence = app.add_subcommand("convergence", "Currents vs photon cutoff");
    auto* validate_cmd = app.add_subcommand("validate", "Structural assertion suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig c = load_config(config_path);
        if (tol) c.numerics.rel_tol = *tol;
        if (nph) c.numerics.nph = *nph;

        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw UsageError("cannot open output file '" + out_path + "'");
        }
        std::ostream& out = out_path.empty() ? std::cout : file;

        if (dump) {
            ModelConfig m = c.model;
            m.photon.cutoff = display_cutoff(c);
            dump_matrices(validate(m), out_path.empty() ? "" : out_path + ".");
        }

        if (*spectrum) return cmd_spectrum(c, out);
        if (*smatrix) return cmd_smatrix(c, out);
        if (*currents_cmd) return cmd_currents(c, out);
        if (*sweep) {
            if (sweep_text.empty()) throw UsageError("sweep requires --sweep KEY:START:STOP:STEPS");
            return cmd_sweep(c, parse_sweep(sweep_text), out);
        }
        if (*convergence) return cmd_convergence(c, out);
        if (*validate_cmd) return cmd_validate(c, out);
    } catch (const UsageError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConvergenceError& e) {
        std::cerr << "not converged: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const jcl::Error& e) {
        if (e.code() == ErrorCode::ScenarioAssertionFailed) {
            std::cerr << "assertion failed: " << e.what() << '\n';
            return kExitValidate;
        }
        if (e.code() == ErrorCode::NonFiniteField) {
            std::cerr << "config error: " << e.what() << '\n';
            return kExitConfig;
        }
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    }
    return 0;
}
