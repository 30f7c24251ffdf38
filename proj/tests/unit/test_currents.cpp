#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "common.hpp"
#include "jcl/currents.hpp"
#include "jcl/error.hpp"

using namespace jcl;
using namespace jcl::currents;

namespace {

ModelConfig generic() {
    ModelConfig c;
    c.left.bias = 0.3;
    c.right.bias = -0.2;
    c.dot.level_base = 1.0;
    c.dot.spacing = 1.4;
    c.dot.contact_angle = 0.6;
    c.dot.contact_phase = 0.8;
    c.photon.omega = 1.5;
    c.g_el = 0.6;
    c.g_ph = 0.35;
    return c;
}

CurrentOptions tight() {
    CurrentOptions o;
    o.rel_tol = 1e-10;
    return o;
}

}  // namespace

TEST_CASE("fermi") {
    const auto spec = DistributionSpec::fermi_dirac({Beta(1.0), 0.5, -0.5});
    CHECK(fermi(spec, Side::left, 0.5 + 2 * 1.5, 2, 1.5) == doctest::Approx(0.5));
    CHECK(fermi(spec, Side::right, -0.5 + std::log(3.0), 0, 1.5) == doctest::Approx(0.25));
    const auto cold = DistributionSpec::fermi_dirac({Beta::infinite(), 0.0, 0.0});
    CHECK(fermi(cold, Side::left, 1.9, 1, 2.0) == 1.0);
    CHECK(fermi(cold, Side::left, 2.1, 1, 2.0) == 0.0);
    DistributionSpec custom;
    custom.kind = DistributionSpec::Kind::custom;
    custom.thermal = {Beta(1.0), 1.0, 0.0};
    custom.custom = [](double x) { return x < 0 ? 0.75 : 0.0; };
    CHECK(fermi(custom, Side::left, 0.5, 0, 1.0) == 0.75);
}

TEST_CASE("cutoff policy") {
    ModelConfig c = generic();
    const auto cfg = validate(c);
    CHECK(cutoff_policy(cfg, {Beta::infinite(), 0.0, 0.0}) == 4);
    CHECK(cutoff_policy(cfg, {Beta::infinite(), 7.0, 0.0}) == static_cast<int>(std::ceil(7.2 / 1.5)) + 3);
    CHECK(cutoff_policy(cfg, {Beta(1.0), 0.0, 0.0}) == static_cast<int>(std::ceil(std::log(1e12) / 1.5)) + 2);
}

TEST_CASE("without photon coupling the total current is the contact current") {
    ModelConfig c = generic();
    c.g_ph = 0.0;
    const ThermalState t{Beta(2.0), 1.8, 0.4};
    const auto r = compute_currents(validate(c), t, tight());
    CHECK(r.converged);
    CHECK(std::abs(r.j_contact_left) > 1e-4);
    CHECK(std::abs(r.j_total_left - r.j_contact_left) < 1e-9);
    CHECK(std::abs(r.j_photon_number) < 1e-12);
    CHECK(r.j_contact_left <= 0.0);  // mu_l > mu_r drains the left reservoir
}

TEST_CASE("charge conservation and decomposition") {
    testing::Rng rng(77);
    for (int i = 0; i < 4; ++i) {
        const ModelConfig c = testing::random_config(rng, 4);
        const ThermalState t{Beta(rng.uniform(1.0, 4.0)), rng.uniform(0, 3), rng.uniform(0, 3)};
        const auto r = compute_currents(validate(c), t, tight());
        CHECK(std::abs(r.j_total_left + r.j_total_right) < 1e-9);
        CHECK(r.j_total_left == r.j_contact_left + r.j_photon_left);
        CHECK(r.nph_used == cutoff_policy(validate(c), t));
    }
}

TEST_CASE("zero temperature, equal chemical potentials") {
    // Only the photon vacuum is populated, so photons can only be emitted.
    const auto r = compute_currents(validate(generic()), {Beta::infinite(), 1.7, 1.7}, tight());
    CHECK(r.j_contact_left == 0.0);
    CHECK(r.photon_method == Method::direct);
    CHECK(r.j_photon_number > 0.0);
    CHECK(std::abs(r.j_total_left + r.j_total_right) < 1e-10);
    // Emission into the two leads is unbalanced without mirror symmetry, so the
    // photon-induced electron current does not vanish in general.
    CHECK(std::abs(r.j_total_left) > 1e-6);

    ModelConfig m = generic();
    m.right.bias = m.left.bias;
    m.dot.contact_angle = std::numbers::pi / 4;
    m.dot.contact_phase = 0.0;
    const auto sym = compute_currents(validate(m), {Beta::infinite(), 2.6, 2.6}, tight());
    CHECK(sym.symmetry.mirror_symmetric);
    CHECK(std::abs(sym.j_total_left) < 1e-10);
    CHECK(sym.j_photon_number > 0.0);
}

TEST_CASE("disjoint bands carry no contact current") {
    ModelConfig c = generic();
    c.left.bias = c.right.bias + 4.5;
    const auto pair = contact_electron_current(validate(c), {Beta(1.0), 6.0, 0.5}, tight());
    CHECK(pair.left == 0.0);
    CHECK(pair.right == 0.0);
}

TEST_CASE("contact photon current vanishes") {
    CurrentOptions o = tight();
    CHECK(contact_photon_current(validate(generic()), {Beta(1.0), 1.0, 0.0}, o) == 0.0);
    o.debug_contact_photon = true;
    o.nph = 5;
    CHECK_NOTHROW(contact_photon_current(validate(generic()), {Beta(1.0), 1.0, 0.0}, o));
}

TEST_CASE("gauge invariance under a common energy shift") {
    const ModelConfig c = generic();
    const ThermalState t{Beta(1.5), 1.9, 0.6};
    CurrentOptions o = tight();
    o.nph = 8;
    const auto a = compute_currents(validate(c), t, o);
    ModelConfig s = c;
    const double shift = 0.37;
    s.left.bias += shift;
    s.right.bias += shift;
    s.dot.level_base += shift;
    const auto b = compute_currents(validate(s), ThermalState{t.beta, t.mu_left + shift, t.mu_right + shift}, o);
    CHECK(std::abs(a.j_total_left - b.j_total_left) < 1e-9);
    CHECK(std::abs(a.j_contact_left - b.j_contact_left) < 1e-9);
    CHECK(std::abs(a.j_photon_number - b.j_photon_number) < 1e-9);
}

TEST_CASE("photon weights times occupations decrease with photon number") {
    for (double beta : {0.5, 1.0, 4.0})
        for (double omega : {0.5, 2.0})
            for (double x = -5.0; x <= 5.0; x += 0.25) {
                const ThermalState t{Beta(beta), 0.0, 0.0};
                double prev = 2.0;
                for (int n = 0; n < 10; ++n) {
                    const double v = t.photon_weight(n, omega) * fermi_dirac(t.beta, x - n * omega);
                    CHECK(v < prev);
                    prev = v;
                }
            }
}

TEST_CASE("equal chemical potentials with time reversal emit light") {
    ModelConfig c = generic();
    c.dot.contact_phase = 0.0;
    const auto r = compute_currents(validate(c), {Beta(1.0), 1.2, 1.2}, tight());
    REQUIRE(r.j_photon_number_paired.has_value());
    CHECK(std::abs(*r.j_photon_number_paired - r.j_photon_number) < 1e-9);
    CHECK(r.j_photon_number >= -1e-12);
    CHECK(std::abs(*r.j_photon_left_direct - r.j_photon_left) < 1e-9);
    CHECK_NOTHROW(photon_current(validate(c), {Beta(1.0), 1.2, 1.2}, tight()));
}

TEST_CASE("light-absorbing scenario") {
    ScenarioParams p;
    p.g_ph = 0.0;
    const auto quiet = light_absorbing_scenario(p, tight());
    CHECK(quiet.j_photon_number == 0.0);
    CHECK(std::abs(quiet.j_photon_left) < 1e-15);

    p.g_ph = 0.2;
    const auto cfg = validate(light_absorbing_config(p));
    const auto r = compute_currents(cfg, light_absorbing_thermal(p), tight());
    CHECK(r.symmetry.case_S);
    CHECK(r.symmetry.time_reversible);
    CHECK(r.j_photon_number < 0.0);  // absorbing, as predicted
    // The photon-induced electron current flows the other way (into the left lead);
    // the scenario therefore reports its sign assertion as failed.
    CHECK(r.j_photon_left > 0.0);
    try {
        light_absorbing_scenario(p, tight());
        FAIL("expected ScenarioAssertionFailed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ScenarioAssertionFailed);
    }
    p.omega = 3.0;
    CHECK_THROWS_AS(light_absorbing_scenario(p), ConfigError);
}

TEST_CASE("JSON report fields") {
    CurrentOptions o;
    o.nph = 4;
    const auto r = compute_currents(validate(generic()), {Beta(2.0), 1.0, 0.0}, o);
    const auto j = nlohmann::json::parse(to_json(r));
    for (const char* key : {"j_contact_left", "j_photon_left", "j_total_left", "j_total_right", "j_photon_number",
                            "quad_error", "nph_used", "converged", "symmetry"})
        CHECK(j.contains(key));
    CHECK(j["nph_used"] == 4);
    CHECK(j["quad_error"].contains("j_total_left"));
    CHECK(j["symmetry"]["case_E"] == false);
    CHECK(to_json(r) == to_json(compute_currents(validate(generic()), {Beta(2.0), 1.0, 0.0}, o)));
}

TEST_CASE("strict mode raises on an unconverged cutoff") {
    CurrentOptions o;
    o.nph = 1;
    o.strict = true;
    ModelConfig c = generic();
    c.g_ph = 0.6;
    try {
        compute_currents(validate(c), {Beta(0.5), 3.0, 0.0}, o);
        FAIL("expected CutoffNotConverged");
    } catch (const ConvergenceError& e) {
        CHECK(e.code() == ErrorCode::CutoffNotConverged);
    }
}
