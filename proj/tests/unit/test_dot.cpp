#include <doctest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "common.hpp"
#include "jcl/dot.hpp"

using namespace jcl;

namespace {

ValidatedConfig jc_config(double eps, double omega, double g, int cutoff, double level_base = 0.0) {
    ModelConfig c;
    c.dot.level_base = level_base;
    c.dot.spacing = eps;
    c.photon.omega = omega;
    c.photon.cutoff = cutoff;
    c.g_ph = g;
    c.dot.contact_angle = 0.4;
    c.dot.contact_phase = 0.9;
    return validate(c);
}

std::vector<double> numeric_spectrum(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("uncoupled dot is diagonal") {
    const auto cfg = jc_config(1.3, 0.7, 0.0, 5, 0.25);
    const auto h = dot::build_dot_hamiltonian(cfg, dot::Basis::eigen);
    CHECK(h.dim() == 10);
    for (int n = 0; n < 5; ++n) {
        CHECK(h.matrix(2 * n, 2 * n).real() == doctest::Approx(0.25 + n * 0.7));
        CHECK(h.matrix(2 * n + 1, 2 * n + 1).real() == doctest::Approx(0.25 + 1.3 + n * 0.7));
    }
    const Eigen::MatrixXcd off = h.matrix - Eigen::MatrixXcd(h.matrix.diagonal().asDiagonal());
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Jaynes-Cummings block for one photon") {
    const auto cfg = jc_config(1.0, 1.0, 0.1, 2);
    const auto h = dot::build_dot_hamiltonian(cfg, dot::Basis::eigen).matrix;
    // basis e1 (x) Y0 (index 1) and e0 (x) Y1 (index 2)
    CHECK(h(1, 1).real() == doctest::Approx(1.0));
    CHECK(h(2, 2).real() == doctest::Approx(1.0));
    CHECK(h(1, 2).real() == doctest::Approx(0.1));
    CHECK(h(2, 1).real() == doctest::Approx(0.1));
    const auto closed = dot::jc_spectrum_closed_form(cfg, 1);
    REQUIRE(closed.size() == 3);
    CHECK(closed[0] == doctest::Approx(0.0));
    CHECK(closed[1] == doctest::Approx(0.9));
    CHECK(closed[2] == doctest::Approx(1.1));
}

TEST_CASE("closed-form spectrum limits") {
    const auto resonant = dot::jc_spectrum_closed_form(jc_config(2.0, 2.0, 0.3, 4), 3);
    for (int n = 1; n <= 3; ++n) {
        CHECK(std::count_if(resonant.begin(), resonant.end(),
                            [&](double e) { return std::abs(e - (n * 2.0 - 0.3 * std::sqrt(n))) < 1e-14; }) == 1);
        CHECK(std::count_if(resonant.begin(), resonant.end(),
                            [&](double e) { return std::abs(e - (n * 2.0 + 0.3 * std::sqrt(n))) < 1e-14; }) == 1);
    }
    const auto free = dot::jc_spectrum_closed_form(jc_config(1.7, 0.6, 0.0, 4), 3);
    for (int n = 1; n <= 3; ++n) {
        CHECK(std::count_if(free.begin(), free.end(), [&](double e) { return std::abs(e - n * 0.6) < 1e-14; }) == 1);
        CHECK(std::count_if(free.begin(), free.end(),
                            [&](double e) { return std::abs(e - ((n - 1) * 0.6 + 1.7)) < 1e-14; }) == 1);
    }
}

TEST_CASE("numeric spectrum matches the closed form below the cutoff") {
    testing::Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_ph = rng.integer(1, 12);
        const double eps = rng.uniform(0.2, 3), omega = rng.uniform(0.2, 3), g = rng.uniform(0, 1), base = rng.uniform(-1, 1);
        const auto cfg = jc_config(eps, omega, g, n_ph, base);
        auto expected = dot::jc_spectrum_closed_form(cfg, n_ph - 1);
        // The uncoupled top state e1 (x) Y_{N-1} completes the truncated spectrum.
        expected.push_back(base + eps + (n_ph - 1) * omega);
        std::sort(expected.begin(), expected.end());
        for (auto basis : {dot::Basis::eigen, dot::Basis::contact}) {
            const auto got = numeric_spectrum(dot::build_dot_hamiltonian(cfg, basis).matrix);
            REQUIRE(got.size() == expected.size());
            for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-12);
        }
    }
}

TEST_CASE("Hermiticity, basis change and excitation number") {
    testing::Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto cfg = validate(testing::random_config(rng, rng.integer(1, 8)));
        const auto he = dot::build_dot_hamiltonian(cfg, dot::Basis::eigen).matrix;
        const auto hc = dot::build_dot_hamiltonian(cfg, dot::Basis::contact);
        CHECK(hc.basis == dot::Basis::contact);
        CHECK((he - he.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((hc.matrix - hc.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        const auto u = dot::contact_rotation(cfg);
        CHECK((hc.matrix - u.adjoint() * he * u).cwiseAbs().maxCoeff() < 1e-14);
        const auto nj = dot::excitation_number(cfg.cutoff());
        CHECK((he * nj - nj * he).cwiseAbs().maxCoeff() < 1e-13);
    }
}
