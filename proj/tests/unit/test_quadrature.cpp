#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcl/error.hpp"
#include "jcl/quadrature.hpp"

using namespace jcl;

TEST_CASE("square-root endpoints integrate to full precision") {
    quad::Options o;
    o.rel_tol = 1e-12;
    const auto r = quad::integrate([](double x, std::span<double> out) { out[0] = std::sqrt(x); }, 1, {0.0, 1.0}, o);
    CHECK(std::abs(r.value[0] - 2.0 / 3.0) < 1e-13);

    const auto semi = quad::integrate([](double x, std::span<double> out) { out[0] = std::sqrt(4.0 - x * x); }, 1,
                                      {-2.0, 0.3, 2.0}, o);
    CHECK(std::abs(semi.value[0] - 2.0 * std::numbers::pi) < 1e-12);
}

TEST_CASE("vector integrand and breakpoints") {
    quad::Options o;
    o.rel_tol = 1e-11;
    const auto r = quad::integrate(
        [](double x, std::span<double> out) {
            out[0] = 1.0;
            out[1] = x < 1.0 ? 0.0 : 1.0;  // step at a breakpoint
            out[2] = 1.0 / (1e-4 + (x - 1.7) * (x - 1.7));  // narrow Lorentzian
        },
        3, {0.0, 1.0, 3.0}, o);
    CHECK(r.value[0] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(r.value[1] == doctest::Approx(2.0).epsilon(1e-13));
    const double lorentz = 100.0 * (std::atan(1.3 / 1e-2) + std::atan(1.7 / 1e-2));
    CHECK(r.value[2] == doctest::Approx(lorentz).epsilon(1e-10));
    for (double e : r.error) CHECK(e >= 0.0);
}

TEST_CASE("empty domain") {
    const auto r = quad::integrate([](double, std::span<double> out) { out[0] = 1.0; }, 1, {2.0}, {});
    CHECK(r.value[0] == 0.0);
}

TEST_CASE("result is independent of the thread count") {
    auto f = [](double x, std::span<double> out) {
        out[0] = std::sin(30 * x) / (1e-3 + x * x);
        out[1] = std::exp(-x) * std::sqrt(x);
    };
    quad::Options one;
    one.threads = 1;
    one.rel_tol = 1e-10;
    quad::Options four = one;
    four.threads = 4;
    const auto a = quad::integrate(f, 2, {0.0, 0.5, 4.0}, one);
    const auto b = quad::integrate(f, 2, {0.0, 0.5, 4.0}, four);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
}

TEST_CASE("non-convergence carries the achieved error") {
    quad::Options o;
    o.rel_tol = 1e-15;
    o.abs_tol = 0.0;
    o.max_intervals = 40;
    try {
        quad::integrate([](double x, std::span<double> out) { out[0] = std::sin(1.0 / (x + 1e-3)); }, 1, {0.0, 1.0}, o);
        FAIL("expected QuadratureNotConverged");
    } catch (const ConvergenceError& e) {
        CHECK(e.code() == ErrorCode::QuadratureNotConverged);
        CHECK(e.achieved() > 0.0);
    }
}
