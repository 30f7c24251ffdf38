#include "jcl/lead.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jcl/error.hpp"

namespace jcl::lead {

std::optional<double> momentum(const LeadParams& lead, int n, double omega, double lambda) noexcept {
    const double x = channel_onsite(lead, n, omega) - lambda;
    if (!(std::abs(x) < 2.0)) return std::nullopt;
    return std::acos(0.5 * x);
}

double eigenfunction(const LeadParams& lead, double lambda_rel, int x) {
    const double c = 0.5 * (2.0 + lead.bias - lambda_rel);
    if (!(std::abs(c) < 1.0)) {
        std::ostringstream msg;
        msg << "lambda_rel = " << lambda_rel << " outside (" << lead.band_low() << ", " << lead.band_high() << ")";
        throw Error(ErrorCode::OutOfBand, msg.str());
    }
    const double prefactor = 1.0 / (std::sqrt(std::numbers::pi) * std::pow(1.0 - c * c, 0.25));
    return prefactor * std::sin(std::acos(c) * x);
}

std::complex<double> surface_gf(double onsite, std::complex<double> z) {
    using namespace std::complex_literals;
    const std::complex<double> x = z - onsite;
    if (z.imag() == 0.0) {
        const double xr = x.real();
        if (std::abs(xr) == 2.0) {
            std::ostringstream msg;
            msg << "energy " << z.real() << " is a band edge of the chain with onsite " << onsite;
            throw Error(ErrorCode::BandEdgeSingularity, msg.str());
        }
        if (std::abs(xr) < 2.0) return 0.5 * (xr - 1i * std::sqrt(4.0 - xr * xr));
        // 2 / (x + sign(x) sqrt(x^2 - 4)) is the small root without cancellation.
        return 2.0 / (xr + std::copysign(std::sqrt(xr * xr - 4.0), xr));
    }
    const std::complex<double> s = std::sqrt(x * x - 4.0);
    const std::complex<double> big = std::abs(x + s) >= std::abs(x - s) ? x + s : x - s;
    return 2.0 / big;
}

double gamma(const LeadParams& lead, int n, double omega, double lambda, double g_el) noexcept {
    const double x = lambda - channel_onsite(lead, n, omega);
    if (!(std::abs(x) < 2.0)) return 0.0;
    return g_el * g_el * std::sqrt(4.0 - x * x);
}

}  // namespace jcl::lead
