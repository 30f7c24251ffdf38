#include "jcl/dot.hpp"

#include <algorithm>
#include <cmath>

namespace jcl::dot {

DotPhotonHamiltonian build_dot_hamiltonian(const ValidatedConfig& config, Basis basis) {
    const ModelConfig& c = config.config();
    const int n_ph = config.cutoff();
    const int dim = 2 * n_ph;

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < n_ph; ++n) {
        h(index(0, n), index(0, n)) = c.dot.level_base + n * c.photon.omega;
        h(index(1, n), index(1, n)) = c.dot.level_base + c.dot.spacing + n * c.photon.omega;
    }
    // <e1 (x) Y_{n-1}| V |e0 (x) Y_n> = g sqrt(n)
    for (int n = 1; n < n_ph; ++n) {
        const double v = c.g_ph * std::sqrt(static_cast<double>(n));
        h(index(1, n - 1), index(0, n)) = v;
        h(index(0, n), index(1, n - 1)) = v;
    }

    if (basis == Basis::contact) {
        const Eigen::MatrixXcd u = contact_rotation(config);
        h = (u.adjoint() * h * u).eval();
    }
    return {std::move(h), basis};
}

Eigen::MatrixXcd contact_rotation(const ValidatedConfig& config) {
    const int n_ph = config.cutoff();
    const Eigen::Matrix2cd u2 = config.basis().unitary();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n_ph, 2 * n_ph);
    for (int n = 0; n < n_ph; ++n) u.block<2, 2>(2 * n, 2 * n) = u2;
    return u;
}

Eigen::MatrixXcd excitation_number(int cutoff) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * cutoff, 2 * cutoff);
    for (int n = 0; n < cutoff; ++n) {
        m(index(0, n), index(0, n)) = n;
        m(index(1, n), index(1, n)) = n + 1;
    }
    return m;
}

std::vector<double> jc_spectrum_closed_form(const ValidatedConfig& config, int n_max) {
    const ModelConfig& c = config.config();
    const double eps = c.dot.spacing;
    const double omega = c.photon.omega;
    const double detuning = 0.5 * (eps - omega);

    std::vector<double> out;
    out.reserve(2 * std::max(n_max, 0) + 1);
    out.push_back(c.dot.level_base);
    for (int n = 1; n <= n_max; ++n) {
        const double root = std::sqrt(detuning * detuning + c.g_ph * c.g_ph * n);
        const double centre = c.dot.level_base + n * omega + detuning;
        out.push_back(centre - root);
        out.push_back(centre + root);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace jcl::dot
