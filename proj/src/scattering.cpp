#include "jcl/scattering.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/LU>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "jcl/error.hpp"
#include "jcl/lead.hpp"

namespace jcl::scattering {

namespace {

using cd = std::complex<double>;
constexpr double kMinRcond = 1e-14;

const Eigen::Vector2cd& contact_vector(const ValidatedConfig& config, Side s) {
    return config.basis().for_lead(s);
}

[[noreturn]] void throw_singular(double lambda, double rcond) {
    std::ostringstream msg;
    msg << "lambda - H_D - Sigma is singular at lambda = " << lambda << " (rcond = " << rcond << ")";
    throw Error(ErrorCode::SingularLinearSystem, msg.str());
}

}  // namespace

int ChannelSet::index_of(const Channel& c) const noexcept {
    for (int i = 0; i < size(); ++i)
        if (channels[i] == c) return i;
    return -1;
}

double SMatrix::unitarity_defect() const {
    const int k = static_cast<int>(entries.rows());
    if (k == 0) return 0.0;
    return (entries.adjoint() * entries - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
}

int CrossSectionTable::index_of(const Channel& c) const noexcept {
    for (int i = 0; i < static_cast<int>(channels.size()); ++i)
        if (channels[i] == c) return i;
    return -1;
}

double CrossSectionTable::at(const Channel& out, const Channel& in) const noexcept {
    const int i = index_of(out);
    const int j = index_of(in);
    return (i < 0 || j < 0) ? 0.0 : sigma(i, j);
}

double CrossSectionTable::sum_rule_defect() const {
    if (sigma.size() == 0) return 0.0;
    return (sigma.colwise().sum().transpose() - sigma.rowwise().sum()).cwiseAbs().maxCoeff();
}

ChannelSet open_channels(const ValidatedConfig& config, double lambda) {
    ChannelSet set;
    set.lambda = lambda;
    for (int n = 0; n < config.cutoff(); ++n) {
        for (Side s : {Side::left, Side::right}) {
            if (lead::momentum(config.config().lead(s), n, config.omega(), lambda))
                set.channels.push_back({s, n});
        }
    }
    return set;
}

Eigen::MatrixXcd self_energy(const ValidatedConfig& config, double lambda, dot::Basis basis) {
    const ModelConfig& c = config.config();
    const int n_ph = config.cutoff();
    const double g2 = c.g_el * c.g_el;
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(2 * n_ph, 2 * n_ph);
    if (g2 == 0.0) return sigma;
    for (int n = 0; n < n_ph; ++n) {
        for (Side s : {Side::left, Side::right}) {
            const cd g = g2 * lead::surface_gf(c.lead(s), n, c.photon.omega, cd(lambda, 0.0));
            const Eigen::Vector2cd& d = contact_vector(config, s);
            sigma.block<2, 2>(2 * n, 2 * n) += g * d * d.adjoint();
        }
    }
    if (basis == dot::Basis::contact) {
        const Eigen::MatrixXcd u = dot::contact_rotation(config);
        sigma = (u.adjoint() * sigma * u).eval();
    }
    return sigma;
}

Scatterer::Scatterer(ValidatedConfig config) : config_(std::move(config)) {
    const ModelConfig& c = config_.config();
    const int dim = 2 * config_.cutoff();
    h_diag_.resize(dim);
    h_off_ = Eigen::VectorXd::Zero(dim > 0 ? dim - 1 : 0);
    for (int n = 0; n < config_.cutoff(); ++n) {
        h_diag_(dot::index(0, n)) = c.dot.level_base + n * c.photon.omega;
        h_diag_(dot::index(1, n)) = c.dot.level_base + c.dot.spacing + n * c.photon.omega;
        if (n + 1 < config_.cutoff())
            h_off_(dot::index(1, n)) = c.g_ph * std::sqrt(static_cast<double>(n + 1));
    }
}

SMatrix Scatterer::evaluate(double lambda) const {
    const ModelConfig& c = config_.config();
    const double omega = c.photon.omega;
    const int n_ph = config_.cutoff();
    const int dim = 2 * n_ph;

    SMatrix out;
    out.lambda = lambda;
    out.channel_set = open_channels(config_, lambda);
    const int k = out.channel_set.size();
    out.entries = Eigen::MatrixXcd::Identity(k, k);
    if (k == 0 || c.g_el == 0.0) return out;

    const double g2 = c.g_el * c.g_el;
    const Eigen::Vector2cd& d0 = config_.basis().d0;
    const Eigen::Vector2cd& d1 = config_.basis().d1;

    std::vector<cd> dl(dim - 1), d(dim), du(dim - 1), du2(dim > 2 ? dim - 2 : 1);
    for (int n = 0; n < n_ph; ++n) {
        const cd gl = g2 * lead::surface_gf(c.left, n, omega, cd(lambda, 0.0));
        const cd gr = g2 * lead::surface_gf(c.right, n, omega, cd(lambda, 0.0));
        const int i0 = dot::index(0, n);
        const int i1 = dot::index(1, n);
        d[i0] = lambda - h_diag_(i0) - (gl * std::norm(d0(0)) + gr * std::norm(d1(0)));
        d[i1] = lambda - h_diag_(i1) - (gl * std::norm(d0(1)) + gr * std::norm(d1(1)));
        du[i0] = -(gl * d0(0) * std::conj(d0(1)) + gr * d1(0) * std::conj(d1(1)));
        dl[i0] = -(gl * d0(1) * std::conj(d0(0)) + gr * d1(1) * std::conj(d1(0)));
        if (n + 1 < n_ph) {
            du[i1] = -h_off_(i1);
            dl[i1] = -h_off_(i1);
        }
    }

    double anorm = 0.0;
    for (int i = 0; i < dim; ++i) {
        double col = std::abs(d[i]);
        if (i + 1 < dim) col += std::abs(dl[i]);
        if (i > 0) col += std::abs(du[i - 1]);
        anorm = std::max(anorm, col);
    }

    std::vector<lapack_int> ipiv(dim);
    lapack_int info = LAPACKE_zgttrf(dim, dl.data(), d.data(), du.data(), du2.data(), ipiv.data());
    if (info > 0) throw_singular(lambda, 0.0);
    double rcond = 0.0;
    LAPACKE_zgtcon('1', dim, dl.data(), d.data(), du.data(), du2.data(), ipiv.data(), anorm, &rcond);
    if (!(rcond >= kMinRcond)) throw_singular(lambda, rcond);

    // Right-hand sides d_c for every open channel, column-major.
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, k);
    std::vector<double> sqrt_gamma(k);
    for (int j = 0; j < k; ++j) {
        const Channel& ch = out.channel_set.channels[j];
        const Eigen::Vector2cd& v = ch.lead == Side::left ? d0 : d1;
        x(dot::index(0, ch.n), j) = v(0);
        x(dot::index(1, ch.n), j) = v(1);
        sqrt_gamma[j] = std::sqrt(lead::gamma(c.lead(ch.lead), ch.n, omega, lambda, c.g_el));
    }
    info = LAPACKE_zgttrs(LAPACK_COL_MAJOR, 'N', dim, k, dl.data(), d.data(), du.data(), du2.data(),
                          ipiv.data(), x.data(), dim);
    if (info != 0) throw_singular(lambda, rcond);

    const cd minus_i(0.0, -1.0);
    for (int i = 0; i < k; ++i) {
        const Channel& ci = out.channel_set.channels[i];
        const Eigen::Vector2cd& v = ci.lead == Side::left ? d0 : d1;
        for (int j = 0; j < k; ++j) {
            const cd amp = std::conj(v(0)) * x(dot::index(0, ci.n), j) + std::conj(v(1)) * x(dot::index(1, ci.n), j);
            out.entries(i, j) += minus_i * sqrt_gamma[i] * sqrt_gamma[j] * amp;
        }
    }
    return out;
}

SMatrix smatrix(const ValidatedConfig& config, double lambda) { return Scatterer(config).evaluate(lambda); }

SMatrix smatrix_dense(const ValidatedConfig& config, double lambda, dot::Basis basis) {
    const ModelConfig& c = config.config();
    SMatrix out;
    out.lambda = lambda;
    out.channel_set = open_channels(config, lambda);
    const int k = out.channel_set.size();
    out.entries = Eigen::MatrixXcd::Identity(k, k);
    if (k == 0 || c.g_el == 0.0) return out;

    const int dim = 2 * config.cutoff();
    const Eigen::MatrixXcd a = lambda * Eigen::MatrixXcd::Identity(dim, dim) -
                               dot::build_dot_hamiltonian(config, basis).matrix - self_energy(config, lambda, basis);
    Eigen::MatrixXcd dvec = Eigen::MatrixXcd::Zero(dim, k);
    Eigen::VectorXd sqrt_gamma(k);
    for (int j = 0; j < k; ++j) {
        const Channel& ch = out.channel_set.channels[j];
        dvec.block<2, 1>(dot::index(0, ch.n), j) = contact_vector(config, ch.lead);
        sqrt_gamma(j) = std::sqrt(lead::gamma(c.lead(ch.lead), ch.n, c.photon.omega, lambda, c.g_el));
    }
    if (basis == dot::Basis::contact) dvec = (dot::contact_rotation(config).adjoint() * dvec).eval();

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond >= kMinRcond)) throw_singular(lambda, rcond);
    const Eigen::MatrixXcd g = dvec.adjoint() * lu.solve(dvec);
    out.entries -= cd(0.0, 1.0) * (sqrt_gamma.asDiagonal() * g * sqrt_gamma.asDiagonal());
    return out;
}

SMatrix contact_smatrix(const ValidatedConfig& config, double lambda_rel) {
    return smatrix(config.with_cutoff(1).with_photon_coupling(0.0), lambda_rel);
}

CrossSectionTable cross_sections(const SMatrix& s) {
    CrossSectionTable t;
    t.lambda = s.lambda;
    t.channels = s.channel_set.channels;
    const int k = s.channel_set.size();
    t.sigma = (s.entries - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs2();
    return t;
}

}  // namespace jcl::scattering
