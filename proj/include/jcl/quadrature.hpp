// quadrature.hpp: vector-valued adaptive Gauss-Kronrod (7/15) integration.
//
// The domain is given as a sorted list of breakpoints. Each panel is mapped
// through the smoothstep x = a + (b - a)(3t^2 - 2t^3), which turns square-root
// endpoint behaviour (band edges) into an analytic integrand in t. Intervals
// with the largest error are bisected in fixed-size batches, and panel
// contributions are summed in position order, so the result does not depend
// on the number of worker threads.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace jcl::quad {

struct Options {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_intervals = 200000;
    int threads = 0;  // 0: JCL_THREADS or hardware concurrency
};

struct Result {
    std::vector<double> value;
    std::vector<double> error;
    long evaluations = 0;
};

// out has size dim and is zero on entry.
using Integrand = std::function<void(double x, std::span<double> out)>;

// Converged when every component error is <= max(abs_tol, rel_tol * sum_k |I_k|).
// Throws ConvergenceError(QuadratureNotConverged) when max_intervals is hit.
Result integrate(const Integrand& f, int dim, const std::vector<double>& breakpoints, const Options& options);

// Thread count from an explicit request, then JCL_THREADS, then the hardware.
int resolve_threads(int requested);

}  // namespace jcl::quad
