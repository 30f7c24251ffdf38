#include "jcl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "jcl/error.hpp"

namespace jcl::quad {

namespace {

// Kronrod abscissae (positive half) and weights; odd-indexed nodes are Gauss points.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr int kBatch = 16;

struct Interval {
    double t0, t1;  // in the smoothstep variable of its panel
    int panel;
    std::vector<double> value, error;
    double norm_error = 0.0;
};

struct Panel {
    double a, b;
};

void kronrod(const Integrand& f, int dim, const Panel& p, Interval& iv) {
    const double centre = 0.5 * (iv.t0 + iv.t1);
    const double half = 0.5 * (iv.t1 - iv.t0);
    const double width = p.b - p.a;
    std::vector<double> k(dim, 0.0), g(dim, 0.0), buf(dim);

    auto eval = [&](double t, double wk, double wgauss) {
        // Map from the nearer panel end so deep refinement keeps resolution.
        const double s = std::min(t, 1.0 - t);
        const double shift = width * s * s * (3.0 - 2.0 * s);
        const double x = t <= 0.5 ? p.a + shift : p.b - shift;
        // Nodes that round onto a breakpoint (possibly a band edge) carry a
        // vanishing Jacobian; drop them instead of evaluating there.
        if (!(x > p.a && x < p.b)) return;
        const double jac = 6.0 * width * t * (1.0 - t);
        std::fill(buf.begin(), buf.end(), 0.0);
        f(x, buf);
        for (int i = 0; i < dim; ++i) {
            const double v = buf[i] * jac;
            k[i] += wk * v;
            g[i] += wgauss * v;
        }
    };
    for (int j = 0; j < 7; ++j) {
        const double wgauss = (j % 2 == 1) ? wg[j / 2] : 0.0;
        eval(centre - half * xgk[j], wgk[j], wgauss);
        eval(centre + half * xgk[j], wgk[j], wgauss);
    }
    eval(centre, wgk[7], wg[3]);

    iv.value.assign(dim, 0.0);
    iv.error.assign(dim, 0.0);
    iv.norm_error = 0.0;
    for (int i = 0; i < dim; ++i) {
        iv.value[i] = half * k[i];
        iv.error[i] = std::abs(half * (k[i] - g[i]));
        iv.norm_error = std::max(iv.norm_error, iv.error[i]);
    }
}

// Runs kronrod() on every interval in the batch, optionally on worker threads.
void evaluate_batch(const Integrand& f, int dim, const std::vector<Panel>& panels,
                    std::vector<Interval*>& batch, int threads) {
    const int count = static_cast<int>(batch.size());
    const int workers = std::min(threads, count);
    if (workers <= 1) {
        for (Interval* iv : batch) kronrod(f, dim, panels[iv->panel], *iv);
        return;
    }
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < count; i += workers) kronrod(f, dim, panels[batch[i]->panel], *batch[i]);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : failures)
        if (e) std::rethrow_exception(e);
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("JCL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Result integrate(const Integrand& f, int dim, const std::vector<double>& breakpoints, const Options& options) {
    Result result;
    result.value.assign(dim, 0.0);
    result.error.assign(dim, 0.0);

    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i + 1] > breakpoints[i]) panels.push_back({breakpoints[i], breakpoints[i + 1]});
    if (panels.empty()) return result;

    const int threads = resolve_threads(options.threads);
    std::vector<Interval> intervals;
    intervals.reserve(panels.size() * 4);
    for (int p = 0; p < static_cast<int>(panels.size()); ++p) intervals.push_back({0.0, 1.0, p, {}, {}, 0.0});
    {
        std::vector<Interval*> batch;
        for (auto& iv : intervals) batch.push_back(&iv);
        evaluate_batch(f, dim, panels, batch, threads);
        result.evaluations += 15 * static_cast<long>(batch.size());
    }

    auto totals = [&](std::vector<double>& value, std::vector<double>& error) {
        std::fill(value.begin(), value.end(), 0.0);
        std::fill(error.begin(), error.end(), 0.0);
        for (const auto& iv : intervals)
            for (int i = 0; i < dim; ++i) {
                value[i] += iv.value[i];
                error[i] += iv.error[i];
            }
    };
    auto tolerance = [&](const std::vector<double>& value) {
        double scale = 0.0;
        for (double v : value) scale += std::abs(v);
        return std::max(options.abs_tol, options.rel_tol * scale);
    };

    for (;;) {
        totals(result.value, result.error);
        const double tol = tolerance(result.value);
        const double worst = *std::max_element(result.error.begin(), result.error.end());
        if (worst <= tol) break;
        if (static_cast<int>(intervals.size()) + kBatch > options.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature hit " << intervals.size() << " intervals with error " << worst
                << " > tolerance " << tol;
            throw ConvergenceError(ErrorCode::QuadratureNotConverged, worst, msg.str());
        }

        // Bisect the kBatch intervals with the largest error (ties broken by position).
        std::vector<int> order(intervals.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        const int take = std::min<int>(kBatch, static_cast<int>(order.size()));
        std::partial_sort(order.begin(), order.begin() + take, order.end(), [&](int a, int b) {
            if (intervals[a].norm_error != intervals[b].norm_error)
                return intervals[a].norm_error > intervals[b].norm_error;
            return a < b;
        });
        std::vector<int> chosen(order.begin(), order.begin() + take);
        // Skip intervals whose error is already negligible against the worst one.
        const double floor = intervals[chosen.front()].norm_error * 1e-3;
        chosen.erase(std::remove_if(chosen.begin(), chosen.end(),
                                    [&](int i) { return intervals[i].norm_error < floor; }),
                     chosen.end());
        std::sort(chosen.begin(), chosen.end());

        const std::size_t base = intervals.size();
        for (int idx : chosen) {
            // push_back may reallocate, so no reference into intervals survives it.
            const double t1 = intervals[idx].t1;
            const double mid = 0.5 * (intervals[idx].t0 + t1);
            const int panel = intervals[idx].panel;
            intervals[idx].t1 = mid;
            intervals.push_back({mid, t1, panel, {}, {}, 0.0});
        }
        std::vector<Interval*> batch;
        for (int idx : chosen) batch.push_back(&intervals[idx]);
        for (std::size_t i = base; i < intervals.size(); ++i) batch.push_back(&intervals[i]);
        evaluate_batch(f, dim, panels, batch, threads);
        result.evaluations += 15 * static_cast<long>(batch.size());
    }

    // Final sum in position order for reproducibility.
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        return a.panel != b.panel ? a.panel < b.panel : a.t0 < b.t0;
    });
    totals(result.value, result.error);
    return result;
}

}  // namespace jcl::quad
