#include "ckpt/optimize.hpp"

#include <chrono>
#include <cmath>

namespace ckpt {

namespace {

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

bool has_coincident(std::span<const double> t) {
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return true;
    return false;
}

// Least lambda any feasible algorithm with this gamma can have (insertion
// intervals alone force t_{i-1} >= (1 - lambda/(k+1)) t_i over n steps).
double lambda_floor(int k, double gamma, int n) {
    return (k + 1) * (1.0 - std::pow(gamma, -1.0 / n));
}

}  // namespace

cyclic_algorithm optimization_result::to_cyclic() const {
    cyclic_algorithm c;
    c.k = k;
    c.n = n;
    c.pattern = pattern;
    c.positions = positions;
    c.gamma = gamma;
    return c;
}

optimization_result optimize_lambda(int k, std::span<const int> pattern, double gamma,
                                    double eps, lambda_search_options opt) {
    if (!(eps > 0.0)) throw validation_error("eps must be positive", 0);
    stopwatch timer;

    optimization_result res;
    res.k = k;
    res.n = static_cast<int>(pattern.size());
    res.pattern.assign(pattern.begin(), pattern.end());
    res.gamma = gamma;

    auto probe = [&](double lambda) {
        const lp_problem lp = build_lp(k, pattern, gamma, lambda);
        res.ordering_constraints = lp.ordering_count();
        res.scaling_constraints = lp.scaling_count();
        res.discrepancy_constraints = lp.discrepancy_count();
        auto fr = solve_feasibility(lp, opt.method);
        ++res.feasibility_solves;
        res.solver_iterations += fr.iterations;
        if (fr.status == solve_status::error)
            throw std::runtime_error("feasibility solver failed: " + fr.message);
        return fr;
    };

    double lo = std::max(opt.lo, lambda_floor(k, gamma, res.n) - eps);
    lo = std::max(lo, 1.0 - eps);
    double hi = std::min(opt.hi, static_cast<double>(k + 1));
    if (hi < lo) {
        res.feasible = false;
        res.wall_ms = timer.ms();
        return res;
    }

    auto top = probe(hi);
    if (top.status != solve_status::feasible) {
        res.feasible = false;
        res.wall_ms = timer.ms();
        return res;
    }
    std::vector<double> best_pos = std::move(top.positions);
    while (hi - lo > eps) {
        const double mid = 0.5 * (lo + hi);
        auto fr = probe(mid);
        if (fr.status == solve_status::feasible) {
            hi = mid;
            best_pos = std::move(fr.positions);
        } else {
            lo = mid;
        }
    }

    res.feasible = true;
    res.lambda = hi;
    res.positions = std::move(best_pos);
    res.coincident = has_coincident(res.positions);
    res.wall_ms = timer.ms();

    if (!opt.defer_validation) {
        const cyclic_algorithm c = res.to_cyclic();
        c.validate();
        const double perf = perf_cyclic(c);
        if (perf > res.lambda + 1e-6)
            throw std::runtime_error("optimizer result failed re-validation");
    }
    return res;
}

optimization_result optimize_gamma(int k, std::span<const int> pattern, double gamma_step,
                                   double eps, gamma_scan_options opt) {
    if (!(gamma_step > 0.0)) throw validation_error("gamma step must be positive", 0);
    const int n = static_cast<int>(pattern.size());
    stopwatch timer;

    const double lo = opt.lo > 0.0 ? opt.lo : 1.0 + gamma_step;
    const double hi = opt.hi > 0.0 ? opt.hi : gamma_upper_bound(k, opt.lambda_cap, n);

    optimization_result best;
    best.k = k;
    best.n = n;
    best.pattern.assign(pattern.begin(), pattern.end());
    best.feasible = false;

    auto consider = [&](double gamma) {
        if (!(gamma > 1.0)) return;
        ++best.gammas_scanned;
        const double cap = (opt.running_cap && best.feasible) ? best.lambda : opt.lambda_cap;
        if (lambda_floor(k, gamma, n) > cap) {
            ++best.gammas_pruned;
            return;
        }
        lambda_search_options lopt;
        lopt.hi = cap;
        lopt.method = opt.method;
        lopt.defer_validation = true;
        auto r = optimize_lambda(k, pattern, gamma, eps, lopt);
        best.feasibility_solves += r.feasibility_solves;
        best.solver_iterations += r.solver_iterations;
        if (r.feasible && (!best.feasible || r.lambda < best.lambda)) {
            const long scanned = best.gammas_scanned, pruned = best.gammas_pruned;
            const long solves = best.feasibility_solves, iters = best.solver_iterations;
            best = std::move(r);
            best.gammas_scanned = scanned;
            best.gammas_pruned = pruned;
            best.feasibility_solves = solves;
            best.solver_iterations = iters;
        }
    };

    long steps = 0;
    for (double g = lo; g <= hi + 1e-12; g = lo + (++steps) * gamma_step) consider(g);
    if (best.gammas_scanned == 0) consider(hi);  // step overshot the range

    if (opt.refine && best.feasible) {
        const double center = best.gamma;
        const double fine = gamma_step / 10.0;
        for (int j = -10; j <= 10; ++j) {
            if (j == 0) continue;
            const double g = center + j * fine;
            if (g > 1.0 && g <= hi + 1e-12) consider(g);
        }
    }

    best.wall_ms = timer.ms();
    if (best.feasible) {
        const cyclic_algorithm c = best.to_cyclic();
        c.validate();
        const double perf = perf_cyclic(c);
        if (perf > best.lambda + 1e-6)
            throw std::runtime_error("optimizer result failed re-validation");
    }
    return best;
}

}  // namespace ckpt
