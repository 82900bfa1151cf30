#pragma once

#include "ckpt/lp.hpp"

namespace ckpt {

struct optimization_result {
    int k = 0;
    int n = 0;
    std::vector<int> pattern;
    double gamma = 0.0;
    double lambda = 0.0;  // lambda* when feasible
    bool feasible = false;
    std::vector<double> positions;  // t_1..t_{k+n}
    bool coincident = false;        // adjacent equal positions in the solution

    long feasibility_solves = 0;
    long solver_iterations = 0;  // pivots + sweeps, accumulated
    long gammas_scanned = 0;
    long gammas_pruned = 0;  // skipped via the scaling-factor bound / cap
    double wall_ms = 0.0;    // console-only; never serialized

    size_t ordering_constraints = 0;
    size_t scaling_constraints = 0;
    size_t discrepancy_constraints = 0;

    cyclic_algorithm to_cyclic() const;
};

struct lambda_search_options {
    double lo = 1.0;
    double hi = 2.0;
    lp_method method = lp_method::automatic_;
    // When set, skip the verification that perf_cyclic(result) <= lambda + 1e-6
    // (used by scans that re-verify the final winner).
    bool defer_validation = false;
};

/// Binary search for the least feasible lambda in [lo, hi] for the fixed
/// (pattern, gamma); infeasible at hi means no result. Uses one endpoint
/// solve plus ceil(log2((hi-lo)/eps)) bisection solves.
optimization_result optimize_lambda(int k, std::span<const int> pattern, double gamma,
                                    double eps, lambda_search_options opt = {});

struct gamma_scan_options {
    double lo = 0.0;  // 0 => 1 + step
    double hi = 0.0;  // 0 => gamma_upper_bound(k, lambda_cap, n)
    double lambda_cap = 2.0;
    bool refine = true;  // one pass at step/10 around the best gamma
    bool running_cap = true;  // shrink the cap to the best lambda found so far
    lp_method method = lp_method::automatic_;
};

/// Linear scan over gamma with per-gamma lambda optimization; returns the
/// best result (ties keep the smallest gamma). Evaluates at least one
/// candidate even when the step overshoots the whole range.
optimization_result optimize_gamma(int k, std::span<const int> pattern, double gamma_step,
                                   double eps, gamma_scan_options opt = {});

}  // namespace ckpt
