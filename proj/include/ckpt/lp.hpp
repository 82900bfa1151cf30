#pragma once

#include <span>
#include <string>
#include <vector>

#include "ckpt/cyclic.hpp"

namespace ckpt {

/// Feasibility program for fixed (pattern, gamma, lambda): does a cyclic
/// algorithm with discrepancy at most lambda exist? Variables are the time
/// points t_1..t_{k+n}, normalized by t_k = 1. Three constraint families:
///   ordering     t_i <= t_{i+1}                           (k+n-1 rows)
///   scaling      t_{active_n[i]} = gamma * t_i            (k rows)
///   discrepancy  tau_{i+1}^j - tau_i^j <= lambda * tau_k^j / (k+1)
///                for i in [0,k), j in [0,n]               (k(n+1) rows)
struct lp_problem {
    int k = 0;
    int n = 0;
    double gamma = 0.0;
    double lambda = 0.0;
    std::vector<int> pattern;

    // active[j] = global indices of the active checkpoints after j steps.
    std::vector<std::vector<int>> active;

    struct interval_row {
        int step = 0;   // j
        int left = 0;   // global index; 0 means the origin
        int right = 0;  // global index
        int top = 0;    // global index of the current time at step j
    };
    std::vector<interval_row> discrepancy;

    struct scaling_row {
        int target = 0;  // t_target = gamma * t_source
        int source = 0;
    };
    std::vector<scaling_row> scaling;

    int normalized_index = 0;   // t_k = 1 (kept apart from the three families)
    bool deletes_last = false;  // some step removes the currently last checkpoint

    int variable_count() const { return k + n; }
    size_t ordering_count() const { return static_cast<size_t>(k + n - 1); }
    size_t scaling_count() const { return scaling.size(); }
    size_t discrepancy_count() const { return discrepancy.size(); }
};

lp_problem build_lp(int k, std::span<const int> pattern, double gamma, double lambda);

/// Largest scaling factor compatible with discrepancy lambda over n steps:
/// (1 - lambda/(k+1))^(-n). Requires lambda < k+1.
double gamma_upper_bound(int k, double lambda, int n);

enum class solve_status { feasible, infeasible, error };
enum class lp_method { automatic_, simplex, fixpoint };

struct feasibility_result {
    solve_status status = solve_status::error;
    std::vector<double> positions;  // t_1..t_{k+n} when feasible
    double max_violation = 0.0;     // substitution check over every constraint
    long iterations = 0;            // simplex pivots or fixpoint sweeps
    std::string message;
};

/// Decides feasibility and, on success, returns positions verified by direct
/// substitution (absolute tolerance 1e-9 on the t_k = 1 scale). automatic_
/// uses the simplex tableau for small systems and the monotone fixed-point
/// solver for large ones.
feasibility_result solve_feasibility(const lp_problem& lp,
                                     lp_method method = lp_method::automatic_);

/// Largest violation of any constraint of `lp` (including the normalization
/// and the sign bounds) by the candidate positions.
double max_constraint_violation(const lp_problem& lp, std::span<const double> t);

}  // namespace ckpt
