#pragma once

#include <cstdint>
#include <map>

#include "ckpt/optimize.hpp"

namespace ckpt {

/// Canonical removal pattern: entries in [1..k-1] (never the currently last
/// checkpoint) and the final entry 1 (cyclic-shift normal form, which also
/// guarantees the first checkpoint is removed at least once).
struct pattern_candidate {
    int k = 0;
    int n = 0;
    std::vector<int> pattern;
};

/// All (k-1)^(n-1) canonical patterns of length n, lexicographic order.
std::vector<pattern_candidate> enumerate_patterns(int k, int n);

enum class run_mode { serial, parallel };

struct search_report {
    int k = 0;
    int n_max = 0;
    std::string mode;  // "exhaustive" or "local"
    std::uint64_t seed = 0;
    bool complete = true;
    long candidates_evaluated = 0;
    long gammas_pruned = 0;       // gamma values skipped via the scaling bound
    long noncanonical_skipped = 0;  // raw patterns removed by canonicalization
    std::map<int, optimization_result> best_per_n;
    optimization_result best;
    double wall_ms = 0.0;  // console-only
};

struct search_options {
    double budget_seconds = 0.0;  // 0 = unlimited
    run_mode mode = run_mode::parallel;
    lp_method method = lp_method::automatic_;
    double lambda_cap = 2.0;
};

/// Best result over every canonical pattern of length n <= n_max; each
/// candidate runs its own gamma scan. Deterministic given the parameters;
/// ties keep the lexicographically smallest pattern. A candidate evaluation
/// kernel runs either serially or as an OpenMP parallel map with an
/// order-stable merge, so both modes return identical reports.
search_report exhaustive_search(int k, int n_max, double gamma_step, double eps,
                                search_options opt = {});

struct local_search_options {
    lp_method method = lp_method::automatic_;
    double lambda_cap = 2.0;
    int restart_after = 50;  // consecutive rejections before a fresh start
};

/// Seeded single-site mutation search over canonical patterns of length n.
/// Bit-reproducible candidate sequence for a fixed seed; never worse than
/// the initial candidate.
search_report local_search(int k, int n, long iterations, std::uint64_t seed,
                           double gamma_step, double eps, local_search_options opt = {});

struct improvement_report {
    double measured_perf = 0.0;    // perf_cyclic of the input algorithm
    double optimized_lambda = 0.0; // best lambda* for its pattern
    double improvement = 0.0;      // (measured - optimized) / measured
    optimization_result result;
};

struct reoptimize_options {
    double gamma_window = 0.05;  // scan gamma in [(1-w), (1+w)] * gamma_alg
    lp_method method = lp_method::automatic_;
    run_mode mode = run_mode::parallel;
};

/// Re-optimizes checkpoint positions (and the scaling factor, over a window
/// around the algorithm's own) for the algorithm's fixed pattern. The
/// algorithm's own positions witness feasibility at its measured perf, so
/// the reported improvement is never negative.
improvement_report optimize_positions_for(const cyclic_algorithm& alg, double gamma_step,
                                          double eps, reoptimize_options opt = {});

}  // namespace ckpt
