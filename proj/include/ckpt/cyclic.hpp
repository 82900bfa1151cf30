#pragma once

#include "ckpt/schedule.hpp"

namespace ckpt {

/// Thrown when a claimed cyclic description does not reproduce a gamma-scaled
/// copy of its interval sequence after one period.
class cyclicity_error : public std::runtime_error {
public:
    cyclicity_error(const std::string& msg, int interval_index)
        : std::runtime_error(msg), interval_index_(interval_index) {}
    int interval_index() const { return interval_index_; }

private:
    int interval_index_;
};

/// Finite description of a periodic algorithm: after the n steps of one
/// period the interval sequence equals gamma times the initial one.
/// Positions are normalized to t_k = 1, so t_{k+n} = gamma.
struct cyclic_algorithm {
    int k = 0;
    int n = 0;
    std::vector<int> pattern;      // p_1..p_n, entries in [1..k]
    std::vector<double> positions; // t_1..t_{k+n}
    double gamma = 0.0;

    // Structural checks plus the cyclicity test (relative tolerance on the
    // interval sequence). Throws validation_error or cyclicity_error.
    void validate(double rel_tol = 1e-9) const;
};

/// Global deletion indices d_{k+1}..d_{k+n} induced by the pattern.
std::vector<int> period_deletions(const cyclic_algorithm& c);

/// Expands `periods` repetitions into an explicit schedule; positions in
/// period j+1 are gamma times those in period j. periods == 0 yields the
/// initial checkpoints only.
schedule unroll(const cyclic_algorithm& c, int periods, double rel_tol = 1e-9);

/// Max discrepancy over one period (equals sup of perf_full on any unroll).
double perf_cyclic(const cyclic_algorithm& c);

/// Per-step report over `periods` repetitions (full-scan values).
discrepancy_report perf_cyclic_report(const cyclic_algorithm& c, int periods = 1);

}  // namespace ckpt
