#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckpt {

/// Thrown when a schedule (or an operation on it) violates the model rules.
/// Carries the 1-based step index the problem was detected at.
class validation_error : public std::runtime_error {
public:
    validation_error(const std::string& msg, int step)
        : std::runtime_error(msg), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

/// A finite run of a checkpointing algorithm: insertion times t_1..t_m plus,
/// for every step i in [k+1, m], the global index d_i < i of the checkpoint
/// removed when t_i is inserted.
struct schedule {
    int k = 0;
    std::vector<double> times;   // t_1..t_m, non-decreasing, t_k > 0
    std::vector<int> deletions;  // d_{k+1}..d_m (1-based global indices)

    int steps() const { return static_cast<int>(times.size()); }

    // Throws validation_error on the first rule violation.
    void validate() const;
};

/// The k checkpoints stored at some time T, sorted ascending. Together with
/// the implicit endpoints 0 and T they define k+1 interval lengths.
struct active_set {
    std::vector<double> checkpoints;
    double current_time = 0.0;
};

/// Active set immediately after step i (i == k gives the initial checkpoints).
active_set evolve(const schedule& s, int step);

struct interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct discrepancy_value {
    double q = 0.0;
    interval argmax;  // earliest interval on ties
};

/// q = (k+1) * (longest interval) / T. Requires T >= last checkpoint, T > 0.
discrepancy_value discrepancy_at(const active_set& a, int k);

struct step_discrepancy {
    int step = 0;
    double q = 0.0;
    interval argmax;
};

struct discrepancy_report {
    int k = 0;
    int steps_evaluated = 0;
    std::vector<step_discrepancy> per_step;
    double sup = 0.0;
    int sup_step = 0;
    interval sup_interval;
};

/// Evaluates q(A, t_i) for every step i in [k, m] by a full scan of the
/// active intervals. per_step holds the actual q at each step.
discrepancy_report perf_full(const schedule& s);

/// Same supremum as perf_full, but after the initial configuration only the
/// two intervals created at each step are inspected. per_step holds the
/// running maximum.
discrepancy_report perf_incremental(const schedule& s);

/// Converts global deletion indices d to active-position indices p
/// (1 = oldest active checkpoint at the time of the step).
std::vector<int> deletions_to_pattern(const schedule& s);

/// Inverse of deletions_to_pattern for steps k+1..k+pattern.size().
std::vector<int> pattern_to_deletions(int k, std::span<const int> pattern);

struct integerize_report {
    schedule result;              // floored times, same deletions
    std::vector<int> collapsed;   // global indices i with floor(t_i) == floor(t_{i-1})
    double discrete_sup = 0.0;    // sup over steps of (k+1) * max recompute count / T
};

/// Floors scale * t_i for all i. Requires scale * t_1 >= 1.
integerize_report integerize(const schedule& s, double scale = 1.0);

/// True when |a - b| is at most `ulps` representable steps.
bool within_ulps(double a, double b, int ulps);

}  // namespace ckpt
