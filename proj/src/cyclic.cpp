#include "ckpt/cyclic.hpp"

#include <algorithm>
#include <cmath>

namespace ckpt {

namespace {

std::vector<double> interval_lengths(const std::vector<double>& pts, double T) {
    std::vector<double> len;
    len.reserve(pts.size() + 1);
    double prev = 0.0;
    for (double p : pts) {
        len.push_back(p - prev);
        prev = p;
    }
    len.push_back(T - prev);
    return len;
}

}  // namespace

void cyclic_algorithm::validate(double rel_tol) const {
    if (k < 1) throw validation_error("k must be positive", 0);
    if (n < 1) throw validation_error("period length must be positive", 0);
    if (static_cast<int>(pattern.size()) != n)
        throw validation_error("pattern length must equal n", 0);
    if (static_cast<int>(positions.size()) != k + n)
        throw validation_error("positions must cover t_1..t_{k+n}", 0);
    for (int j = 0; j < n; ++j)
        if (pattern[j] < 1 || pattern[j] > k)
            throw validation_error("pattern entry outside [1..k]", k + j + 1);
    for (int i = 1; i < k + n; ++i)
        if (positions[i] < positions[i - 1])
            throw validation_error("positions must be non-decreasing", i + 1);
    if (std::abs(positions[k - 1] - 1.0) > rel_tol)
        throw validation_error("positions must be normalized to t_k = 1", k);
    if (!(gamma > 1.0)) throw validation_error("gamma must exceed 1", 0);
    if (std::abs(positions[k + n - 1] - gamma) > rel_tol * gamma)
        throw validation_error("t_{k+n} must equal gamma", k + n);

    // One period must map the interval sequence to gamma times itself.
    std::vector<int> active(k);
    for (int g = 1; g <= k; ++g) active[g - 1] = g;
    std::vector<double> initial;
    for (int g : active) initial.push_back(positions[g - 1]);
    const auto len0 = interval_lengths(initial, positions[k - 1]);
    for (int j = 1; j <= n; ++j) {
        active.erase(active.begin() + (pattern[j - 1] - 1));
        active.push_back(k + j);
    }
    std::vector<double> final_pts;
    for (int g : active) final_pts.push_back(positions[g - 1]);
    const auto len1 = interval_lengths(final_pts, positions[k + n - 1]);
    for (size_t i = 0; i < len0.size(); ++i) {
        const double want = gamma * len0[i];
        const double tol = rel_tol * std::max({1.0, std::abs(want), std::abs(len1[i])});
        if (std::abs(len1[i] - want) > tol)
            throw cyclicity_error("interval sequence after one period is not gamma * initial",
                                  static_cast<int>(i));
    }
}

std::vector<int> period_deletions(const cyclic_algorithm& c) {
    return pattern_to_deletions(c.k, c.pattern);
}

schedule unroll(const cyclic_algorithm& c, int periods, double rel_tol) {
    if (periods < 0) throw validation_error("periods must be non-negative", 0);
    c.validate(rel_tol);

    schedule s;
    s.k = c.k;
    if (periods == 0) {
        s.times.assign(c.positions.begin(), c.positions.begin() + c.k);
        return s;
    }

    s.times = c.positions;
    double factor = c.gamma;
    for (int p = 1; p < periods; ++p) {
        for (int j = 0; j < c.n; ++j)
            s.times.push_back(factor * c.positions[c.k + j]);
        factor *= c.gamma;
    }

    std::vector<int> active(c.k);
    for (int g = 1; g <= c.k; ++g) active[g - 1] = g;
    for (int step = 1; step <= periods * c.n; ++step) {
        const int p = c.pattern[(step - 1) % c.n];
        s.deletions.push_back(active[p - 1]);
        active.erase(active.begin() + (p - 1));
        active.push_back(c.k + step);
    }
    return s;
}

double perf_cyclic(const cyclic_algorithm& c) {
    return perf_cyclic_report(c, 1).sup;
}

discrepancy_report perf_cyclic_report(const cyclic_algorithm& c, int periods) {
    return perf_full(unroll(c, std::max(periods, 1)));
}

}  // namespace ckpt
