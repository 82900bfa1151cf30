#pragma once

#include <random>

#include "ckpt/schedule.hpp"

namespace ckpt::testing {

// Valid random schedule: k in [1, max_k], up to max_steps steps, occasional
// tied times, deletions drawn uniformly from the active checkpoints.
inline schedule random_schedule(std::mt19937_64& rng, int max_k = 8, int max_steps = 30) {
    std::uniform_int_distribution<int> kd(1, max_k);
    const int k = kd(rng);
    std::uniform_int_distribution<int> md(k, max_steps);
    const int m = md(rng);

    schedule s;
    s.k = k;
    std::uniform_real_distribution<double> jump(0.0, 1.0);
    double t = 0.05 + jump(rng);
    for (int i = 1; i <= m; ++i) {
        s.times.push_back(t);
        const double u = jump(rng);
        t += (u < 0.1) ? 0.0 : u * t;  // occasional tied step times
    }

    std::vector<int> active;
    for (int g = 1; g <= k; ++g) active.push_back(g);
    for (int i = k + 1; i <= m; ++i) {
        std::uniform_int_distribution<size_t> pick(0, active.size() - 1);
        const size_t at = pick(rng);
        s.deletions.push_back(active[at]);
        active.erase(active.begin() + at);
        active.push_back(i);
    }
    return s;
}

// Independent discrepancy oracle: rebuilds the active set from scratch at
// every step (no shared state with the perf evaluators).
inline double perf_bruteforce(const schedule& s) {
    double sup = 0.0;
    for (int i = s.k; i <= s.steps(); ++i) {
        std::vector<double> pts;
        for (int g = 1; g <= i; ++g) {
            bool dead = false;
            for (int j = s.k + 1; j <= i; ++j)
                if (s.deletions[j - s.k - 1] == g) dead = true;
            if (!dead) pts.push_back(s.times[g - 1]);
        }
        std::sort(pts.begin(), pts.end());
        const double T = s.times[i - 1];
        double prev = 0.0, worst = 0.0;
        for (double p : pts) {
            worst = std::max(worst, p - prev);
            prev = p;
        }
        worst = std::max(worst, T - prev);
        sup = std::max(sup, (s.k + 1) * worst / T);
    }
    return sup;
}

}  // namespace ckpt::testing
