#include "ckpt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

namespace ckpt {

void schedule::validate() const {
    if (k < 1) throw validation_error("k must be positive", 0);
    const int m = steps();
    if (m < k) throw validation_error("schedule must cover at least the k initial checkpoints", m);
    if (static_cast<int>(deletions.size()) != m - k)
        throw validation_error("deletions must cover exactly steps k+1..m", m);
    for (int i = 1; i < m; ++i) {
        if (times[i] < times[i - 1])
            throw validation_error("times must be non-decreasing", i + 1);
    }
    if (!(times[k - 1] > 0.0)) throw validation_error("t_k must be positive", k);

    std::vector<bool> deleted(m + 1, false);
    for (int i = k + 1; i <= m; ++i) {
        const int d = deletions[i - k - 1];
        if (d < 1 || d >= i)
            throw validation_error("deletion index must satisfy 1 <= d_i < i", i);
        if (deleted[d])
            throw validation_error("checkpoint deleted twice", i);
        deleted[d] = true;
    }
}

active_set evolve(const schedule& s, int step) {
    s.validate();
    if (step < s.k || step > s.steps())
        throw validation_error("step outside [k, m]", step);

    std::vector<bool> deleted(step + 1, false);
    for (int i = s.k + 1; i <= step; ++i) deleted[s.deletions[i - s.k - 1]] = true;

    active_set a;
    a.checkpoints.reserve(s.k);
    for (int g = 1; g <= step; ++g)
        if (!deleted[g]) a.checkpoints.push_back(s.times[g - 1]);
    a.current_time = s.times[step - 1];
    return a;
}

discrepancy_value discrepancy_at(const active_set& a, int k) {
    if (!(a.current_time > 0.0)) throw std::domain_error("current time must be positive");
    if (static_cast<int>(a.checkpoints.size()) != k)
        throw std::domain_error("active set must hold exactly k checkpoints");

    const double T = a.current_time;
    discrepancy_value best;
    double prev = 0.0;
    double best_len = -1.0;
    for (int i = 0; i <= k; ++i) {
        const double cur = (i < k) ? a.checkpoints[i] : T;
        if (cur < prev) throw std::domain_error("checkpoints must be sorted and not exceed T");
        const double len = cur - prev;
        if (len > best_len) {
            best_len = len;
            best.argmax = {prev, cur};
        }
        prev = cur;
    }
    best.q = (k + 1) * best_len / T;
    return best;
}

discrepancy_report perf_full(const schedule& s) {
    s.validate();
    const int m = s.steps();
    discrepancy_report rep;
    rep.k = s.k;

    std::vector<int> active(s.k);
    for (int g = 1; g <= s.k; ++g) active[g - 1] = g;

    auto scan = [&](int step) {
        const double T = s.times[step - 1];
        double prev = 0.0, best_len = -1.0;
        interval arg;
        for (size_t i = 0; i <= active.size(); ++i) {
            const double cur = (i < active.size()) ? s.times[active[i] - 1] : T;
            const double len = cur - prev;
            if (len > best_len) {
                best_len = len;
                arg = {prev, cur};
            }
            prev = cur;
        }
        rep.per_step.push_back({step, (s.k + 1) * best_len / T, arg});
    };

    scan(s.k);
    for (int i = s.k + 1; i <= m; ++i) {
        const int d = s.deletions[i - s.k - 1];
        auto it = std::find(active.begin(), active.end(), d);
        if (it == active.end())
            throw validation_error("deletion of an inactive checkpoint", i);
        active.erase(it);
        active.push_back(i);
        scan(i);
    }

    rep.steps_evaluated = static_cast<int>(rep.per_step.size());
    rep.sup = -1.0;
    for (const auto& e : rep.per_step) {
        if (e.q > rep.sup) {
            rep.sup = e.q;
            rep.sup_step = e.step;
            rep.sup_interval = e.argmax;
        }
    }
    return rep;
}

discrepancy_report perf_incremental(const schedule& s) {
    s.validate();
    const int m = s.steps();
    discrepancy_report rep;
    rep.k = s.k;

    // Linked list over global indices; 0 is the origin sentinel.
    std::vector<int> nxt(m + 1, -1), prv(m + 1, -1);
    std::vector<bool> active(m + 1, false);
    for (int g = 0; g <= s.k; ++g) {
        nxt[g] = (g < s.k) ? g + 1 : -1;
        prv[g] = g - 1;
        active[g] = true;
    }
    int last = s.k;

    auto time_of = [&](int g) { return g == 0 ? 0.0 : s.times[g - 1]; };

    // Initial configuration: full scan.
    double running = -1.0;
    interval run_arg;
    int run_step = s.k;
    {
        const double T = time_of(s.k);
        for (int g = 0; g != s.k;) {
            const int h = nxt[g];
            const double len = time_of(h) - time_of(g);
            if ((s.k + 1) * len / T > running) {
                running = (s.k + 1) * len / T;
                run_arg = {time_of(g), time_of(h)};
            }
            g = h;
        }
        rep.per_step.push_back({s.k, running, run_arg});
    }

    for (int i = s.k + 1; i <= m; ++i) {
        const int d = s.deletions[i - s.k - 1];
        if (d > m || !active[d] || d == 0)
            throw validation_error("deletion of an inactive checkpoint", i);
        const double T = s.times[i - 1];

        const int left = prv[d];
        const int right = nxt[d];  // -1 when d is the newest active checkpoint
        active[d] = false;
        nxt[left] = right;
        if (right != -1) prv[right] = left;
        if (d == last) last = left;

        // Insert i after the current newest checkpoint.
        const int tail = last;
        nxt[tail] = i;
        prv[i] = tail;
        nxt[i] = -1;
        active[i] = true;
        last = i;

        auto consider = [&](int lo, int hi) {
            const double len = time_of(hi) - time_of(lo);
            const double q = (s.k + 1) * len / T;
            if (q > running) {
                running = q;
                run_arg = {time_of(lo), time_of(hi)};
                run_step = i;
            }
        };
        // Merged interval from the removal; when d was the newest checkpoint
        // this coincides with the insertion interval [left, i].
        if (right != -1) consider(left, right);
        consider(prv[i], i);

        rep.per_step.push_back({i, running, run_arg});
    }

    rep.steps_evaluated = static_cast<int>(rep.per_step.size());
    rep.sup = running;
    rep.sup_step = run_step;
    rep.sup_interval = run_arg;
    return rep;
}

std::vector<int> deletions_to_pattern(const schedule& s) {
    std::vector<int> p;
    p.reserve(s.deletions.size());
    for (size_t i = 0; i < s.deletions.size(); ++i) {
        const int d = s.deletions[i];
        int smaller = 0;
        for (size_t j = 0; j < i; ++j)
            if (s.deletions[j] < d) ++smaller;
        p.push_back(d - smaller);
    }
    return p;
}

std::vector<int> pattern_to_deletions(int k, std::span<const int> pattern) {
    std::vector<int> active(k);
    for (int g = 1; g <= k; ++g) active[g - 1] = g;
    std::vector<int> d;
    d.reserve(pattern.size());
    for (size_t j = 0; j < pattern.size(); ++j) {
        const int p = pattern[j];
        if (p < 1 || p > static_cast<int>(active.size()))
            throw validation_error("pattern index outside the active set", k + static_cast<int>(j) + 1);
        d.push_back(active[p - 1]);
        active.erase(active.begin() + (p - 1));
        active.push_back(k + static_cast<int>(j) + 1);
    }
    return d;
}

integerize_report integerize(const schedule& s, double scale) {
    s.validate();
    if (!(scale > 0.0)) throw validation_error("scale must be positive", 0);
    if (std::floor(scale * s.times.front()) < 1.0)
        throw validation_error("scale too small: first checkpoint collapses below 1", 1);

    integerize_report out;
    out.result = s;
    for (auto& t : out.result.times) t = std::floor(scale * t);
    for (size_t i = 1; i < out.result.times.size(); ++i)
        if (out.result.times[i] == out.result.times[i - 1])
            out.collapsed.push_back(static_cast<int>(i) + 1);

    // Discrete recompute counts: an interval (a, b] needs at most b - a - 1
    // recomputation steps to reach any state strictly inside it.
    const schedule& r = out.result;
    std::vector<int> active(r.k);
    for (int g = 1; g <= r.k; ++g) active[g - 1] = g;
    auto scan = [&](int step) {
        const double T = r.times[step - 1];
        double prev = 0.0, worst = 0.0;
        for (size_t i = 0; i <= active.size(); ++i) {
            const double cur = (i < active.size()) ? r.times[active[i] - 1] : T;
            worst = std::max(worst, std::max(0.0, cur - prev - 1.0));
            prev = cur;
        }
        out.discrete_sup = std::max(out.discrete_sup, (r.k + 1) * worst / T);
    };
    scan(r.k);
    for (int i = r.k + 1; i <= r.steps(); ++i) {
        const int d = r.deletions[i - r.k - 1];
        active.erase(std::find(active.begin(), active.end(), d));
        active.push_back(i);
        scan(i);
    }
    return out;
}

bool within_ulps(double a, double b, int ulps) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    for (int i = 0; i < ulps; ++i) {
        a = std::nextafter(a, b);
        if (a == b) return true;
    }
    return false;
}

}  // namespace ckpt
