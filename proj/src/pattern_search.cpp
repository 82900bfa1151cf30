#include "ckpt/pattern_search.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ckpt {

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

bool better(const optimization_result& a, const optimization_result& b) {
    // Is a better than b? Ties broken toward the lexicographically smaller
    // pattern (shorter patterns compare smaller when equal as prefixes).
    if (!a.feasible) return false;
    if (!b.feasible) return true;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.pattern < b.pattern;
}

// Evaluation kernel shared by the search drivers: runs optimize_gamma for a
// block of candidates, serially or as an OpenMP parallel map. Results come
// back indexed, so merging is order-stable and both modes agree bit for bit
// whenever no deadline cuts the block short.
std::vector<optimization_result> evaluate_candidates(
    const std::vector<pattern_candidate>& cands, double gamma_step, double eps,
    const search_options& opt, double deadline_ms, volatile bool* stop) {
    std::vector<optimization_result> results(cands.size());
    auto eval_one = [&](size_t idx) {
        if (*stop) return;
        if (deadline_ms > 0.0 && now_ms() > deadline_ms) {
            *stop = true;
            return;
        }
        gamma_scan_options gopt;
        gopt.lambda_cap = opt.lambda_cap;
        gopt.method = opt.method;
        results[idx] =
            optimize_gamma(cands[idx].k, cands[idx].pattern, gamma_step, eps, gopt);
    };

#ifdef _OPENMP
    if (opt.mode == run_mode::parallel) {
        #pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(cands.size()); ++i)
            eval_one(static_cast<size_t>(i));
        return results;
    }
#endif
    for (size_t i = 0; i < cands.size(); ++i) eval_one(i);
    return results;
}

long saturating_pow(int base, int exp) {
    double v = std::pow(static_cast<double>(base), exp);
    if (v > 9e18) return std::numeric_limits<long>::max();
    return static_cast<long>(v);
}

}  // namespace

std::vector<pattern_candidate> enumerate_patterns(int k, int n) {
    if (k < 2) throw validation_error("pattern enumeration requires k >= 2", 0);
    if (n < 1) throw validation_error("pattern length must be positive", 0);

    std::vector<pattern_candidate> out;
    std::vector<int> p(n, 1);  // p[n-1] stays 1
    while (true) {
        out.push_back({k, n, p});
        int i = n - 2;
        while (i >= 0 && p[i] == k - 1) p[i--] = 1;
        if (i < 0) break;
        ++p[i];
    }
    return out;
}

search_report exhaustive_search(int k, int n_max, double gamma_step, double eps,
                                search_options opt) {
    if (n_max < 1) throw validation_error("n_max must be positive", 0);
    const double t0 = now_ms();

    search_report rep;
    rep.k = k;
    rep.n_max = n_max;
    rep.mode = "exhaustive";
    rep.best.feasible = false;

    const double deadline =
        opt.budget_seconds > 0.0 ? t0 + opt.budget_seconds * 1000.0 : 0.0;
    volatile bool stop = false;
    for (int n = 1; n <= n_max && !stop; ++n) {
        const auto cands = enumerate_patterns(k, n);
        rep.noncanonical_skipped += saturating_pow(k, n) - static_cast<long>(cands.size());
        const auto results = evaluate_candidates(cands, gamma_step, eps, opt, deadline, &stop);

        optimization_result cell_best;
        cell_best.feasible = false;
        for (const auto& r : results) {
            if (r.pattern.empty() && !r.feasible) {
                rep.complete = false;  // unevaluated tail after a budget stop
                continue;
            }
            ++rep.candidates_evaluated;
            rep.gammas_pruned += r.gammas_pruned;
            if (better(r, cell_best)) cell_best = r;
        }
        if (cell_best.feasible) {
            rep.best_per_n[n] = cell_best;
            if (better(cell_best, rep.best)) rep.best = cell_best;
        }
        if (stop && n < n_max) rep.complete = false;
    }

    rep.wall_ms = now_ms() - t0;
    return rep;
}

search_report local_search(int k, int n, long iterations, std::uint64_t seed,
                           double gamma_step, double eps, local_search_options opt) {
    if (k < 2) throw validation_error("local search requires k >= 2", 0);
    if (iterations < 1) throw validation_error("iterations must be positive", 0);
    const double t0 = now_ms();

    search_report rep;
    rep.k = k;
    rep.n_max = n;
    rep.mode = "local";
    rep.seed = seed;
    rep.best.feasible = false;

    std::mt19937_64 rng(seed);
    // Plain modulo keeps the candidate sequence identical across platforms.
    auto uniform = [&rng](int bound) { return static_cast<int>(rng() % bound); };

    auto random_candidate = [&] {
        std::vector<int> p(n);
        for (int j = 0; j + 1 < n; ++j) p[j] = 1 + uniform(k - 1);
        p[n - 1] = 1;
        return p;
    };

    auto evaluate = [&](const std::vector<int>& p) {
        gamma_scan_options gopt;
        gopt.lambda_cap = opt.lambda_cap;
        gopt.method = opt.method;
        auto r = optimize_gamma(k, p, gamma_step, eps, gopt);
        ++rep.candidates_evaluated;
        rep.gammas_pruned += r.gammas_pruned;
        return r;
    };

    std::vector<int> current = random_candidate();
    optimization_result current_res = evaluate(current);
    if (better(current_res, rep.best)) rep.best = current_res;

    int rejections = 0;
    for (long it = 1; it < iterations; ++it) {
        std::vector<int> cand = current;
        if (n > 1) cand[uniform(n - 1)] = 1 + uniform(k - 1);
        auto r = evaluate(cand);
        const bool accept = better(r, current_res);
        if (accept) {
            current = std::move(cand);
            current_res = r;
            rejections = 0;
        } else if (++rejections >= opt.restart_after) {
            current = random_candidate();
            current_res = evaluate(current);
            ++it;  // the restart evaluation spends an iteration
            rejections = 0;
        }
        if (better(current_res, rep.best)) rep.best = current_res;
    }

    if (rep.best.feasible) rep.best_per_n[n] = rep.best;
    rep.wall_ms = now_ms() - t0;
    return rep;
}

improvement_report optimize_positions_for(const cyclic_algorithm& alg, double gamma_step,
                                          double eps, reoptimize_options opt) {
    alg.validate();
    improvement_report out;
    out.measured_perf = perf_cyclic(alg);

    // The algorithm's own positions are a feasibility certificate at its
    // measured discrepancy, so cap every lambda search there.
    const double cap = out.measured_perf + 1e-9;
    const double bound = gamma_upper_bound(alg.k, std::min(cap, alg.k + 0.999), alg.n);

    std::vector<double> grid;
    grid.push_back(alg.gamma);
    const double glo = std::max(1.0 + gamma_step, alg.gamma * (1.0 - opt.gamma_window));
    const double ghi = std::min(bound, alg.gamma * (1.0 + opt.gamma_window));
    long steps = 0;
    for (double g = glo; g <= ghi + 1e-12; g = glo + (++steps) * gamma_step)
        if (g != alg.gamma) grid.push_back(g);

    auto scan = [&](const std::vector<double>& gammas) {
        std::vector<optimization_result> results(gammas.size());
        auto eval_one = [&](size_t i) {
            lambda_search_options lopt;
            lopt.hi = cap;
            lopt.method = opt.method;
            lopt.defer_validation = true;
            results[i] = optimize_lambda(alg.k, alg.pattern, gammas[i], eps, lopt);
        };
#ifdef _OPENMP
        if (opt.mode == run_mode::parallel) {
            #pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < static_cast<long>(gammas.size()); ++i)
                eval_one(static_cast<size_t>(i));
        } else
#endif
        {
            for (size_t i = 0; i < gammas.size(); ++i) eval_one(i);
        }
        return results;
    };

    optimization_result best;
    best.feasible = false;
    auto merge = [&](const std::vector<optimization_result>& results) {
        for (const auto& r : results)
            if (r.feasible && (!best.feasible || r.lambda < best.lambda)) best = r;
    };
    merge(scan(grid));

    if (best.feasible) {
        std::vector<double> fine;
        for (int j = -10; j <= 10; ++j) {
            const double g = best.gamma + j * gamma_step / 10.0;
            if (j != 0 && g > 1.0 && g <= bound) fine.push_back(g);
        }
        merge(scan(fine));
    }

    if (!best.feasible || best.lambda > out.measured_perf) {
        // Nothing beat the algorithm itself; report it as its own optimum.
        best.k = alg.k;
        best.n = alg.n;
        best.pattern = alg.pattern;
        best.gamma = alg.gamma;
        best.lambda = out.measured_perf;
        best.feasible = true;
        best.positions = alg.positions;
    } else {
        const cyclic_algorithm c = best.to_cyclic();
        c.validate();
        if (perf_cyclic(c) > best.lambda + 1e-6)
            throw std::runtime_error("re-optimized positions failed validation");
    }

    out.optimized_lambda = best.lambda;
    out.improvement = (out.measured_perf - best.lambda) / out.measured_perf;
    out.result = std::move(best);
    return out;
}

}  // namespace ckpt
