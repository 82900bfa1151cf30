#include "ckpt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ckpt/simplex.hpp"

namespace ckpt {

lp_problem build_lp(int k, std::span<const int> pattern, double gamma, double lambda) {
    if (k < 1) throw validation_error("k must be positive", 0);
    if (!(gamma > 1.0)) throw validation_error("gamma must exceed 1", 0);
    if (!(lambda > 0.0) || !(lambda <= k + 1))
        throw validation_error("lambda must lie in (0, k+1]", 0);

    lp_problem lp;
    lp.k = k;
    lp.n = static_cast<int>(pattern.size());
    if (lp.n < 1) throw validation_error("pattern must be non-empty", 0);
    lp.gamma = gamma;
    lp.lambda = lambda;
    lp.pattern.assign(pattern.begin(), pattern.end());
    lp.normalized_index = k;

    std::vector<int> act(k);
    for (int g = 1; g <= k; ++g) act[g - 1] = g;
    lp.active.push_back(act);
    for (int j = 1; j <= lp.n; ++j) {
        const int p = pattern[j - 1];
        if (p < 1 || p > k)
            throw validation_error("pattern entry outside [1..k]", k + j);
        if (p == k) lp.deletes_last = true;
        act.erase(act.begin() + (p - 1));
        act.push_back(k + j);
        lp.active.push_back(act);
    }

    for (int j = 0; j <= lp.n; ++j) {
        const auto& a = lp.active[j];
        const int top = a.back();
        int prev = 0;
        for (int g : a) {
            lp.discrepancy.push_back({j, prev, g, top});
            prev = g;
        }
    }

    for (int i = 0; i < k; ++i)
        lp.scaling.push_back({lp.active[lp.n][i], i + 1});

    return lp;
}

double gamma_upper_bound(int k, double lambda, int n) {
    if (!(lambda < k + 1)) throw std::domain_error("lambda must be below k+1");
    if (n < 1) throw std::domain_error("period length must be positive");
    return std::pow(1.0 - lambda / (k + 1), -static_cast<double>(n));
}

double max_constraint_violation(const lp_problem& lp, std::span<const double> t) {
    double worst = 0.0;
    auto note = [&](double v) { worst = std::max(worst, v); };

    for (int i = 0; i + 1 < lp.variable_count(); ++i) note(t[i] - t[i + 1]);
    for (const auto& s : lp.scaling) note(std::abs(t[s.target - 1] - lp.gamma * t[s.source - 1]));
    note(std::abs(t[lp.normalized_index - 1] - 1.0));
    const double lam = lp.lambda / (lp.k + 1);
    for (const auto& row : lp.discrepancy) {
        const double left = row.left == 0 ? 0.0 : t[row.left - 1];
        note((t[row.right - 1] - left) - lam * t[row.top - 1]);
    }
    for (double v : t) note(-v);
    return worst;
}

namespace {

constexpr double kFeasTol = 1e-9;

// Lemma: at every step only the two freshly created intervals can attain the
// discrepancy maximum; an interval already present at an earlier step has its
// constraint implied by the earlier one (the current time only grows). Keep
// the first occurrence of every (left, right) pair.
std::vector<lp_problem::interval_row> pruned_rows(const lp_problem& lp) {
    std::vector<lp_problem::interval_row> out;
    std::unordered_set<long long> seen;
    out.reserve(static_cast<size_t>(lp.k) + 2 * lp.n);
    for (const auto& row : lp.discrepancy) {
        const long long key =
            static_cast<long long>(row.left) * (lp.variable_count() + 1) + row.right;
        if (seen.insert(key).second) out.push_back(row);
    }
    return out;
}

// The scaling equalities form a forest: t_{sigma(i)} = gamma * t_i with
// sigma(i) >= i. Substituting them (and t_k = 1) leaves one variable per
// global index outside the image of sigma. Every remaining constraint then
// has at most one positive coefficient, so the feasible set is closed under
// the componentwise max and a descending Gauss-Seidel iteration from an
// upper bound converges to its greatest element.
struct reduced_system {
    // t_g = mult[g] * x[var[g]]; var -1 = constant (value mult), -2 = zero.
    std::vector<int> var;      // 1-based over globals
    std::vector<double> mult;
    int num_free = 0;
    std::vector<int> free_global;  // free index -> global index

    struct row {
        std::vector<std::pair<int, double>> terms;  // (free var, coefficient)
        double rhs = 0.0;
        int pos = -1;  // index into terms with the positive coefficient
    };
    std::vector<row> rows;
    bool structural_zero_norm = false;  // t_k forced to 0: contradiction
    bool bad = false;
    std::string note;
};

reduced_system reduce(const lp_problem& lp) {
    const int nv = lp.variable_count();
    reduced_system rs;
    rs.var.assign(nv + 1, -3);
    rs.mult.assign(nv + 1, 0.0);

    std::vector<int> parent(nv + 1, 0);  // 0 = none
    std::vector<bool> self_zero(nv + 1, false);
    for (const auto& s : lp.scaling) {
        if (s.target == s.source) {
            self_zero[s.target] = true;  // t = gamma * t with gamma > 1
        } else {
            parent[s.target] = s.source;
        }
    }

    // Resolve each global to its chain terminal.
    std::vector<int> terminal(nv + 1, 0), depth(nv + 1, 0);
    for (int g = 1; g <= nv; ++g) {
        int cur = g, y = 0;
        while (parent[cur] != 0 && !self_zero[cur]) {
            cur = parent[cur];
            ++y;
        }
        terminal[g] = self_zero[cur] ? -1 : cur;
        depth[g] = y;
    }

    const int norm = lp.normalized_index;
    if (terminal[norm] == -1) {
        rs.structural_zero_norm = true;
        return rs;
    }
    const int pinned = terminal[norm];
    const double pinned_value = std::pow(lp.gamma, -static_cast<double>(depth[norm]));
    if (!std::isfinite(pinned_value) || pinned_value == 0.0) {
        rs.bad = true;
        rs.note = "normalization underflow";
        return rs;
    }

    std::vector<int> free_of(nv + 1, -1);
    for (int g = 1; g <= nv; ++g) {
        if (terminal[g] == -1) {
            rs.var[g] = -2;
            rs.mult[g] = 0.0;
        } else if (terminal[g] == pinned) {
            rs.var[g] = -1;
            rs.mult[g] = std::pow(lp.gamma, static_cast<double>(depth[g])) * pinned_value;
        } else {
            if (parent[g] == 0 && free_of[g] == -1) {
                free_of[g] = rs.num_free++;
                rs.free_global.push_back(g);
            }
        }
    }
    for (int g = 1; g <= nv; ++g) {
        if (rs.var[g] == -3) {
            rs.var[g] = free_of[terminal[g]];
            rs.mult[g] = std::pow(lp.gamma, static_cast<double>(depth[g]));
        }
    }

    auto add_row = [&](std::span<const std::pair<int, double>> tterms, double rhs) {
        reduced_system::row r;
        r.rhs = rhs;
        for (auto [g, c] : tterms) {
            if (rs.var[g] == -2) continue;
            if (rs.var[g] == -1) {
                r.rhs -= c * rs.mult[g];
                continue;
            }
            const double coef = c * rs.mult[g];
            bool merged = false;
            for (auto& t : r.terms) {
                if (t.first == rs.var[g]) {
                    t.second += coef;
                    merged = true;
                    break;
                }
            }
            if (!merged) r.terms.push_back({rs.var[g], coef});
        }
        std::erase_if(r.terms, [](const auto& t) { return std::abs(t.second) <= 1e-15; });
        for (size_t i = 0; i < r.terms.size(); ++i) {
            if (r.terms[i].second > 0.0) {
                if (r.pos != -1) {
                    rs.bad = true;
                    rs.note = "row with two positive coefficients";
                }
                r.pos = static_cast<int>(i);
            }
        }
        rs.rows.push_back(std::move(r));
    };

    using term = std::pair<int, double>;
    for (int g = 1; g < nv; ++g) {
        const term t[2] = {{g, 1.0}, {g + 1, -1.0}};
        add_row(t, 0.0);
    }
    const double lam = lp.lambda / (lp.k + 1);
    for (const auto& row : pruned_rows(lp)) {
        if (row.left == 0) {
            const term t[2] = {{row.right, 1.0}, {row.top, -lam}};
            add_row(t, 0.0);
        } else {
            const term t[3] = {{row.right, 1.0}, {row.left, -1.0}, {row.top, -lam}};
            add_row(t, 0.0);
        }
    }
    return rs;
}

std::vector<double> reconstruct(const lp_problem& lp, const reduced_system& rs,
                                std::span<const double> x) {
    std::vector<double> t(lp.variable_count());
    for (int g = 1; g <= lp.variable_count(); ++g) {
        if (rs.var[g] == -2) t[g - 1] = 0.0;
        else if (rs.var[g] == -1) t[g - 1] = rs.mult[g];
        else t[g - 1] = rs.mult[g] * x[rs.var[g]];
    }
    return t;
}

feasibility_result solve_fixpoint(const lp_problem& lp, const reduced_system& rs) {
    feasibility_result res;
    if (rs.structural_zero_norm) {
        res.status = solve_status::infeasible;
        res.message = "normalization forces t_k = 0";
        return res;
    }
    if (rs.bad) {
        res.status = solve_status::error;
        res.message = rs.note;
        return res;
    }

    const double init = std::max(1.0, lp.gamma);
    std::vector<double> x(rs.num_free, init);

    const long max_sweeps = 400000;
    const double conv_tol = 1e-13 * init;
    long sweeps = 0;
    bool converged = false;
    while (sweeps < max_sweeps) {
        ++sweeps;
        double changed = 0.0;
        const bool fwd = (sweeps % 2) == 1;
        const size_t nr = rs.rows.size();
        for (size_t idx = 0; idx < nr; ++idx) {
            const auto& r = rs.rows[fwd ? idx : nr - 1 - idx];
            if (r.pos < 0) continue;
            double num = r.rhs;
            for (size_t ti = 0; ti < r.terms.size(); ++ti) {
                if (static_cast<int>(ti) == r.pos) continue;
                num -= r.terms[ti].second * x[r.terms[ti].first];
            }
            const double bound = num / r.terms[r.pos].second;
            const int v = r.terms[r.pos].first;
            if (bound < x[v]) {
                changed = std::max(changed, x[v] - bound);
                x[v] = std::max(bound, 0.0);
            }
        }
        // Any monotone row already violated can never recover on descent.
        for (const auto& r : rs.rows) {
            if (r.pos >= 0) continue;
            double lhs = 0.0;
            for (const auto& t : r.terms) lhs += t.second * x[t.first];
            if (lhs > r.rhs + kFeasTol) {
                res.status = solve_status::infeasible;
                res.iterations = sweeps;
                return res;
            }
        }
        if (changed <= conv_tol) {
            converged = true;
            break;
        }
    }
    res.iterations = sweeps;
    if (!converged) {
        res.status = solve_status::error;
        res.message = "fixpoint sweep limit exceeded";
        return res;
    }

    for (const auto& r : rs.rows) {
        double lhs = 0.0;
        for (const auto& t : r.terms) lhs += t.second * x[t.first];
        if (lhs > r.rhs + kFeasTol) {
            res.status = solve_status::infeasible;
            return res;
        }
    }

    res.positions = reconstruct(lp, rs, x);
    res.max_violation = max_constraint_violation(lp, res.positions);
    if (res.max_violation > kFeasTol) {
        res.status = solve_status::error;
        res.message = "solution failed substitution check";
        return res;
    }
    res.status = solve_status::feasible;
    return res;
}

feasibility_result solve_simplex(const lp_problem& lp, const reduced_system& rs) {
    feasibility_result res;
    if (rs.structural_zero_norm) {
        res.status = solve_status::infeasible;
        res.message = "normalization forces t_k = 0";
        return res;
    }
    if (rs.bad) {
        res.status = solve_status::error;
        res.message = rs.note;
        return res;
    }

    simplex_problem sp;
    sp.num_vars = rs.num_free;
    for (const auto& r : rs.rows) {
        simplex_problem::row row;
        row.a.assign(rs.num_free, 0.0);
        bool constant_row = true;
        for (const auto& t : r.terms) {
            row.a[t.first] += t.second;
            constant_row = false;
        }
        row.b = r.rhs;
        if (constant_row) {
            if (0.0 > r.rhs + kFeasTol) {
                res.status = solve_status::infeasible;
                return res;
            }
            continue;
        }
        sp.rows.push_back(std::move(row));
    }

    const auto sres = phase_one_feasible(sp);
    res.iterations = sres.pivots;
    if (sres.st == simplex_result::status::infeasible) {
        res.status = solve_status::infeasible;
        return res;
    }
    if (sres.st == simplex_result::status::error) {
        res.status = solve_status::error;
        res.message = sres.message;
        return res;
    }

    res.positions = reconstruct(lp, rs, sres.x);
    res.max_violation = max_constraint_violation(lp, res.positions);
    if (res.max_violation > kFeasTol) {
        res.status = solve_status::error;
        res.message = "solution failed substitution check";
        return res;
    }
    res.status = solve_status::feasible;
    return res;
}

}  // namespace

feasibility_result solve_feasibility(const lp_problem& lp, lp_method method) {
    const reduced_system rs = reduce(lp);
    switch (method) {
        case lp_method::simplex:
            return solve_simplex(lp, rs);
        case lp_method::fixpoint:
            return solve_fixpoint(lp, rs);
        case lp_method::automatic_: {
            if (lp.k + lp.n <= 24) {
                auto r = solve_simplex(lp, rs);
                if (r.status == solve_status::error) r = solve_fixpoint(lp, rs);
                return r;
            }
            auto r = solve_fixpoint(lp, rs);
            if (r.status == solve_status::error) r = solve_simplex(lp, rs);
            return r;
        }
    }
    feasibility_result res;
    res.message = "bad method";
    return res;
}

}  // namespace ckpt
