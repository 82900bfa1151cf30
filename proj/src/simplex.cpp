#include "ckpt/simplex.hpp"

#include <cmath>
#include <cstddef>

namespace ckpt {

// Tableau layout: columns [0, nv) structural, [nv, nv+ns) slack/surplus,
// [nv+ns, total) artificial, plus one rhs column. The objective row holds
// the phase-one costs expressed over the nonbasic variables.
simplex_result phase_one_feasible(const simplex_problem& p, double eps, long max_pivots) {
    const int nv = p.num_vars;
    const int m = static_cast<int>(p.rows.size());

    // Count slack and artificial columns. Rows are normalized to b >= 0
    // first; a <= row with negative b becomes >= and needs an artificial.
    int ns = 0, na = 0;
    std::vector<int> kind(m);  // 0: <= (slack basic), 1: >= (surplus+artificial), 2: == (artificial)
    std::vector<double> sign(m, 1.0);
    for (int r = 0; r < m; ++r) {
        const auto& row = p.rows[r];
        double b = row.b;
        double sgn = 1.0;
        if (b < 0.0) {
            sgn = -1.0;
            b = -b;
        }
        sign[r] = sgn;
        if (row.equality) {
            kind[r] = 2;
            ++na;
        } else if (sgn > 0.0) {
            kind[r] = 0;
            ++ns;
        } else {
            kind[r] = 1;  // flipped <= is >=
            ++ns;
            ++na;
        }
    }

    const int total = nv + ns + na;
    const int rhs = total;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(total + 1, 0.0));
    std::vector<int> basis(m, -1);

    int slack_at = nv, art_at = nv + ns;
    for (int r = 0; r < m; ++r) {
        const auto& row = p.rows[r];
        for (int c = 0; c < nv && c < static_cast<int>(row.a.size()); ++c)
            T[r][c] = sign[r] * row.a[c];
        T[r][rhs] = sign[r] * row.b;
        switch (kind[r]) {
            case 0:
                T[r][slack_at] = 1.0;
                basis[r] = slack_at++;
                break;
            case 1:
                T[r][slack_at] = -1.0;
                ++slack_at;
                T[r][art_at] = 1.0;
                basis[r] = art_at++;
                break;
            case 2:
                T[r][art_at] = 1.0;
                basis[r] = art_at++;
                break;
        }
    }

    // Objective: minimize sum of artificials. Express it over the current
    // basis by subtracting every artificial-basic row.
    auto& obj = T[m];
    for (int r = 0; r < m; ++r) {
        if (basis[r] >= nv + ns) {
            for (int c = 0; c <= total; ++c) obj[c] -= T[r][c];
        }
    }

    auto pivot = [&](int pr, int pc) {
        const double inv = 1.0 / T[pr][pc];
        for (int c = 0; c <= total; ++c) T[pr][c] *= inv;
        T[pr][pc] = 1.0;
        for (int r = 0; r <= m; ++r) {
            if (r == pr) continue;
            const double f = T[r][pc];
            if (f == 0.0) continue;
            for (int c = 0; c <= total; ++c) T[r][c] -= f * T[pr][c];
            T[r][pc] = 0.0;
        }
        if (pr < m) basis[pr] = pc;
    };

    simplex_result res;
    while (true) {
        if (res.pivots > max_pivots) {
            res.st = simplex_result::status::error;
            res.message = "pivot limit exceeded";
            return res;
        }
        // Bland: entering column = lowest index with negative reduced cost.
        int pc = -1;
        for (int c = 0; c < total; ++c) {
            if (obj[c] < -eps) {
                pc = c;
                break;
            }
        }
        if (pc == -1) break;
        // Ratio test; ties broken by lowest basis index (Bland).
        int pr = -1;
        double best = 0.0;
        for (int r = 0; r < m; ++r) {
            if (T[r][pc] > eps) {
                const double ratio = T[r][rhs] / T[r][pc];
                if (pr == -1 || ratio < best - eps ||
                    (ratio < best + eps && basis[r] < basis[pr])) {
                    pr = r;
                    best = ratio;
                }
            }
        }
        if (pr == -1) {
            res.st = simplex_result::status::error;
            res.message = "phase-one objective unbounded";
            return res;
        }
        pivot(pr, pc);
        ++res.pivots;
    }

    if (-obj[rhs] > 1e-7) {
        res.st = simplex_result::status::infeasible;
        return res;
    }

    // Drive leftover artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (basis[r] < nv + ns) continue;
        int pc = -1;
        for (int c = 0; c < nv + ns; ++c) {
            if (std::abs(T[r][c]) > eps) {
                pc = c;
                break;
            }
        }
        if (pc != -1) {
            pivot(r, pc);
            ++res.pivots;
        }
        // A fully zero row is redundant; its artificial stays basic at 0.
    }

    res.x.assign(nv, 0.0);
    for (int r = 0; r < m; ++r)
        if (basis[r] < nv) res.x[basis[r]] = T[r][rhs];
    res.st = simplex_result::status::feasible;
    return res;
}

}  // namespace ckpt
