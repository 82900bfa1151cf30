#pragma once

#include <vector>

namespace ckpt {

/// Feasibility system over x >= 0: rows are a.x <= b or a.x == b.
struct simplex_problem {
    int num_vars = 0;
    struct row {
        std::vector<double> a;
        double b = 0.0;
        bool equality = false;
    };
    std::vector<row> rows;
};

struct simplex_result {
    enum class status { feasible, infeasible, error };
    status st = status::error;
    std::vector<double> x;
    long pivots = 0;
    const char* message = "";
};

/// Phase-one simplex (minimize the sum of artificial variables) on a dense
/// tableau, with Bland's rule against cycling.
simplex_result phase_one_feasible(const simplex_problem& p, double eps = 1e-10,
                                  long max_pivots = 2'000'000);

}  // namespace ckpt
