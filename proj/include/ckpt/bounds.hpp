#pragma once

#include <optional>

namespace ckpt {

/// Closed-form reference bounds for k checkpoint slots.
struct bound_set {
    int k = 0;
    double lower_asymptotic = 0.0;          // 2 - ln 2 (limit value; not asserted per finite k)
    double trivial_lower = 0.0;             // 1 + 1/k
    double linear_upper = 0.0;              // 1.586 (plus O(1/k))
    std::optional<double> binary_upper;     // ln 4 + 0.05/lg(k/4); k >= 8, power of two
    double global_upper = 2.0;
};

bound_set bounds_for(int k);

}  // namespace ckpt
