#include "ckpt/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ckpt {

bound_set bounds_for(int k) {
    if (k < 1) throw std::domain_error("k must be positive");
    bound_set b;
    b.k = k;
    b.lower_asymptotic = 2.0 - std::log(2.0);
    b.trivial_lower = 1.0 + 1.0 / k;
    b.linear_upper = 1.586;
    if (k >= 8 && (k & (k - 1)) == 0)
        b.binary_upper = std::log(4.0) + 0.05 / std::log2(k / 4.0);
    b.global_upper = 2.0;
    return b;
}

}  // namespace ckpt
