#pragma once

#include <optional>
#include <string>

#include "ckpt/cyclic.hpp"

namespace ckpt {

/// Golden-ratio algorithm for k = 3: pattern (1), positions
/// (1/phi^2, 1/phi, 1, phi), scaling factor phi.
cyclic_algorithm make_simple();

/// Positions t_i = (i/k)^alpha for i in [1, 2k], pattern (1, ..., k),
/// scaling factor 2^alpha. One period deletes exactly the odd-indexed
/// initial checkpoints. Requires k >= 2, alpha >= 1.
cyclic_algorithm make_linear(int k, double alpha = 1.302);

/// Power-of-two construction: t_i = alpha^(2i/k - 2) on (k/2, k], extended
/// down by t_i = t_{2i} / alpha and up by t_{k+i} = alpha * t_{k/2+i};
/// deletion at period step i removes global index S(i + k/2) where S(m) is
/// the largest odd divisor of m. Requires k a power of two, k >= 8.
cyclic_algorithm make_binary(int k);

/// Folklore doubling baseline: checkpoints start at 1..k; each round
/// replaces the odd-multiple checkpoints by the even times up to twice the
/// horizon, then repeats on the doubled configuration.
schedule make_doubling(int k, int rounds);

enum class algorithm_kind { simple, linear, binary, doubling };

struct algorithm_spec {
    algorithm_kind kind = algorithm_kind::simple;
    int k = 3;
    std::optional<double> alpha;  // Linear only

    // Accepts "simple", "linear:k=100,alpha=1.302", "binary:k=16",
    // "doubling:k=8".
    static algorithm_spec parse(const std::string& text);

    std::string name() const;
    // Simple/linear/binary only; throws for doubling.
    cyclic_algorithm make_cyclic() const;
    // Any kind; cyclic kinds are unrolled.
    schedule make_schedule(int periods) const;
};

/// Largest odd divisor of m.
int largest_odd_divisor(int m);

}  // namespace ckpt
