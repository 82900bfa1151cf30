#include "ckpt/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ckpt {

namespace {

constexpr double kPhi = std::numbers::phi_v<double>;

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

int largest_odd_divisor(int m) {
    while (m % 2 == 0) m /= 2;
    return m;
}

cyclic_algorithm make_simple() {
    cyclic_algorithm c;
    c.k = 3;
    c.n = 1;
    c.pattern = {1};
    c.positions = {1.0 / (kPhi * kPhi), 1.0 / kPhi, 1.0, kPhi};
    c.gamma = kPhi;
    return c;
}

cyclic_algorithm make_linear(int k, double alpha) {
    if (k < 2) throw validation_error("linear requires k >= 2", 0);
    if (alpha < 1.0) throw validation_error("linear requires alpha >= 1", 0);

    cyclic_algorithm c;
    c.k = k;
    c.n = k;
    c.pattern.resize(k);
    for (int j = 0; j < k; ++j) c.pattern[j] = j + 1;
    c.positions.resize(2 * k);
    for (int i = 1; i <= 2 * k; ++i)
        c.positions[i - 1] = std::pow(static_cast<double>(i) / k, alpha);
    c.gamma = std::pow(2.0, alpha);
    return c;
}

cyclic_algorithm make_binary(int k) {
    if (!is_power_of_two(k) || k < 8)
        throw validation_error("binary requires k a power of two with k >= 8", 0);

    const double c_exp = std::log2(std::numbers::sqrt2 / std::log(4.0));
    const double alpha = std::pow(2.0, 1.0 + c_exp / std::log2(k / 4.0));

    cyclic_algorithm c;
    c.k = k;
    c.n = k / 2;
    c.positions.resize(k + c.n);
    for (int i = k / 2 + 1; i <= k; ++i)
        c.positions[i - 1] = std::pow(alpha, 2.0 * i / k - 2.0);
    for (int i = k / 2; i >= 1; --i)
        c.positions[i - 1] = c.positions[2 * i - 1] / alpha;
    for (int i = 1; i <= c.n; ++i)
        c.positions[k + i - 1] = alpha * c.positions[k / 2 + i - 1];
    c.gamma = alpha;

    // Deletions d(k+i) = S(i + k/2); pattern is the active-index form.
    schedule one;
    one.k = k;
    one.times = c.positions;
    for (int i = 1; i <= c.n; ++i)
        one.deletions.push_back(largest_odd_divisor(i + k / 2));
    c.pattern = deletions_to_pattern(one);
    return c;
}

schedule make_doubling(int k, int rounds) {
    if (k < 1) throw validation_error("doubling requires k >= 1", 0);
    if (rounds < 0) throw validation_error("rounds must be non-negative", 0);

    schedule s;
    s.k = k;
    for (int g = 1; g <= k; ++g) s.times.push_back(static_cast<double>(g));

    // Active checkpoints as (time, global index).
    std::vector<std::pair<double, int>> active;
    for (int g = 1; g <= k; ++g) active.push_back({static_cast<double>(g), g});

    double scale = 1.0;
    int next_global = k;
    for (int r = 0; r < rounds; ++r) {
        // New checkpoints at the even multiples of `scale` in (k, 2k] * scale.
        const int first_even = (k % 2 == 0) ? k + 2 : k + 1;
        for (int e = first_even; e <= 2 * k; e += 2) {
            const double T = e * scale;
            // Remove the earliest remaining odd-multiple checkpoint.
            auto victim = active.end();
            for (auto it = active.begin(); it != active.end(); ++it) {
                const double units = it->first / scale;
                const long long u = std::llround(units);
                if (std::abs(units - u) < 1e-9 && u % 2 == 1) {
                    victim = it;
                    break;
                }
            }
            if (victim == active.end())
                throw validation_error("doubling round has no odd checkpoint left", next_global + 1);
            s.deletions.push_back(victim->second);
            active.erase(victim);
            ++next_global;
            s.times.push_back(T);
            active.push_back({T, next_global});
            std::sort(active.begin(), active.end());
        }
        scale *= 2.0;
    }
    return s;
}

algorithm_spec algorithm_spec::parse(const std::string& text) {
    algorithm_spec spec;
    std::string name = text;
    std::string args;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        args = text.substr(colon + 1);
    }

    if (name == "simple") {
        spec.kind = algorithm_kind::simple;
        spec.k = 3;
    } else if (name == "linear") {
        spec.kind = algorithm_kind::linear;
        spec.k = 0;
    } else if (name == "binary") {
        spec.kind = algorithm_kind::binary;
        spec.k = 0;
    } else if (name == "doubling") {
        spec.kind = algorithm_kind::doubling;
        spec.k = 0;
    } else {
        throw validation_error("unknown algorithm '" + name + "'", 0);
    }

    size_t pos = 0;
    while (pos < args.size()) {
        const size_t comma = args.find(',', pos);
        const std::string kv = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = (comma == std::string::npos) ? args.size() : comma + 1;
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw validation_error("expected key=value in algorithm spec: " + kv, 0);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "k") {
            spec.k = std::stoi(val);
        } else if (key == "alpha" && spec.kind == algorithm_kind::linear) {
            spec.alpha = std::stod(val);
        } else {
            throw validation_error("unknown algorithm option '" + key + "'", 0);
        }
    }

    if (spec.kind == algorithm_kind::simple && spec.k != 3)
        throw validation_error("simple requires k = 3", 0);
    if (spec.kind != algorithm_kind::simple && spec.k <= 0)
        throw validation_error("algorithm spec requires k", 0);
    if (spec.kind == algorithm_kind::binary && (!is_power_of_two(spec.k) || spec.k < 8))
        throw validation_error("binary requires k a power of two with k >= 8", 0);
    if (spec.kind == algorithm_kind::linear && spec.k < 2)
        throw validation_error("linear requires k >= 2", 0);
    return spec;
}

std::string algorithm_spec::name() const {
    switch (kind) {
        case algorithm_kind::simple: return "simple";
        case algorithm_kind::linear: return "linear";
        case algorithm_kind::binary: return "binary";
        case algorithm_kind::doubling: return "doubling";
    }
    return "?";
}

cyclic_algorithm algorithm_spec::make_cyclic() const {
    switch (kind) {
        case algorithm_kind::simple: return make_simple();
        case algorithm_kind::linear: return make_linear(k, alpha.value_or(1.302));
        case algorithm_kind::binary: return make_binary(k);
        case algorithm_kind::doubling:
            throw validation_error("doubling has no normalized cyclic form", 0);
    }
    throw validation_error("bad algorithm kind", 0);
}

schedule algorithm_spec::make_schedule(int periods) const {
    if (kind == algorithm_kind::doubling) return make_doubling(k, periods);
    return unroll(make_cyclic(), periods);
}

}  // namespace ckpt
