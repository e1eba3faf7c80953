// Counter-based random number generation.
//
// Every stochastic object in the library draws from a CounterRng: a keyed
// bijective mixer applied to a 64-bit counter. Values are a pure function of
// (key, counter), so ensembles can be evaluated in any order, on any number
// of threads, or cell-by-cell at random access, and still reproduce
// bit-identically.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kpzlab {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer. Bijective on uint64.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derivation of per-sample stream keys from a master seed. Distinct sample
// indices give distinct keys (mix64 is a bijection).
struct SeedPolicy {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;

    std::uint64_t stream_key() const {
        return mix64(mix64(master_seed + kGolden) + sample_index + 1);
    }
};

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static CounterRng for_sample(std::uint64_t master_seed, std::uint64_t sample_index) {
        return CounterRng(SeedPolicy{master_seed, sample_index}.stream_key());
    }

    std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * kGolden); }

    // Uniform on (0,1]; zero is excluded so -log(u) is finite.
    double next_unit() { return unit_from_bits(next_u64()); }

    // Inverse-CDF exponential with the given mean.
    double next_exponential(double mean) { return -mean * std::log(next_unit()); }

    bool next_bernoulli(double p) { return next_unit() <= p; }

    // Number of failures before the first success; success probability p.
    // P(k) = p (1-p)^k on {0, 1, ...}.
    std::int64_t next_geometric(double p) {
        if (p <= 0.0 || p > 1.0)
            throw std::invalid_argument("geometric: success probability must be in (0,1]");
        if (p == 1.0) return 0;
        return static_cast<std::int64_t>(std::floor(std::log(next_unit()) / std::log1p(-p)));
    }

    // Random-access forms: value at an explicit counter, independent of the
    // generator's own position. Used for lattice fields where cell (i,j)
    // owns a fixed counter code.
    std::uint64_t u64_at(std::uint64_t counter) const { return mix64(key_ + counter * kGolden); }
    double unit_at(std::uint64_t counter) const { return unit_from_bits(u64_at(counter)); }
    double exponential_at(std::uint64_t counter, double mean) const {
        return -mean * std::log(unit_at(counter));
    }

    std::uint64_t key() const { return key_; }

private:
    static double unit_from_bits(std::uint64_t r) {
        return static_cast<double>((r >> 11) + 1) * 0x1.0p-53;
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace kpzlab
