#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace tlnid {

// Deterministic splitmix64 generator. Every random decision in the library
// flows through an explicitly passed instance; there is no global RNG, so a
// run is reproducible from its seed alone.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1). 24 explicit mantissa bits keep the mapping portable.
    float uniform() { return float(next_u64() >> 40) * 0x1.0p-24f; }

    double uniform_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    float uniform(float lo, float hi) { return lo + (hi - lo) * uniform(); }

    // p_true == 1 always returns true (uniform_double() < 1 holds).
    bool bernoulli(double p_true) { return uniform_double() < p_true; }

    // Unbiased integer in [0, n); n must be positive.
    uint64_t below(uint64_t n) {
        const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
        for (;;) {
            const uint64_t x = next_u64();
            if (x < limit) return x % n;
        }
    }

    // Fisher-Yates; depends only on this generator's state.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

// Stable child seed for an independent sub-task (a CV fold, a fresh init
// stream). Sweep conditions use plain seed ^ index instead: see sweep.hpp.
inline uint64_t derive_seed(uint64_t seed, uint64_t tag) {
    Rng r(seed ^ (0xD1B54A32D192ED03ull * (tag + 1)));
    return r.next_u64();
}

} // namespace tlnid
