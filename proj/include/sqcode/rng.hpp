#pragma once

#include <cstdint>
#include <vector>

#include "sqcode/errors.hpp"

namespace sqcode {

// xoshiro256** seeded through splitmix64. Self-contained so that seeded
// runs reproduce byte-identically across platforms and standard library
// versions; every randomized operation in the toolkit takes one of these
// explicitly.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased draw from [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        if (bound == 0) throw ParamError("Rng::below: bound must be positive");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Bernoulli(prob) using a 53-bit uniform numerator.
    bool chance(double prob) {
        if (prob <= 0.0) return false;
        if (prob >= 1.0) return true;
        const uint64_t u = next() >> 11;
        return static_cast<double>(u) < prob * 9007199254740992.0;  // 2^53
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // count distinct values from [0, n), returned sorted.
    std::vector<size_t> sample_distinct(size_t n, size_t count);

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4];
};

}  // namespace sqcode
