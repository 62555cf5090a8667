#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arrcohom/rat.hpp"

namespace arrcohom {

/// Deterministic seeded randomness source. All sampling goes through raw
/// mt19937_64 output (std::uniform_int_distribution is not portable across
/// standard libraries, so it is avoided); identical seeds give identical
/// streams on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform-ish integer in [lo, hi] via modular reduction. The tiny modulo
    /// bias is irrelevant for genericity sampling.
    int64_t next_in(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(gen_() % span);
    }

    /// Nonzero 63-bit signed integer. Schwartz–Zippel failure bounds in the
    /// reports assume sampling from a set of this size.
    int64_t next_big_nonzero() {
        for (;;) {
            uint64_t u = gen_();
            int64_t x = static_cast<int64_t>(u >> 1);  // [0, 2^63)
            if (x == 0) continue;
            return (u & 1) ? -x : x;
        }
    }

    Rat next_rat_big() { return Rat(mpz_class(next_big_nonzero())); }

    /// Random rational vector with large integer entries.
    VecQ next_point(size_t len) {
        VecQ v(len);
        for (auto& x : v) x = Rat(mpz_class(next_big_nonzero()));
        return v;
    }

    /// Small-entry variant, for places where coefficient growth matters more
    /// than the failure bound (e.g. generic-subspace construction, retried
    /// with a certificate).
    VecQ next_small_point(size_t len, int64_t bound = 1000) {
        VecQ v(len);
        for (auto& x : v) x = Rat(mpz_class(next_in(-bound, bound)));
        return v;
    }

    /// Derive an independent child stream; keeps sampling order stable when
    /// one phase changes how much randomness it consumes.
    Rng child(uint64_t tag) {
        return Rng(gen_() ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace arrcohom
