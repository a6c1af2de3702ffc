#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace epitag {

// SplitMix64 round; used only to spread seeds, never as the sampling stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from (seed, salt). Deterministic, so
// per-walker and per-hashtag streams do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(splitmix64(seed) ^ splitmix64(salt + 0x632be59bd9b4e019ULL));
}

// FNV-1a, for mixing strings (hashtag, location) into stream seeds.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic uniform stream on top of mt19937_64 (whose output sequence is
// fixed by the standard). Doubles come straight from the top 53 bits rather
// than uniform_real_distribution, which is implementation-specified.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1).
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, n); n must be small (bias ~2^-53).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(u01() * static_cast<double>(n));
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Marsaglia polar method; deterministic given the u01 stream.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // For std:: distributions (Poisson in synth); deterministic per platform.
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace epitag
