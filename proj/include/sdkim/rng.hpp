#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <utility>

namespace sdkim {

// splitmix64 finalizer (Stafford/Vigna constants). Used both as the step
// function of the generator and as the mixer that derives independent
// sub-streams, so any (seed, id...) tuple maps to a reproducible stream
// regardless of thread scheduling.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Fold a list of stream identifiers into a master seed. Each id perturbs the
// state through the full avalanche of mix64, so (seed, a, b) and (seed, a', b)
// collide only with generic hash probability.
template <typename It>
inline std::uint64_t derive_seed(std::uint64_t master, It first, It last) {
    std::uint64_t s = mix64(master ^ 0x5DEECE66DULL);
    for (; first != last; ++first) s = mix64(s ^ (*first + 0x9E3779B97F4A7C15ULL));
    return s;
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> ids) {
    return derive_seed(master, ids.begin(), ids.end());
}

// Counter-based generator: state advances by the golden-ratio increment and
// the output is the mixed counter. Satisfies UniformRandomBitGenerator.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Uniform double in [0, 1) with 53 significant bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // A Box-Muller pair of independent standard normals. Stateless between
    // calls (no cached spare), which keeps sub-stream replay trivial.
    std::pair<double, double> next_gaussian_pair() {
        double u1;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);  // log(0) guard; p = 2^-53 per draw
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2),
                r * std::sin(2.0 * 3.141592653589793238462643383279502884 * u2)};
    }

  private:
    std::uint64_t state_;
};

}  // namespace sdkim
