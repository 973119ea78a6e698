#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "sdkim/rng.hpp"

using namespace sdkim;

TEST_CASE("derive_seed is deterministic and order-sensitive") {
    CHECK(derive_seed(42, {1, 2, 3}) == derive_seed(42, {1, 2, 3}));
    CHECK(derive_seed(42, {1, 2, 3}) != derive_seed(42, {3, 2, 1}));
    CHECK(derive_seed(42, {1}) != derive_seed(43, {1}));
    CHECK(derive_seed(42, {}) != derive_seed(42, {0}));

    // No collisions over a modest id grid under one master seed.
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 64; ++a)
        for (std::uint64_t b = 0; b < 64; ++b) seen.insert(derive_seed(7, {a, b}));
    CHECK(seen.size() == 64u * 64u);
}

TEST_CASE("Rng streams are reproducible and independent") {
    Rng a(123), b(123), c(124);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    bool differs = false;
    Rng a2(123);
    for (int i = 0; i < 100; ++i) differs |= (a2.next() != c.next());
    CHECK(differs);
}

TEST_CASE("next_double is uniform on [0,1)") {
    Rng rng(2024);
    const int n = 100000;
    double sum = 0, sumsq = 0, lo = 1, hi = 0;
    for (int i = 0; i < n; ++i) {
        double x = rng.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        sum += x;
        sumsq += x * x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 0.005);        // ~17 sigma
    CHECK(std::abs(var - 1.0 / 12) < 0.005);
    CHECK(lo < 1e-3);
    CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("next_gaussian_pair has unit variance and no correlation") {
    Rng rng(7);
    const int n = 50000;
    double s1 = 0, s2 = 0, v1 = 0, v2 = 0, cov = 0;
    for (int i = 0; i < n; ++i) {
        auto [x, y] = rng.next_gaussian_pair();
        s1 += x;
        s2 += y;
        v1 += x * x;
        v2 += y * y;
        cov += x * y;
    }
    CHECK(std::abs(s1 / n) < 0.02);
    CHECK(std::abs(s2 / n) < 0.02);
    CHECK(std::abs(v1 / n - 1.0) < 0.03);
    CHECK(std::abs(v2 / n - 1.0) < 0.03);
    CHECK(std::abs(cov / n) < 0.02);
}

TEST_CASE("Rng satisfies UniformRandomBitGenerator") {
    static_assert(std::uniform_random_bit_generator<Rng>);
    // usable with the standard library
    std::vector<int> v(32);
    std::iota(v.begin(), v.end(), 0);
    Rng rng(5);
    std::shuffle(v.begin(), v.end(), rng);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ref(32);
    std::iota(ref.begin(), ref.end(), 0);
    CHECK(sorted == ref);
}
