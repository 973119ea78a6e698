#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sdkim/model.hpp"
#include "sdkim/rmt.hpp"
#include "sdkim/rng.hpp"
#include "sdkim/statevector.hpp"

using namespace sdkim;

namespace {

// Dense single-period oracle, built from first principles (explicit bit
// loops, dense kick kronecker product) so it shares no kernel code with the
// library implementation.
std::vector<cplx> dense_floquet(const CircuitSpec& spec, std::vector<cplx> v) {
    const int L = spec.L;
    const std::size_t N = std::size_t{1} << L;
    // Ising half-step.
    for (std::size_t z = 0; z < N; ++z) {
        double angle = 0;
        for (int j = 1; j < L; ++j) {
            int sj = 1 - 2 * static_cast<int>((z >> (L - j)) & 1);
            int sj1 = 1 - 2 * static_cast<int>((z >> (L - j - 1)) & 1);
            angle += spec.J * sj * sj1;
        }
        for (int j = 1; j <= L; ++j) {
            int sj = 1 - 2 * static_cast<int>((z >> (L - j)) & 1);
            angle += spec.field(j) * sj;
        }
        v[z] *= std::polar(1.0, -angle);
    }
    // Kick half-step as a dense matrix product, one site at a time.
    GateU2 k = kick_gate(spec.b);
    for (int j = 1; j <= L; ++j) {
        std::vector<cplx> w(N, cplx(0, 0));
        for (std::size_t row = 0; row < N; ++row) {
            int rb = static_cast<int>((row >> (L - j)) & 1);
            for (int cb = 0; cb < 2; ++cb) {
                std::size_t col = (row & ~(std::size_t{1} << (L - j))) |
                                  (std::size_t(cb) << (L - j));
                w[row] += k.m[static_cast<std::size_t>(2 * rb + cb)] * v[col];
            }
        }
        v = std::move(w);
    }
    return v;
}

}  // namespace

TEST_CASE("init_zero starts in |00...0> and validates L") {
    StateVector psi = init_zero(4);
    CHECK(psi.amps.size() == 16);
    CHECK(psi.amps[0] == cplx(1, 0));
    CHECK(psi.norm2() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(init_zero(1), std::invalid_argument);
    CHECK_THROWS_AS(init_zero(29), std::length_error);
}

TEST_CASE("floquet_step agrees with the dense oracle") {
    for (int L : {2, 3, 5}) {
        CircuitSpec spec = CircuitSpec::dual_unitary(L);
        if (L == 5) spec.h = {0.3, 1.1, 2.9, 0.05, 4.2};
        StateVector psi = init_zero(L);
        std::vector<cplx> ref = psi.amps;
        for (int t = 0; t < 3; ++t) {
            floquet_step(psi, spec, t);
            ref = dense_floquet(spec, std::move(ref));
        }
        double dev = 0;
        for (std::size_t z = 0; z < ref.size(); ++z)
            dev = std::max(dev, std::abs(psi.amps[z] - ref[z]));
        CAPTURE(L);
        CHECK(dev < 1e-14);
    }
}

TEST_CASE("every variant preserves the norm") {
    Rng rng(3);
    for (const CircuitSpec& spec :
         {CircuitSpec::dual_unitary(6), CircuitSpec::boundary_kick(6, pi / 14),
          CircuitSpec::boundary_generic(6, sample_gate_u2(rng)),
          CircuitSpec::mid_single_site(6, 5), CircuitSpec::mid_two_site(6, 6),
          CircuitSpec::random_brickwork(6, 7)}) {
        StateVector psi = evolve(spec, 10);
        CAPTURE(spec.variant_name());
        CHECK(std::abs(psi.norm2() - 1.0) < 1e-12);
    }
}

TEST_CASE("boundary kick at pi/4 is bit-identical to the dual-unitary chain") {
    StateVector a = evolve(CircuitSpec::dual_unitary(5), 4);
    StateVector b = evolve(CircuitSpec::boundary_kick(5, pi / 4), 4);
    for (std::size_t z = 0; z < a.amps.size(); ++z) CHECK(a.amps[z] == b.amps[z]);
}

TEST_CASE("apply_bond_gate applies a two-site swap correctly") {
    GateU4 swap;
    swap.m[0 * 4 + 0] = 1;
    swap.m[1 * 4 + 2] = 1;
    swap.m[2 * 4 + 1] = 1;
    swap.m[3 * 4 + 3] = 1;
    StateVector psi = init_zero(4);
    Rng rng(9);
    for (auto& a : psi.amps) a = cplx(rng.next_double(), rng.next_double());
    StateVector ref = psi;
    apply_bond_gate(psi, 2, swap);  // swaps sites 2 and 3 (bits 2 and 1)
    for (std::size_t z = 0; z < 16; ++z) {
        std::size_t b2 = (z >> 2) & 1, b1 = (z >> 1) & 1;
        std::size_t zs = (z & ~std::size_t{6}) | (b1 << 2) | (b2 << 1);
        CHECK(psi.amps[z] == ref.amps[zs]);
    }
}

TEST_CASE("amplitude checks bounds") {
    StateVector psi = evolve(CircuitSpec::dual_unitary(3), 1);
    CHECK(amplitude(psi, 7) == psi.amps[7]);
    CHECK_THROWS_AS(amplitude(psi, 8), std::out_of_range);
}

TEST_CASE("mid-bond gate is resampled every period") {
    CircuitSpec spec = CircuitSpec::mid_two_site(5, 123);
    // period-0 gate applied twice vs the true period sequence
    StateVector frozen = init_zero(5);
    floquet_step(frozen, spec, 0);
    floquet_step(frozen, spec, 0);
    StateVector proper = evolve(spec, 2);
    double diff = 0;
    for (std::size_t z = 0; z < frozen.amps.size(); ++z)
        diff = std::max(diff, std::abs(frozen.amps[z] - proper.amps[z]));
    CHECK(diff > 1e-3);

    // while the mid single-site gate is fixed in time
    CircuitSpec s1 = CircuitSpec::mid_single_site(5, 123);
    StateVector f1 = init_zero(5);
    floquet_step(f1, s1, 0);
    floquet_step(f1, s1, 0);
    StateVector p1 = evolve(s1, 2);
    for (std::size_t z = 0; z < f1.amps.size(); ++z)
        CHECK(f1.amps[z] == p1.amps[z]);
}

TEST_CASE("random brickwork is reproducible per seed") {
    StateVector a = evolve(CircuitSpec::random_brickwork(6, 42), 3);
    StateVector b = evolve(CircuitSpec::random_brickwork(6, 42), 3);
    StateVector c = evolve(CircuitSpec::random_brickwork(6, 43), 3);
    double same = 0, diff = 0;
    for (std::size_t z = 0; z < a.amps.size(); ++z) {
        same = std::max(same, std::abs(a.amps[z] - b.amps[z]));
        diff = std::max(diff, std::abs(a.amps[z] - c.amps[z]));
    }
    CHECK(same == 0.0);
    CHECK(diff > 1e-3);
}

TEST_CASE("probability dumps round-trip") {
    namespace fs = std::filesystem;
    CircuitSpec spec = CircuitSpec::dual_unitary(5);
    StateVector psi = evolve(spec, 3);
    fs::path path = fs::temp_directory_path() / "sdkim_test_probs.bin";
    dump_probabilities(psi, spec, 3, path.string());

    ProbabilityDump d = load_probabilities(path.string());
    CHECK(d.L == 5);
    CHECK(d.t == 3);
    CHECK(d.spec_hash == spec_hash_hex(spec));
    REQUIRE(d.p.size() == psi.amps.size());
    for (std::size_t z = 0; z < d.p.size(); ++z)
        CHECK(d.p[z] == std::norm(psi.amps[z]));

    // Truncated payload must be rejected.
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "short";
    out.close();
    CHECK_THROWS(load_probabilities(path.string()));
    fs::remove(path);
}
