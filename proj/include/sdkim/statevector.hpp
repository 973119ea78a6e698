#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdkim/model.hpp"

namespace sdkim {

struct StateVector {
    int L = 0;
    std::vector<cplx> amps;

    std::uint64_t size() const { return amps.size(); }
    double norm2() const;  // sum |a_z|^2, compensated
};

// |00...0> on L sites. Throws std::invalid_argument for L < 2 and
// std::length_error (message includes the required bytes) for L > 28.
StateVector init_zero(int L);

// Diagonal Ising half-step: amps[z] *= ising_phase(spec, z).
void apply_ising_layer(StateVector& psi, const CircuitSpec& spec);

// Bulk kick exp(-i b sigma_x) on every site, descending stride (site 1 first).
void apply_kick_layer(StateVector& psi, const CircuitSpec& spec);

// Single-site gate on site j (1-based).
void apply_site_gate(StateVector& psi, int j, const GateU2& u);

// Two-site gate on the bond (j, j+1), 1-based; row index 2 z_j + z_{j+1}.
void apply_bond_gate(StateVector& psi, int j, const GateU4& u);

// One Floquet period. `period` is the 0-based index of the step being
// applied; it seeds the per-period gates of the random variants
// (MidTwoSite, RandomBrickwork), making evolution a pure function of
// (spec, period list). For the boundary variants the kick on site L is
// replaced by the variant gate; MidSingleSite applies its fixed Haar U(2)
// at site ceil(L/2) after the kick layer; MidTwoSite applies a fresh Haar
// U(4) on the central bond; RandomBrickwork replaces the whole step by an
// even-bond then odd-bond layer of independent Haar U(4) gates.
void floquet_step(StateVector& psi, const CircuitSpec& spec, int period);

// Evolve |00...0> by t periods.
StateVector evolve(const CircuitSpec& spec, int t);

// Amplitude of bit-string z (z_1 = most-significant bit). Throws
// std::out_of_range for z >= 2^L.
cplx amplitude(const StateVector& psi, std::uint64_t z);

// Bit-probability dump: a little-endian uint64 header length, a JSON header
// {"format","L","t","spec_hash","count","dtype"}, then 2^L little-endian
// float64 values |a_z|^2 in index order.
void dump_probabilities(const StateVector& psi, const CircuitSpec& spec, int t,
                        const std::string& path);

struct ProbabilityDump {
    int L = 0;
    int t = 0;
    std::string spec_hash;
    std::vector<double> p;
};
ProbabilityDump load_probabilities(const std::string& path);

}  // namespace sdkim
