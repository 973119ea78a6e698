#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace sdkim {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Row-major 2x2 complex matrix: m[0]=m00 m[1]=m01 m[2]=m10 m[3]=m11.
struct GateU2 {
    std::array<cplx, 4> m{};

    static GateU2 identity() { return {{cplx(1, 0), {}, {}, cplx(1, 0)}}; }
    double unitarity_error() const;  // max |U^dag U - 1| entry
};

// Row-major 4x4 complex matrix for two-site gates.
struct GateU4 {
    std::array<cplx, 16> m{};
    double unitarity_error() const;
};

// exp(-i b sigma_x) = [[cos b, -i sin b], [-i sin b, cos b]]
GateU2 kick_gate(double b);

// Circuit variants. The chain is always the kicked Ising model
//   U_F = exp(-i H_K) exp(-i H_I),
//   H_I = J sum_{j=1}^{L-1} s^z_j s^z_{j+1} + sum_j h_j s^z_j,
//   H_K = b sum_j s^x_j,
// open boundary, at the self-dual point J = b = pi/4, except RandomBrickwork
// which replaces the whole period by a brickwork layer pair of Haar gates.
struct DualUnitary {};
struct BoundaryKick {       // kick on the last site replaced by exp(-i theta sigma_x)
    double theta = 0.0;
};
struct BoundaryGeneric {    // kick on the last site replaced by an arbitrary U(2)
    GateU2 u;
};
struct MidSingleSite {      // one Haar U(2) at the chain center, fixed in time
    std::uint64_t seed = 0;
};
struct MidTwoSite {         // Haar U(4) on the central bond, resampled each period
    std::uint64_t seed = 0;
};
struct RandomBrickwork {    // even-bond then odd-bond layers of independent Haar U(4)
    std::uint64_t seed = 0;
};

using Variant = std::variant<DualUnitary, BoundaryKick, BoundaryGeneric,
                             MidSingleSite, MidTwoSite, RandomBrickwork>;

// Site/bit convention used everywhere: site j (1-based) is bit (L - j) of the
// basis index, i.e. z_1 is the most-significant bit.
struct CircuitSpec {
    int L = 0;
    double J = pi / 4;
    double b = pi / 4;
    double g = pi / 3;       // homogeneous longitudinal field value
    std::vector<double> h;   // optional per-site fields; empty = homogeneous g
    Variant variant = DualUnitary{};

    // Field on site j (1-based).
    double field(int j) const { return h.empty() ? g : h[static_cast<size_t>(j - 1)]; }
    bool homogeneous_field() const;
    const char* variant_name() const;

    static CircuitSpec dual_unitary(int L, double g = pi / 3);
    static CircuitSpec boundary_kick(int L, double theta, double g = pi / 3);
    static CircuitSpec boundary_generic(int L, const GateU2& u, double g = pi / 3);
    static CircuitSpec mid_single_site(int L, std::uint64_t seed, double g = pi / 3);
    static CircuitSpec mid_two_site(int L, std::uint64_t seed, double g = pi / 3);
    static CircuitSpec random_brickwork(int L, std::uint64_t seed);
};

// Diagonal phase of the Ising half-step for bit-string z:
//   exp(-i [ J sum s_j s_{j+1} + sum_j h_j s_j ]),  s_j = 1 - 2 z_j.
cplx ising_phase(const CircuitSpec& spec, std::uint64_t z);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

// Checks structural invariants: L >= 2, finite parameters, h empty or length
// L, J = b = pi/4 for every variant except RandomBrickwork, unitary boundary
// gate. Warns (does not error) when the field g sits within 1e-12 of a
// multiple of pi/8, where the measurement-induced single-qubit gate set stops
// being universal and the Haar-emergence picture degenerates.
ValidationReport validate(const CircuitSpec& spec);

// --- serialization -------------------------------------------------------
//
// Two equivalent formats: a key = value config text and a JSON object.
// Angles are written as exact pi-fractions ("pi/3", "-pi/14") when they are
// one, otherwise as decimal literals with 17 significant digits.

std::string to_config_text(const CircuitSpec& spec);
CircuitSpec from_config_text(const std::string& text);

std::string to_json_text(const CircuitSpec& spec);
CircuitSpec from_json_text(const std::string& text);

// FNV-1a over the canonical config text; stable fingerprint used in dump
// headers, run directories and manifests.
std::uint64_t spec_hash(const CircuitSpec& spec);
std::string spec_hash_hex(const CircuitSpec& spec);

}  // namespace sdkim
