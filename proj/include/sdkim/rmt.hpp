#pragma once

#include <cstdint>

#include "sdkim/dual.hpp"
#include "sdkim/model.hpp"
#include "sdkim/rng.hpp"

namespace sdkim {

// Haar-distributed U(d): complex Ginibre matrix orthonormalized by modified
// Gram-Schmidt (two passes for numerical orthogonality). Normalizing against
// the positive column norms fixes the QR phase ambiguity — R has a positive
// diagonal, the convention under which Ginibre -> Q pushes forward to the
// Haar measure (cf. arXiv:math-ph/0609050). Unitarity error < 1e-12 for the
// dimensions used here.
Matrix sample_haar(int d, Rng& rng);

GateU2 sample_gate_u2(Rng& rng);
GateU4 sample_gate_u4(Rng& rng);

// E_Haar |<a|U|b>|^{2q} = q! / [d (d+1) ... (d+q-1)] for unit vectors a, b;
// evaluated in log space.
double haar_moment_closed(int d, int q);

struct MomentEstimate {
    int d = 0;
    int q = 0;
    std::uint64_t samples = 0;
    double mean = 0.0;
    double std_error = 0.0;  // sqrt(var / n), var with the n-1 divisor
};

// Monte-Carlo average of |<a|U|b>|^{2q} over n Haar samples with a = e_row,
// b = e_col (unitary invariance makes the choice irrelevant). Sample i draws
// its own generator from derive_seed(seed, {i}), so results are independent
// of threading; `threads` <= 0 picks the hardware default.
MomentEstimate mc_moment(int d, int q, std::uint64_t n, std::uint64_t seed,
                         int row = 0, int col = 0, int threads = 0);

}  // namespace sdkim
