#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sdkim/model.hpp"
#include "sdkim/statevector.hpp"

namespace sdkim {

// ---- participation moments ----------------------------------------------

// I_q = sum_z |a_z|^{2q}, q >= 1 integer, compensated (Neumaier) summation.
double ipr(const StateVector& psi, int q);

// S_q = ln(I_q) / (1 - q), q >= 2.
double participation_entropy(double ipr_value, int q);

// Haar-random-state value q! 2^{L(1-q)}; the normalization used for ratios.
double haar_ipr(int L, int q);

// Exact dual-unitary closed form at time t >= 1 (tau = t - 1):
//   I_q(t) = 2^{L(1-q)} q! 2^{q tau} / [2^tau (2^tau+1) ... (2^tau+q-1)],
// evaluated in log space as
//   ln I_q = (1-q) L ln2 + ln q! - sum_{k=0}^{q-1} ln(1 + k 2^{-tau}).
double ipr_du_analytic(int L, int t, int q);

// S_q of the closed form, computed directly in log space (finite even when
// I_q underflows). q >= 2.
double s_q_du_analytic(int L, int t, int q);

// Ratio I_q / haar_ipr of the closed form = 1 / prod_k (1 + k 2^{-tau}).
double haar_ratio_du_analytic(int t, int q);

// Boundary-kick perturbation exp(-i theta sigma_x) on the last site:
//   I_q(t) = I_q^du(t) * [ (1+c)^q + (1-c)^q ] / 2,  c = cos(2 theta)^t.
double ipr_perturbed_analytic(int L, int t, int q, double theta);

// ---- overlap densities ----------------------------------------------------

// Finite-time overlap density of p = |<z|psi(t)>|^2 for the dual-unitary
// chain, t >= 2, N = 2^L, tau = t - 1:
//   P(p) = N (1 - 2^-tau) (1 - N p / 2^tau)^(2^tau - 2)  on [0, 2^tau / N].
double p_du_density(double p, int L, int t);

// tau -> infinity limit: N exp(-N p).
double porter_thomas_density(double p, int L);

// Continuous part of the boundary-kick perturbed density,
//   P(p) = 1/2 [ P_du(p/c+)/c+ + P_du(p/c-)/c- ],  c± = 1 ± cos(2 theta)^t.
// When c- < 1e-12 the second component degenerates to a point mass of weight
// 1/2 at p = 0; that atom is NOT part of this function, callers receive it
// through perturbed_distribution().
double p_perturbed_density(double p, int L, int t, double theta);

// ---- distribution objects --------------------------------------------------

struct PointMass {
    double p = 0.0;
    double w = 0.0;
};

// A reference distribution on p in [0, 1]: continuous pdf plus point masses.
// cdf is right-continuous and includes the atoms. `breakpoints` are quadrature
// hints (support edges of mixture components).
struct OverlapDistribution {
    int L = 0;
    double support_hi = 0.0;  // upper edge of the continuous support
    std::vector<PointMass> atoms;
    std::vector<double> breakpoints;
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
};

OverlapDistribution du_distribution(int L, int t);          // t = 1 -> atom at 2^-L
OverlapDistribution porter_thomas_distribution(int L);
OverlapDistribution perturbed_distribution(int L, int t, double theta);
// General last-site gate u: component weights c_z = 2 <0|M^t|z> from the
// unistochastic matrix of u (boundary-kick is the special case).
OverlapDistribution perturbed_distribution_u(int L, int t, const GateU2& u);

// Integral of the distribution (continuous part by adaptive Simpson over the
// breakpoint panels + atom weights). Equals 1 for a normalized density.
double normalization(const OverlapDistribution& dist);

// q-th moment 2^L * [ integral p^q pdf dp + sum_i w_i p_i^q ]; for a correct
// reference this reproduces the corresponding I_q. q >= 0.
double moment_of_density(const OverlapDistribution& dist, int q);

// ---- empirical statistics ---------------------------------------------------

// Equal-width bins in x = N p over [0, np_max] plus a dedicated bucket for
// exact zeros (theta = 0 freezes half the amplitudes at 0.0 bit-exactly).
// np_max <= 0 selects the smallest range containing every nonzero sample.
struct OverlapHistogram {
    int L = 0;
    int bins = 0;
    double np_max = 0.0;
    std::uint64_t total = 0;       // number of samples = 2^L
    std::uint64_t zero_count = 0;  // exact p == 0.0 samples
    std::vector<std::uint64_t> counts;
    double bin_lo(int i) const;    // in p units
    double bin_hi(int i) const;
    double density(int i) const;   // count / (total * bin width in p)
};

OverlapHistogram histogram(const StateVector& psi, int bins, double np_max = 0.0);

// Kolmogorov-Smirnov distance sup_p |F_emp(p) - F_ref(p)| between the 2^L
// sample probabilities and a reference distribution. Samples within relative
// tolerance 1e-9 of a reference atom are counted as sitting exactly on it
// (floating-point evolution smears degenerate values by ~1e-15 relatively;
// without the snap a pure point mass could never be matched).
double ks_statistic(const StateVector& psi, const OverlapDistribution& ref);
double ks_statistic(std::vector<double> samples, const OverlapDistribution& ref);

}  // namespace sdkim
