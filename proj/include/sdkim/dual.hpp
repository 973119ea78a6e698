#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sdkim/model.hpp"

namespace sdkim {

// Dense row-major complex matrix, just large enough for the dual transfer
// algebra (dimension 2^tau).
struct Matrix {
    int n = 0;
    std::vector<cplx> a;

    Matrix() = default;
    explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_) {}
    cplx& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }

    std::vector<cplx> apply(const std::vector<cplx>& v) const;
    double unitarity_error() const;  // max |U^dag U - 1| entry
};

// Space-time-dual representation of the overlap <z|psi(t)>: the L-site,
// t-period evolution of |00...0> factorizes into a product of L transfer
// matrices of dimension 2^tau (tau = t - 1), one per column, selected by the
// bit z_j of that column:
//
//   <z|psi(t)> = 2^{-L/2} <left| U(z_1) U(z_2) ... U(z_L) |right>,
//
//   U(z)  = Htilde^{(x) tau} D(z),   Htilde = (1/sqrt2) [[1, i], [i, 1]],
//   D(z)  diagonal over the tau dual spins y, carrying the intra-column kick
//          chain exp(i pi/4 [s_1 + sum_k s_k s_{k+1} + s_tau (1-2z)]) and the
//          field weight exp(-i h (1 + sum_k s_k)),  s_k = 1 - 2 y_k,
//   |right> = all-ones (norm^2 = 2^tau),
//   <left|  = 2^{-tau/2} e^{-i pi/4 [t(2L-1) + tau]} * all-ones  (norm = 1).
//
// The left phase is chosen so the dual evaluation matches direct evolution
// exactly, including the global phase. U(z) is unitary, so a product of L of
// them conserves the boundary norms and |<z|psi>| <= 2^{-L/2} * 2^{tau/2}.
struct DualTransferSet {
    int L = 0;
    int t = 0;
    int tau = 0;
    Matrix U0, U1;               // U(z = 0), U(z = 1)
    std::vector<cplx> left;      // row covector, prefactors absorbed
    std::vector<cplx> right;     // unperturbed |right> (all-ones)
    // Per-z_L boundary used by the evaluator: U(z)|right> for the pure chain,
    // the perturbed vector for Boundary* variants.
    std::array<std::vector<cplx>, 2> right_z;
    double norm_prefactor = 0.0;  // 2^{-L/2}
};

// Requires a homogeneous field (one D(z) pair must serve every column), the
// self-dual couplings J = b = pi/4, t >= 1 and t <= 12 (the transfer
// dimension 4^tau is dense). Variants DualUnitary / BoundaryKick /
// BoundaryGeneric are representable; the mid-chain and brickwork variants are
// rejected.
DualTransferSet build_dual_set(const CircuitSpec& spec, int t);

// <z|psi(t)> evaluated through the transfer product (z_1 = MSB).
cplx overlap_via_dual(const DualTransferSet& dts, std::uint64_t z);

// Right boundary for a perturbed last-site gate u (taken from the spec's
// variant; DualUnitary uses u = kick(pi/4)): sums the last column's paths
// c = (0, y_1..y_tau, z_L) with u matrix elements in place of the kick
// factors,
//   |R(z)> = (sqrt2 e^{i pi/4})^t Htilde^{(x) tau} r(z),
//   r(z)_y = prod_k u_{c_{k+1}, c_k} * exp(-i h_L (1 + sum_k s_k)).
// Satisfies |R(z)|^2 = 2^t <0|M^t|z> with M the unistochastic matrix of u,
// and reduces to U(z)|right> at u = kick(pi/4).
std::vector<cplx> right_boundary_perturbed(const CircuitSpec& spec, int t, int zL);

// M_ij = |u_ij|^2; doubly stochastic for unitary u (rows/cols sum to 1 within
// rounding), hence symmetric for d = 2 with eigenvalues {1, M00 - M01}.
struct UnistochasticMatrix {
    std::array<double, 4> m{};  // row-major
    double row_sum_error() const;
};
UnistochasticMatrix unistochastic(const GateU2& u);

// <0|M^t|z> through the spectral form of the 2x2 doubly stochastic matrix:
//   <0|M^t|0> = (1 + c^t)/2, <0|M^t|1> = (1 - c^t)/2, c = M00 - M01
// (= cos 2theta for u = kick(theta)). The pair sums to 1 exactly: the entry
// >= 1/2 is computed from the formula and the other as its complement.
double m_element(const GateU2& u, int t, int z);

// Factored IPR for a perturbed right boundary:
//   I_q(t) = I_q^du(t) * 2^{q-1} * sum_z <0|M^t|z>^q.
double ipr_via_m(int L, int t, int q, const GateU2& u);

}  // namespace sdkim
