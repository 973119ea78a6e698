#include "sdkim/dual.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "sdkim/fockspace.hpp"

namespace sdkim {

std::vector<cplx> Matrix::apply(const std::vector<cplx>& v) const {
    std::vector<cplx> out(static_cast<size_t>(n), cplx(0, 0));
    for (int r = 0; r < n; ++r) {
        cplx acc = 0.0;
        const cplx* row = &a[static_cast<size_t>(r) * n];
        for (int c = 0; c < n; ++c) acc += row[c] * v[static_cast<size_t>(c)];
        out[static_cast<size_t>(r)] = acc;
    }
    return out;
}

double Matrix::unitarity_error() const {
    double err = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += std::conj(at(k, i)) * at(k, j);
            if (i == j) s -= 1.0;
            err = std::max(err, std::abs(s));
        }
    return err;
}

namespace {

// Shared preconditions of the dual constructions.
void check_dualizable(const CircuitSpec& spec, int t) {
    if (t < 1) throw std::invalid_argument("dual construction needs t >= 1");
    if (t > 12)
        throw std::invalid_argument(
            "dual construction stores dense 2^(t-1) transfer matrices; t <= 12");
    if (spec.J != pi / 4 || spec.b != pi / 4)
        throw std::invalid_argument(
            "dual construction requires the self-dual couplings J = b = pi/4");
    if (!spec.homogeneous_field())
        throw std::invalid_argument(
            "dual construction requires a homogeneous field (one transfer pair "
            "must serve every column)");
    bool ok = std::holds_alternative<DualUnitary>(spec.variant) ||
              std::holds_alternative<BoundaryKick>(spec.variant) ||
              std::holds_alternative<BoundaryGeneric>(spec.variant);
    if (!ok)
        throw std::invalid_argument(
            "dual construction covers the pure chain and last-site "
            "perturbations only");
}

// Diagonal of D(z): the intra-column kick chain over the tau dual spins plus
// the field weight. s_k = 1 - 2 y_k with y_1 the most-significant dual bit
// (nearest the initial time slice), sigma = 1 - 2 z.
cplx d_diag(int tau, double h, int z, std::uint64_t y) {
    int sigma = 1 - 2 * z;
    if (tau == 0) return std::polar(1.0, (pi / 4) * sigma - h);
    int s1 = 1 - 2 * static_cast<int>((y >> (tau - 1)) & 1);
    int stau = 1 - 2 * static_cast<int>(y & 1);
    // sum_{k=1}^{tau-1} s_k s_{k+1} = (tau - 1) - 2 * #(adjacent differences)
    std::uint64_t diff = (y ^ (y >> 1)) & ((std::uint64_t(1) << (tau - 1)) - 1);
    int chain = (tau - 1) - 2 * std::popcount(diff);
    int ssum = tau - 2 * std::popcount(y);
    double angle = (pi / 4) * (s1 + chain + stau * sigma) - h * (1 + ssum);
    return std::polar(1.0, angle);
}

// Powers of i indexed mod 4.
cplx ipow(int k) {
    switch (k & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

std::vector<cplx> right_boundary_perturbed(const CircuitSpec& spec, int t, int zL) {
    check_dualizable(spec, t);
    if (zL != 0 && zL != 1)
        throw std::invalid_argument("right_boundary_perturbed: zL must be 0 or 1");

    GateU2 u = kick_gate(pi / 4);
    if (const auto* bk = std::get_if<BoundaryKick>(&spec.variant))
        u = kick_gate(bk->theta);
    else if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant))
        u = bg->u;

    const int tau = t - 1;
    const std::uint64_t dim = std::uint64_t(1) << tau;
    const double h = spec.field(spec.L);

    // r(z)_y: product of u elements along the last column's temporal path
    // c = (0, y_1..y_tau, z), times the field weight of the free slices.
    std::vector<cplx> r(dim);
    for (std::uint64_t y = 0; y < dim; ++y) {
        cplx w(1, 0);
        int prev = 0;
        for (int k = 1; k <= tau; ++k) {
            int cur = static_cast<int>((y >> (tau - k)) & 1);
            w *= u.m[static_cast<size_t>(2 * cur + prev)];
            prev = cur;
        }
        w *= u.m[static_cast<size_t>(2 * zL + prev)];
        int ssum = tau - 2 * std::popcount(y);
        r[y] = w * std::polar(1.0, -h * (1 + ssum));
    }

    // |R(z)> = (sqrt2 e^{i pi/4})^t Htilde^{(x)tau} r(z); Htilde^{(x)tau} has
    // elements 2^{-tau/2} i^{hamming(y' ^ y)}.
    const cplx scale =
        std::polar(std::pow(2.0, 0.5 * t - 0.5 * tau), (pi / 4) * t);
    std::vector<cplx> out(dim, cplx(0, 0));
    for (std::uint64_t yp = 0; yp < dim; ++yp) {
        cplx acc = 0.0;
        for (std::uint64_t y = 0; y < dim; ++y)
            acc += ipow(std::popcount(yp ^ y)) * r[y];
        out[yp] = scale * acc;
    }
    return out;
}

DualTransferSet build_dual_set(const CircuitSpec& spec, int t) {
    check_dualizable(spec, t);

    DualTransferSet dts;
    dts.L = spec.L;
    dts.t = t;
    dts.tau = t - 1;
    const int tau = dts.tau;
    const std::uint64_t dim = std::uint64_t(1) << tau;
    const double h = spec.field(1);
    const double hd = std::pow(2.0, -0.5 * tau);

    for (int z = 0; z < 2; ++z) {
        Matrix U(static_cast<int>(dim));
        for (std::uint64_t y = 0; y < dim; ++y) {
            cplx d = d_diag(tau, h, z, y);
            for (std::uint64_t yp = 0; yp < dim; ++yp)
                U.at(static_cast<int>(yp), static_cast<int>(y)) =
                    hd * ipow(std::popcount(yp ^ y)) * d;
        }
        (z == 0 ? dts.U0 : dts.U1) = std::move(U);
    }

    // <left| = 2^{-tau/2} e^{-i pi/4 [t(2L-1) + tau]} * ones ; |right> = ones.
    const cplx lphase =
        std::polar(hd, -(pi / 4) * (static_cast<double>(t) * (2 * spec.L - 1) + tau));
    dts.left.assign(dim, lphase);
    dts.right.assign(dim, cplx(1, 0));
    dts.norm_prefactor = std::pow(2.0, -0.5 * spec.L);

    if (std::holds_alternative<DualUnitary>(spec.variant)) {
        dts.right_z[0] = dts.U0.apply(dts.right);
        dts.right_z[1] = dts.U1.apply(dts.right);
    } else {
        dts.right_z[0] = right_boundary_perturbed(spec, t, 0);
        dts.right_z[1] = right_boundary_perturbed(spec, t, 1);
    }
    return dts;
}

cplx overlap_via_dual(const DualTransferSet& dts, std::uint64_t z) {
    if (z >> dts.L)
        throw std::out_of_range("overlap_via_dual: bit-string index out of range");
    // Columns L-1 .. 1 act on the z_L-selected right boundary.
    std::vector<cplx> v = dts.right_z[z & 1];
    for (int j = dts.L - 1; j >= 1; --j) {
        int zj = static_cast<int>((z >> (dts.L - j)) & 1);
        v = (zj == 0 ? dts.U0 : dts.U1).apply(v);
    }
    cplx acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) acc += dts.left[i] * v[i];
    return dts.norm_prefactor * acc;
}

UnistochasticMatrix unistochastic(const GateU2& u) {
    UnistochasticMatrix m;
    for (int i = 0; i < 4; ++i) m.m[static_cast<size_t>(i)] = std::norm(u.m[static_cast<size_t>(i)]);
    return m;
}

double UnistochasticMatrix::row_sum_error() const {
    double err = 0.0;
    err = std::max(err, std::abs(m[0] + m[1] - 1.0));
    err = std::max(err, std::abs(m[2] + m[3] - 1.0));
    err = std::max(err, std::abs(m[0] + m[2] - 1.0));
    err = std::max(err, std::abs(m[1] + m[3] - 1.0));
    return err;
}

double m_element(const GateU2& u, int t, int z) {
    if (t < 0) throw std::invalid_argument("m_element: t must be >= 0");
    if (z != 0 && z != 1) throw std::invalid_argument("m_element: z must be 0 or 1");
    UnistochasticMatrix M = unistochastic(u);
    // 2x2 doubly stochastic: eigenvalues {1, c}, c = M00 - M01, and
    //   <0|M^t|0> = (1 + c^t)/2,  <0|M^t|1> = (1 - c^t)/2.
    // Computing the entry >= 1/2 from the formula and the other one as its
    // exact complement keeps <0|M^t|0> + <0|M^t|1> = 1 to the last bit.
    double c = M.m[0] - M.m[1];
    double ct = 1.0;
    for (int k = 0; k < t; ++k) ct *= c;
    if (ct >= 0.0) {
        double big = 0.5 * (1.0 + ct);          // >= 1/2
        return z == 0 ? big : 1.0 - big;
    }
    double big = 0.5 * (1.0 - ct);              // >= 1/2
    return z == 1 ? big : 1.0 - big;
}

double ipr_via_m(int L, int t, int q, const GateU2& u) {
    double factor = 0.0;
    for (int z = 0; z < 2; ++z) {
        double mz = m_element(u, t, z);
        double term = 1.0;
        for (int k = 0; k < q; ++k) term *= mz;
        factor += term;
    }
    return ipr_du_analytic(L, t, q) * std::exp2(q - 1) * factor;
}

}  // namespace sdkim
