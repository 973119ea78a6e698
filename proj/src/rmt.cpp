#include "sdkim/rmt.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace sdkim {

Matrix sample_haar(int d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("sample_haar: d must be >= 1");
    Matrix a(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            auto [x, y] = rng.next_gaussian_pair();
            // Ginibre normalization is irrelevant after orthonormalization.
            a.at(r, c) = cplx(x, y);
        }

    // Modified Gram-Schmidt over columns, two passes for orthogonality to
    // working precision. Dividing by the positive column norm makes R's
    // diagonal positive, which is the phase convention under which the
    // resulting Q is exactly Haar distributed.
    for (int j = 0; j < d; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                cplx proj = 0.0;
                for (int r = 0; r < d; ++r) proj += std::conj(a.at(r, i)) * a.at(r, j);
                for (int r = 0; r < d; ++r) a.at(r, j) -= proj * a.at(r, i);
            }
        double nrm2 = 0.0;
        for (int r = 0; r < d; ++r) nrm2 += std::norm(a.at(r, j));
        double inv = 1.0 / std::sqrt(nrm2);
        for (int r = 0; r < d; ++r) a.at(r, j) *= inv;
    }
    return a;
}

GateU2 sample_gate_u2(Rng& rng) {
    Matrix m = sample_haar(2, rng);
    GateU2 u;
    for (int i = 0; i < 4; ++i) u.m[static_cast<size_t>(i)] = m.a[static_cast<size_t>(i)];
    return u;
}

GateU4 sample_gate_u4(Rng& rng) {
    Matrix m = sample_haar(4, rng);
    GateU4 u;
    for (int i = 0; i < 16; ++i) u.m[static_cast<size_t>(i)] = m.a[static_cast<size_t>(i)];
    return u;
}

double haar_moment_closed(int d, int q) {
    if (d < 1 || q < 1) throw std::invalid_argument("haar_moment_closed: d, q >= 1");
    double log_m = std::lgamma(q + 1.0);
    for (int k = 0; k < q; ++k) log_m -= std::log(static_cast<double>(d) + k);
    return std::exp(log_m);
}

MomentEstimate mc_moment(int d, int q, std::uint64_t n, std::uint64_t seed,
                         int row, int col, int threads) {
    if (n < 2) throw std::invalid_argument("mc_moment: need n >= 2 samples");
    if (row < 0 || row >= d || col < 0 || col >= d)
        throw std::invalid_argument("mc_moment: row/col out of range");

    unsigned hw = std::thread::hardware_concurrency();
    if (threads <= 0) threads = hw ? static_cast<int>(hw) : 1;
    threads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n));

    // Deterministic under any thread scheduling: sample i always draws from
    // derive_seed(seed, {i}), worker w owns the fixed residue class i = w
    // (mod threads), and partial sums are combined in worker-index order.
    std::vector<double> sum(static_cast<size_t>(threads), 0.0);
    std::vector<double> sum2(static_cast<size_t>(threads), 0.0);
    auto worker = [&](int w) {
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t i = w; i < n; i += static_cast<std::uint64_t>(threads)) {
            Rng rng(derive_seed(seed, {i}));
            Matrix u = sample_haar(d, rng);
            double p = std::norm(u.at(row, col));
            double x = 1.0;
            for (int k = 0; k < q; ++k) x *= p;
            s += x;
            s2 += x * x;
        }
        sum[static_cast<size_t>(w)] = s;
        sum2[static_cast<size_t>(w)] = s2;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    double s = 0.0, s2 = 0.0;
    for (int w = 0; w < threads; ++w) {
        s += sum[static_cast<size_t>(w)];
        s2 += sum2[static_cast<size_t>(w)];
    }
    MomentEstimate est;
    est.d = d;
    est.q = q;
    est.samples = n;
    est.mean = s / static_cast<double>(n);
    double var = (s2 - static_cast<double>(n) * est.mean * est.mean) /
                 (static_cast<double>(n) - 1.0);
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    return est;
}

}  // namespace sdkim
