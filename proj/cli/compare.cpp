#include "compare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sdkim/fockspace.hpp"
#include "sdkim/rng.hpp"
#include "sdkim/statevector.hpp"

namespace sdkim {
namespace {

constexpr std::uint64_t kTagCompare = 0x636D7072;  // "cmpr"

std::uint64_t model_id(const std::string& model) {
    if (model == "dual") return 1;
    if (model == "random") return 2;
    if (model == "mid1") return 3;
    if (model == "mid2") return 4;
    if (model == "kick") return 5;
    throw std::invalid_argument("unknown model '" + model +
                                "' (expected dual, random, mid1, mid2 or kick)");
}

}  // namespace

CircuitSpec compare_realization_spec(const std::string& model, int L, double theta,
                                     std::uint64_t seed, int r) {
    std::uint64_t rs = derive_seed(
        seed, {kTagCompare, model_id(model), static_cast<std::uint64_t>(L),
               static_cast<std::uint64_t>(r)});
    if (model == "random") return CircuitSpec::random_brickwork(L, rs);

    CircuitSpec spec;
    if (model == "dual") {
        spec = CircuitSpec::dual_unitary(L);
    } else if (model == "mid1") {
        spec = CircuitSpec::mid_single_site(L, derive_seed(rs, {1}));
    } else if (model == "mid2") {
        spec = CircuitSpec::mid_two_site(L, derive_seed(rs, {1}));
    } else {  // kick
        spec = CircuitSpec::boundary_kick(L, theta);
    }
    // Fresh longitudinal fields per realization. The closed forms are
    // independent of h, but a homogeneous commensurate field produces weak
    // S_2 revivals that can graze the ergodic window at isolated (L, t);
    // averaging over fields removes that lattice artifact.
    Rng rng(derive_seed(rs, {2}));
    spec.h.resize(static_cast<std::size_t>(L));
    for (auto& hj : spec.h) hj = 2.0 * pi * rng.next_double();
    return spec;
}

std::vector<CompareCurve> run_compare(const CompareConfig& cfg) {
    if (cfg.t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    if (cfg.realizations < 1) throw std::invalid_argument("realizations must be >= 1");
    for (const auto& m : cfg.models) model_id(m);  // validate names up front

    std::vector<CompareCurve> out;
    for (const auto& model : cfg.models) {
        for (int L : cfg.sizes) {
            const int R = cfg.realizations, T = cfg.t_max;
            std::vector<std::vector<double>> curves(static_cast<std::size_t>(R));

            int nthreads = cfg.threads > 0
                               ? cfg.threads
                               : static_cast<int>(std::thread::hardware_concurrency());
            nthreads = std::clamp(nthreads, 1, R);

            // Workers grab realization indices; each curve lands in its own
            // slot and the reduction below is sequential, so the result does
            // not depend on scheduling or thread count.
            std::atomic<int> next{0};
            auto body = [&] {
                for (int r; (r = next.fetch_add(1)) < R;) {
                    CircuitSpec spec =
                        compare_realization_spec(model, L, cfg.theta, cfg.seed, r);
                    StateVector psi = init_zero(L);
                    auto& curve = curves[static_cast<std::size_t>(r)];
                    curve.resize(static_cast<std::size_t>(T));
                    for (int t = 1; t <= T; ++t) {
                        floquet_step(psi, spec, t - 1);
                        curve[static_cast<std::size_t>(t - 1)] =
                            participation_entropy(ipr(psi, 2), 2);
                    }
                }
            };
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(nthreads));
            for (int w = 0; w < nthreads; ++w) pool.emplace_back(body);
            for (auto& th : pool) th.join();

            CompareCurve c;
            c.model = model;
            c.L = L;
            c.s2.resize(static_cast<std::size_t>(T));
            c.sem.resize(static_cast<std::size_t>(T));
            for (int k = 0; k < T; ++k) {
                double mean = 0.0;
                for (int r = 0; r < R; ++r) mean += curves[r][k];
                mean /= R;
                double var = 0.0;
                for (int r = 0; r < R; ++r) {
                    double d = curves[r][k] - mean;
                    var += d * d;
                }
                c.s2[static_cast<std::size_t>(k)] = mean;
                c.sem[static_cast<std::size_t>(k)] =
                    R > 1 ? std::sqrt(var / (static_cast<double>(R) * (R - 1))) : 0.0;
            }
            const double target = (L - 1) * std::numbers::ln2;
            for (int k = 0; k < T; ++k) {
                if (std::abs(c.s2[static_cast<std::size_t>(k)] - target) < cfg.window) {
                    c.t_star = k + 1;
                    break;
                }
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace sdkim
