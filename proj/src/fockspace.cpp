#include "sdkim/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sdkim/dual.hpp"

namespace sdkim {

namespace {

struct NeumaierSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

double pow_int(double x, int q) {
    double r = 1.0;
    for (int k = 0; k < q; ++k) r *= x;
    return r;
}

void check_q(int q, int min_q) {
    if (q < min_q)
        throw std::invalid_argument("moment order q must be >= " + std::to_string(min_q));
}

}  // namespace

double ipr(const StateVector& psi, int q) {
    check_q(q, 1);
    NeumaierSum acc;
    for (const cplx& a : psi.amps) acc.add(pow_int(std::norm(a), q));
    return acc.value();
}

double participation_entropy(double ipr_value, int q) {
    check_q(q, 2);
    return std::log(ipr_value) / (1.0 - q);
}

double haar_ipr(int L, int q) {
    check_q(q, 1);
    return std::exp(std::lgamma(q + 1.0) + (1.0 - q) * L * std::numbers::ln2);
}

double ipr_du_analytic(int L, int t, int q) {
    check_q(q, 1);
    if (t < 1) throw std::invalid_argument("ipr_du_analytic: t must be >= 1");
    int tau = t - 1;
    double log_i = (1.0 - q) * L * std::numbers::ln2 + std::lgamma(q + 1.0);
    double w = std::exp2(-tau);
    for (int k = 0; k < q; ++k) log_i -= std::log1p(k * w);
    return std::exp(log_i);
}

double s_q_du_analytic(int L, int t, int q) {
    check_q(q, 2);
    if (t < 1) throw std::invalid_argument("s_q_du_analytic: t must be >= 1");
    int tau = t - 1;
    double w = std::exp2(-tau);
    double bracket = std::lgamma(q + 1.0);
    for (int k = 0; k < q; ++k) bracket -= std::log1p(k * w);
    return L * std::numbers::ln2 + bracket / (1.0 - q);
}

double haar_ratio_du_analytic(int t, int q) {
    check_q(q, 1);
    if (t < 1) throw std::invalid_argument("haar_ratio_du_analytic: t must be >= 1");
    double w = std::exp2(-(t - 1));
    double log_r = 0.0;
    for (int k = 0; k < q; ++k) log_r -= std::log1p(k * w);
    return std::exp(log_r);
}

double ipr_perturbed_analytic(int L, int t, int q, double theta) {
    check_q(q, 1);
    if (t < 1) throw std::invalid_argument("ipr_perturbed_analytic: t must be >= 1");
    double c = pow_int(std::cos(2.0 * theta), t);
    double factor = 0.5 * (pow_int(1.0 + c, q) + pow_int(1.0 - c, q));
    return ipr_du_analytic(L, t, q) * factor;
}

// ---- densities -------------------------------------------------------------

double p_du_density(double p, int L, int t) {
    if (t < 2) throw std::invalid_argument("p_du_density: defined for t >= 2");
    double N = std::exp2(L);
    double d = std::exp2(t - 1);
    double x = N * p / d;  // in [0, 1] on the support
    if (p < 0.0 || x > 1.0) return 0.0;
    double amp = N * (1.0 - 1.0 / d);
    if (d == 2.0) return amp;  // exponent 0: uniform plateau, avoid 0 * log(0)
    return amp * std::exp((d - 2.0) * std::log1p(-x));
}

double porter_thomas_density(double p, int L) {
    double N = std::exp2(L);
    return p < 0.0 ? 0.0 : N * std::exp(-N * p);
}

double p_perturbed_density(double p, int L, int t, double theta) {
    if (t < 2) throw std::invalid_argument("p_perturbed_density: defined for t >= 2");
    double c = pow_int(std::cos(2.0 * theta), t);
    double cp = 1.0 + c, cm = 1.0 - c;
    double val = 0.5 * p_du_density(p / cp, L, t) / cp;
    if (cm >= 1e-12) val += 0.5 * p_du_density(p / cm, L, t) / cm;
    return val;  // cm < 1e-12: that half of the weight is the atom at p = 0
}

// ---- distribution objects ---------------------------------------------------

namespace {

// cdf of the dual-unitary density: 1 - (1 - Np/2^tau)^(2^tau - 1).
double du_cdf(double p, int L, int t) {
    double N = std::exp2(L);
    double d = std::exp2(t - 1);
    double x = N * p / d;
    if (p < 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return -std::expm1((d - 1.0) * std::log1p(-x));
}

std::vector<double> dyadic_breakpoints(double scale, double hi) {
    std::vector<double> bp{0.0};
    for (double x = scale; x < hi; x *= 2.0) bp.push_back(x);
    bp.push_back(hi);
    return bp;
}

void merge_breakpoints(std::vector<double>& bp, const std::vector<double>& more) {
    bp.insert(bp.end(), more.begin(), more.end());
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
}

}  // namespace

OverlapDistribution du_distribution(int L, int t) {
    if (t < 1) throw std::invalid_argument("du_distribution: t must be >= 1");
    OverlapDistribution dist;
    dist.L = L;
    double N = std::exp2(L);
    if (t == 1) {
        // Every overlap sits at 2^-L: a pure point mass.
        dist.support_hi = 0.0;
        dist.atoms = {{1.0 / N, 1.0}};
        dist.breakpoints = {0.0};
        dist.pdf = [](double) { return 0.0; };
        double at = 1.0 / N;
        dist.cdf = [at](double p) { return p >= at ? 1.0 : 0.0; };
        return dist;
    }
    double d = std::exp2(t - 1);
    dist.support_hi = d / N;
    dist.breakpoints = dyadic_breakpoints(1.0 / N, dist.support_hi);
    dist.pdf = [L, t](double p) { return p_du_density(p, L, t); };
    dist.cdf = [L, t](double p) { return du_cdf(p, L, t); };
    return dist;
}

OverlapDistribution porter_thomas_distribution(int L) {
    OverlapDistribution dist;
    dist.L = L;
    double N = std::exp2(L);
    // Truncate the quadrature support at Np = 64 (tail mass ~ 1.6e-28);
    // the cdf stays exact everywhere.
    dist.support_hi = 64.0 / N;
    dist.breakpoints = dyadic_breakpoints(1.0 / N, dist.support_hi);
    dist.pdf = [L](double p) { return porter_thomas_density(p, L); };
    dist.cdf = [N](double p) { return p < 0.0 ? 0.0 : -std::expm1(-N * p); };
    return dist;
}

OverlapDistribution perturbed_distribution_u(int L, int t, const GateU2& u) {
    if (t < 1) throw std::invalid_argument("perturbed_distribution_u: t must be >= 1");
    OverlapDistribution dist;
    dist.L = L;
    double N = std::exp2(L);
    const double c[2] = {2.0 * m_element(u, t, 0), 2.0 * m_element(u, t, 1)};

    if (t == 1) {
        dist.support_hi = 0.0;
        dist.breakpoints = {0.0};
        for (int z = 0; z < 2; ++z) {
            double at = c[z] / N;
            bool merged = false;
            for (auto& a : dist.atoms)
                if (a.p == at) {
                    a.w += 0.5;
                    merged = true;
                }
            if (!merged) dist.atoms.push_back({at, 0.5});
        }
        std::sort(dist.atoms.begin(), dist.atoms.end(),
                  [](const PointMass& a, const PointMass& b) { return a.p < b.p; });
        dist.pdf = [](double) { return 0.0; };
        auto atoms = dist.atoms;
        dist.cdf = [atoms](double p) {
            double f = 0.0;
            for (const auto& a : atoms)
                if (p >= a.p) f += a.w;
            return f;
        };
        return dist;
    }

    double d = std::exp2(t - 1);
    dist.support_hi = 0.0;
    dist.breakpoints = {0.0};
    for (int z = 0; z < 2; ++z) {
        if (c[z] < 1e-12) {
            dist.atoms.push_back({0.0, 0.5});
            continue;
        }
        double hi = c[z] * d / N;
        dist.support_hi = std::max(dist.support_hi, hi);
        merge_breakpoints(dist.breakpoints, dyadic_breakpoints(c[z] / N, hi));
    }
    double c0 = c[0], c1 = c[1];
    dist.pdf = [L, t, c0, c1](double p) {
        double v = 0.0;
        if (c0 >= 1e-12) v += 0.5 * p_du_density(p / c0, L, t) / c0;
        if (c1 >= 1e-12) v += 0.5 * p_du_density(p / c1, L, t) / c1;
        return v;
    };
    dist.cdf = [L, t, c0, c1](double p) {
        double f = 0.0;
        f += 0.5 * (c0 >= 1e-12 ? du_cdf(p / c0, L, t) : (p >= 0.0 ? 1.0 : 0.0));
        f += 0.5 * (c1 >= 1e-12 ? du_cdf(p / c1, L, t) : (p >= 0.0 ? 1.0 : 0.0));
        return f;
    };
    return dist;
}

OverlapDistribution perturbed_distribution(int L, int t, double theta) {
    return perturbed_distribution_u(L, t, kick_gate(theta));
}

// ---- quadrature -------------------------------------------------------------

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(const F& f, double a, double fa, double b, double fb, double m,
             double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate_panel(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

template <class F>
double integrate_over(const OverlapDistribution& dist, const F& f) {
    std::vector<double> bp = dist.breakpoints;
    if (bp.empty()) bp = {0.0, dist.support_hi};
    if (bp.back() < dist.support_hi) bp.push_back(dist.support_hi);
    // Pass 1: coarse panel estimates set the absolute tolerance scale.
    double coarse = 0.0;
    std::vector<double> est(bp.size() - 1, 0.0);
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        double a = bp[i], b = bp[i + 1];
        if (!(b > a)) continue;
        est[i] = std::abs(simpson(a, f(a), b, f(b), f(0.5 * (a + b))));
        coarse += est[i];
    }
    if (coarse == 0.0) coarse = 1e-300;
    // Pass 2: adaptive refinement, per-panel share of a 1e-11 relative target.
    double total = 0.0;
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        double tol = 1e-11 * std::max(est[i], 1e-6 * coarse) + 1e-300;
        total += integrate_panel(f, bp[i], bp[i + 1], tol);
    }
    return total;
}

}  // namespace

double normalization(const OverlapDistribution& dist) {
    double total = dist.support_hi > 0.0
                       ? integrate_over(dist, [&dist](double p) { return dist.pdf(p); })
                       : 0.0;
    for (const auto& a : dist.atoms) total += a.w;
    return total;
}

double moment_of_density(const OverlapDistribution& dist, int q) {
    check_q(q, 0);
    double integral = 0.0;
    if (dist.support_hi > 0.0)
        integral = integrate_over(dist, [&dist, q](double p) {
            return pow_int(p, q) * dist.pdf(p);
        });
    for (const auto& a : dist.atoms) integral += a.w * pow_int(a.p, q);
    return std::exp2(dist.L) * integral;
}

// ---- empirical statistics ----------------------------------------------------

double OverlapHistogram::bin_lo(int i) const {
    return np_max * i / (bins * std::exp2(L));
}

double OverlapHistogram::bin_hi(int i) const {
    return np_max * (i + 1) / (bins * std::exp2(L));
}

double OverlapHistogram::density(int i) const {
    double width = bin_hi(i) - bin_lo(i);
    return counts[static_cast<size_t>(i)] / (static_cast<double>(total) * width);
}

OverlapHistogram histogram(const StateVector& psi, int bins, double np_max) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    OverlapHistogram h;
    h.L = psi.L;
    h.bins = bins;
    h.total = psi.size();
    h.counts.assign(static_cast<size_t>(bins), 0);

    double N = std::exp2(psi.L);
    std::vector<double> x;
    x.reserve(psi.size());
    for (const cplx& a : psi.amps) {
        double p = std::norm(a);
        if (p == 0.0)
            ++h.zero_count;
        else
            x.push_back(N * p);
    }
    if (np_max <= 0.0) {
        double mx = 0.0;
        for (double v : x) mx = std::max(mx, v);
        np_max = mx > 0.0 ? mx * (1.0 + 1e-12) : 1.0;
    }
    h.np_max = np_max;
    for (double v : x) {
        int i = static_cast<int>(v / np_max * bins);
        if (i >= 0 && i < bins) ++h.counts[static_cast<size_t>(i)];
        else if (i == bins) ++h.counts[static_cast<size_t>(bins - 1)];  // v == np_max
    }
    return h;
}

double ks_statistic(std::vector<double> samples, const OverlapDistribution& ref) {
    std::sort(samples.begin(), samples.end());
    // Snap samples onto reference atoms (relative tolerance 1e-9): degenerate
    // probabilities come out of the floating-point evolution smeared by ulps.
    for (const auto& atom : ref.atoms) {
        double tol = 1e-9 * atom.p;
        auto lo = std::lower_bound(samples.begin(), samples.end(), atom.p - tol);
        auto hi = std::upper_bound(samples.begin(), samples.end(), atom.p + tol);
        for (auto it = lo; it != hi; ++it) *it = atom.p;
    }

    auto atom_weight_at = [&ref](double p) {
        double w = 0.0;
        for (const auto& a : ref.atoms)
            if (a.p == p) w += a.w;
        return w;
    };

    const double n = static_cast<double>(samples.size());
    std::vector<double> candidates = samples;
    for (const auto& a : ref.atoms) candidates.push_back(a.p);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    double d = 0.0;
    for (double xc : candidates) {
        auto lo = std::lower_bound(samples.begin(), samples.end(), xc);
        auto hi = std::upper_bound(samples.begin(), samples.end(), xc);
        double f_below = static_cast<double>(lo - samples.begin()) / n;
        double f_at = static_cast<double>(hi - samples.begin()) / n;
        double ref_at = ref.cdf(xc);
        double ref_below = ref_at - atom_weight_at(xc);
        d = std::max(d, std::abs(f_at - ref_at));
        d = std::max(d, std::abs(f_below - ref_below));
    }
    return d;
}

double ks_statistic(const StateVector& psi, const OverlapDistribution& ref) {
    std::vector<double> p(psi.size());
    for (std::uint64_t z = 0; z < psi.size(); ++z) p[z] = std::norm(psi.amps[z]);
    return ks_statistic(std::move(p), ref);
}

}  // namespace sdkim
