// sdkim — command-line driver for the self-dual kicked-Ising toolkit.
//
// Subcommands: ipr, dist, dual-verify, haar-check, compare. Every run writes
// a manifest plus CSV data into runs/<subcommand>-<seed>-<hash8>/ (root
// overridable with --out or SDKIM_RUNS_DIR); --plot renders SVGs from the
// CSVs. Exit codes: 0 success, 2 validation/usage failure, 3 a requested
// consistency check failed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compare.hpp"
#include "manifest.hpp"
#include "sdkim/angle.hpp"
#include "sdkim/dual.hpp"
#include "sdkim/fockspace.hpp"
#include "sdkim/model.hpp"
#include "sdkim/rmt.hpp"
#include "sdkim/rng.hpp"
#include "sdkim/statevector.hpp"
#include "svg.hpp"
#include "table.hpp"

#ifndef SDKIM_VERSION
#define SDKIM_VERSION "0.0.0"
#endif

namespace {

using namespace sdkim;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kTagHaar = 0x68616172;  // "haar"
constexpr std::uint64_t kTagGenericGate = 0x67656E75;  // "genu"

struct CommonOpts {
    std::string out_root;
    std::string format = "csv";
    bool plot = false;
    int threads = 0;
    std::uint64_t seed = kCompareSeed;
};

struct VariantOpts {
    std::string variant = "dual";
    std::string theta = "pi/14";
    std::vector<double> u;  // 8 numbers: re,im per entry, row-major
    std::uint64_t gate_seed = 1;
};

std::string out_root_or_default(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SDKIM_RUNS_DIR"); env && *env) return env;
    return "runs";
}

GateU2 generic_gate(const VariantOpts& v) {
    if (!v.u.empty()) {
        if (v.u.size() != 8)
            throw std::invalid_argument(
                "--u needs exactly 8 numbers: re,im for each entry, row-major");
        GateU2 u;
        for (int k = 0; k < 4; ++k)
            u.m[static_cast<std::size_t>(k)] = {v.u[2 * k], v.u[2 * k + 1]};
        return u;
    }
    Rng rng(derive_seed(v.gate_seed, {kTagGenericGate}));
    return sample_gate_u2(rng);
}

CircuitSpec make_spec(int L, const std::string& g_str, const VariantOpts& v) {
    double g = parse_angle(g_str);
    if (v.variant == "dual") return CircuitSpec::dual_unitary(L, g);
    if (v.variant == "kick")
        return CircuitSpec::boundary_kick(L, parse_angle(v.theta), g);
    if (v.variant == "generic") return CircuitSpec::boundary_generic(L, generic_gate(v), g);
    if (v.variant == "mid1") return CircuitSpec::mid_single_site(L, v.gate_seed, g);
    if (v.variant == "mid2") return CircuitSpec::mid_two_site(L, v.gate_seed, g);
    if (v.variant == "random") return CircuitSpec::random_brickwork(L, v.gate_seed);
    throw std::invalid_argument(
        "unknown variant '" + v.variant +
        "' (expected dual, kick, generic, mid1, mid2 or random)");
}

// Print warnings, throw on hard validation errors (caught in main -> exit 2).
void check_spec(const CircuitSpec& spec) {
    ValidationReport rep = validate(spec);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (!rep.ok()) throw std::invalid_argument("invalid circuit: " + rep.errors.front());
}

// Closed-form IPR when the variant has one, NaN otherwise.
double analytic_ipr(const CircuitSpec& spec, int t, int q) {
    if (std::holds_alternative<DualUnitary>(spec.variant))
        return ipr_du_analytic(spec.L, t, q);
    if (const auto* k = std::get_if<BoundaryKick>(&spec.variant))
        return ipr_perturbed_analytic(spec.L, t, q, k->theta);
    if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant))
        return ipr_via_m(spec.L, t, q, bg->u);
    return kNaN;
}

// Finite-time reference distribution when the variant has one.
bool has_reference(const CircuitSpec& spec) {
    return std::holds_alternative<DualUnitary>(spec.variant) ||
           std::holds_alternative<BoundaryKick>(spec.variant) ||
           std::holds_alternative<BoundaryGeneric>(spec.variant);
}

OverlapDistribution reference_distribution(const CircuitSpec& spec, int t) {
    if (const auto* k = std::get_if<BoundaryKick>(&spec.variant))
        return perturbed_distribution(spec.L, t, k->theta);
    if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant))
        return perturbed_distribution_u(spec.L, t, bg->u);
    return du_distribution(spec.L, t);
}

void add_variant_params(nlohmann::json& p, const CircuitSpec& spec,
                        const VariantOpts& v) {
    p["variant"] = spec.variant_name();
    if (const auto* k = std::get_if<BoundaryKick>(&spec.variant)) {
        p["theta"] = format_angle(k->theta);
        p["theta_radians"] = k->theta;
    }
    if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant)) {
        nlohmann::json u = nlohmann::json::array();
        for (const auto& e : bg->u.m) {
            u.push_back(e.real());
            u.push_back(e.imag());
        }
        p["u"] = u;
        if (v.u.empty()) p["gate_seed"] = v.gate_seed;
    }
    if (const auto* m1 = std::get_if<MidSingleSite>(&spec.variant))
        p["gate_seed"] = m1->seed;
    if (const auto* m2 = std::get_if<MidTwoSite>(&spec.variant))
        p["gate_seed"] = m2->seed;
    if (const auto* rb = std::get_if<RandomBrickwork>(&spec.variant))
        p["gate_seed"] = rb->seed;
}

// Write the table in the requested format; the CSV is always written because
// SVG rendering reads it back. Returns the file names written.
std::vector<std::string> write_table(const Table& t, const std::string& dir,
                                     const std::string& stem,
                                     const std::string& format) {
    std::vector<std::string> files;
    std::string csv = stem + ".csv";
    write_text_file((std::filesystem::path(dir) / csv).string(), t.to_csv());
    files.push_back(csv);
    if (format == "json") {
        std::string js = stem + ".json";
        write_text_file((std::filesystem::path(dir) / js).string(), t.to_json());
        files.push_back(js);
    }
    return files;
}

void finish_run(RunManifest& m, const std::string& dir) {
    m.version = SDKIM_VERSION;
    write_text_file((std::filesystem::path(dir) / "manifest.json").string(),
                    m.to_json());
    std::cout << "run: " << dir << "\n";
}

// ---- ipr --------------------------------------------------------------------

int cmd_ipr(int L, int t_max, std::vector<int> qs, const std::string& g_str,
            const VariantOpts& vopts, const CommonOpts& common) {
    CircuitSpec spec = make_spec(L, g_str, vopts);
    check_spec(spec);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

    RunManifest m;
    m.subcommand = "ipr";
    m.seed = common.seed;
    m.spec_hash = spec_hash_hex(spec);
    m.params["L"] = L;
    m.params["t_max"] = t_max;
    m.params["q"] = qs;
    m.params["g"] = format_angle(spec.g);
    m.params["g_radians"] = spec.g;
    m.params["format"] = common.format;
    m.params["threads"] = common.threads;
    add_variant_params(m.params, spec, vopts);
    std::string dir = make_run_dir(out_root_or_default(common.out_root), m);

    Table tab;
    tab.header = {"t",   "q",   "I_q",        "S_q",
                  "I_q_analytic", "S_q_analytic", "haar_ratio",
                  "haar_ratio_analytic", "S_q_haar"};
    double worst = 0.0;
    StateVector psi = init_zero(L);
    for (int t = 1; t <= t_max; ++t) {
        floquet_step(psi, spec, t - 1);
        for (int q : qs) {
            double iq = ipr(psi, q);
            double ia = analytic_ipr(spec, t, q);
            double haar = haar_ipr(L, q);
            double ratio = iq / haar;
            double ratio_a = std::isfinite(ia) ? ia / haar : kNaN;
            if (std::isfinite(ia)) worst = std::max(worst, std::abs(iq / ia - 1.0));
            // Haar steady state of S_q: L ln2 - ln(q!) / (q-1).
            double sq_haar = participation_entropy(haar, q);
            tab.add_row({Table::cell(t), Table::cell(q), Table::cell(iq),
                         Table::cell(participation_entropy(iq, q)), Table::cell(ia),
                         Table::cell(std::isfinite(ia) ? participation_entropy(ia, q)
                                                       : kNaN),
                         Table::cell(ratio), Table::cell(ratio_a),
                         Table::cell(sq_haar)});
        }
    }

    m.outputs = write_table(tab, dir, "ipr", common.format);
    std::string csv_path = (std::filesystem::path(dir) / "ipr.csv").string();
    if (common.plot) {
        write_text_file((std::filesystem::path(dir) / "ipr_sq.svg").string(),
                        render_ipr_sq_svg(csv_path));
        write_text_file((std::filesystem::path(dir) / "ipr_ratio.svg").string(),
                        render_ipr_ratio_svg(csv_path));
        m.outputs.push_back("ipr_sq.svg");
        m.outputs.push_back("ipr_ratio.svg");
    }
    finish_run(m, dir);
    if (worst > 0.0)
        std::printf("max |I_q / I_q_analytic - 1| = %.3e over t <= %d\n", worst, t_max);
    return 0;
}

// ---- dist -------------------------------------------------------------------

int cmd_dist(int L, std::vector<int> ts, int bins, double np_max,
             const std::string& g_str, const VariantOpts& vopts,
             const CommonOpts& common, bool dump) {
    CircuitSpec spec = make_spec(L, g_str, vopts);
    check_spec(spec);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.empty() || ts.front() < 1) throw std::invalid_argument("--t needs times >= 1");

    RunManifest m;
    m.subcommand = "dist";
    m.seed = common.seed;
    m.spec_hash = spec_hash_hex(spec);
    m.params["L"] = L;
    m.params["t"] = ts;
    m.params["bins"] = bins;
    m.params["np_max"] = np_max;
    m.params["g"] = format_angle(spec.g);
    m.params["g_radians"] = spec.g;
    m.params["format"] = common.format;
    m.params["threads"] = common.threads;
    m.params["dump"] = dump;
    add_variant_params(m.params, spec, vopts);
    std::string dir = make_run_dir(out_root_or_default(common.out_root), m);

    Table summary;
    summary.header = {"t", "ks_analytic", "ks_porter_thomas", "zero_count", "total"};

    OverlapDistribution pt = porter_thomas_distribution(L);
    StateVector psi = init_zero(L);
    std::size_t next = 0;
    for (int t = 1; t <= ts.back(); ++t) {
        floquet_step(psi, spec, t - 1);
        if (next >= ts.size() || ts[next] != t) continue;
        ++next;

        OverlapHistogram hist = histogram(psi, bins, np_max);
        bool with_ref = has_reference(spec);
        OverlapDistribution ref;
        if (with_ref) ref = reference_distribution(spec, t);

        double ks_a = with_ref ? ks_statistic(psi, ref) : kNaN;
        double ks_pt = ks_statistic(psi, pt);
        summary.add_row({Table::cell(t), Table::cell(ks_a), Table::cell(ks_pt),
                         Table::cell(hist.zero_count), Table::cell(hist.total)});

        Table h;
        h.header = {"bin_lo", "bin_hi", "count", "density", "analytic",
                    "porter_thomas"};
        // Zero bucket: count of exact p == 0 samples; the reference columns
        // hold the atom weight at p = 0 (a probability, not a density).
        double zero_atom = 0.0;
        if (with_ref)
            for (const auto& a : ref.atoms)
                if (a.p == 0.0) zero_atom += a.w;
        h.add_row({Table::cell(0.0), Table::cell(0.0), Table::cell(hist.zero_count),
                   Table::cell(static_cast<double>(hist.zero_count) /
                               static_cast<double>(hist.total)),
                   Table::cell(with_ref ? zero_atom : kNaN), Table::cell(0.0)});
        for (int i = 0; i < hist.bins; ++i) {
            double lo = hist.bin_lo(i), hi = hist.bin_hi(i);
            double mid = 0.5 * (lo + hi);
            h.add_row({Table::cell(lo), Table::cell(hi),
                       Table::cell(hist.counts[static_cast<std::size_t>(i)]),
                       Table::cell(hist.density(i)),
                       Table::cell(with_ref ? ref.pdf(mid) : kNaN),
                       Table::cell(pt.pdf(mid))});
        }
        std::string stem = "hist_t" + std::to_string(t);
        auto files = write_table(h, dir, stem, common.format);
        m.outputs.insert(m.outputs.end(), files.begin(), files.end());
        if (common.plot) {
            std::string svg = stem + ".svg";
            write_text_file(
                (std::filesystem::path(dir) / svg).string(),
                render_dist_svg((std::filesystem::path(dir) / (stem + ".csv")).string()));
            m.outputs.push_back(svg);
        }
        if (dump) {
            std::string bin = "probs_t" + std::to_string(t) + ".bin";
            dump_probabilities(psi, spec, t,
                               (std::filesystem::path(dir) / bin).string());
            m.outputs.push_back(bin);
        }
        if (with_ref)
            std::printf("t=%d  KS(analytic) = %.4f  KS(Porter-Thomas) = %.4f\n", t,
                        ks_a, ks_pt);
        else
            std::printf("t=%d  KS(Porter-Thomas) = %.4f\n", t, ks_pt);
    }

    auto files = write_table(summary, dir, "summary", common.format);
    m.outputs.insert(m.outputs.end(), files.begin(), files.end());
    finish_run(m, dir);
    return 0;
}

// ---- dual-verify --------------------------------------------------------------

int cmd_dual_verify(int L_max, int t_max, const std::string& g_str,
                    const VariantOpts& vopts, double tol,
                    const CommonOpts& common) {
    RunManifest m;
    m.subcommand = "dual-verify";
    m.seed = common.seed;
    m.params["L_max"] = L_max;
    m.params["t_max"] = t_max;
    m.params["g"] = g_str;
    m.params["tol"] = tol;
    m.params["variant"] = vopts.variant;
    m.params["format"] = common.format;
    std::string dir = make_run_dir(out_root_or_default(common.out_root), m);

    Table tab;
    tab.header = {"L", "t", "max_dev", "unitarity_u0", "unitarity_u1"};
    double worst = 0.0, worst_unit = 0.0;
    for (int L = 2; L <= L_max; ++L) {
        CircuitSpec spec = make_spec(L, g_str, vopts);
        check_spec(spec);
        if (L == 2) m.spec_hash = spec_hash_hex(spec);
        StateVector psi = init_zero(L);
        for (int t = 1; t <= t_max; ++t) {
            floquet_step(psi, spec, t - 1);
            DualTransferSet dts = build_dual_set(spec, t);
            double dev = 0.0;
            for (std::uint64_t z = 0; z < psi.size(); ++z)
                dev = std::max(dev, std::abs(overlap_via_dual(dts, z) - psi.amps[z]));
            double e0 = dts.U0.unitarity_error(), e1 = dts.U1.unitarity_error();
            worst = std::max(worst, dev);
            worst_unit = std::max({worst_unit, e0, e1});
            tab.add_row({Table::cell(L), Table::cell(t), Table::cell(dev),
                         Table::cell(e0), Table::cell(e1)});
        }
    }

    m.outputs = write_table(tab, dir, "dual", common.format);
    finish_run(m, dir);
    std::printf("max |amp_dual - amp_direct| = %.3e (tol %.1e), "
                "max transfer unitarity error = %.3e\n",
                worst, tol, worst_unit);
    bool pass = worst < tol && worst_unit < 1e-12;
    std::printf("dual-verify: %s\n", pass ? "OK" : "FAIL");
    return pass ? 0 : 3;
}

// ---- haar-check ----------------------------------------------------------------

int cmd_haar_check(int d, std::vector<int> qs, std::uint64_t samples, double z_max,
                   const CommonOpts& common) {
    RunManifest m;
    m.subcommand = "haar-check";
    m.seed = common.seed;
    m.params["d"] = d;
    m.params["q"] = qs;
    m.params["samples"] = samples;
    m.params["z_max"] = z_max;
    m.params["threads"] = common.threads;
    m.params["format"] = common.format;
    std::string dir = make_run_dir(out_root_or_default(common.out_root), m);

    Table tab;
    tab.header = {"d", "q", "samples", "mc_mean", "closed_form", "std_error",
                  "z_score"};
    double worst = 0.0;
    for (int q : qs) {
        MomentEstimate est = mc_moment(d, q, samples,
                                       derive_seed(common.seed, {kTagHaar,
                                                                 static_cast<std::uint64_t>(q)}),
                                       0, 0, common.threads);
        double closed = haar_moment_closed(d, q);
        double z = (est.mean - closed) / est.std_error;
        worst = std::max(worst, std::abs(z));
        tab.add_row({Table::cell(d), Table::cell(q), Table::cell(samples),
                     Table::cell(est.mean), Table::cell(closed),
                     Table::cell(est.std_error), Table::cell(z)});
        std::printf("d=%d q=%d  mc = %.6e  closed = %.6e  z = %+.2f\n", d, q,
                    est.mean, closed, z);
    }

    m.outputs = write_table(tab, dir, "haar", common.format);
    finish_run(m, dir);
    bool pass = worst <= z_max;
    std::printf("haar-check: %s (max |z| = %.2f, limit %.1f)\n",
                pass ? "OK" : "FAIL", worst, z_max);
    return pass ? 0 : 3;
}

// ---- compare --------------------------------------------------------------------

int cmd_compare(std::vector<std::string> models, std::vector<int> sizes, int t_max,
                int realizations, const std::string& theta_str, double window,
                const CommonOpts& common) {
    CompareConfig cfg;
    cfg.models = std::move(models);
    cfg.sizes = std::move(sizes);
    cfg.t_max = t_max;
    cfg.realizations = realizations;
    cfg.seed = common.seed;
    cfg.theta = parse_angle(theta_str);
    cfg.window = window;
    cfg.threads = common.threads;

    RunManifest m;
    m.subcommand = "compare";
    m.seed = cfg.seed;
    m.params["models"] = cfg.models;
    m.params["L"] = cfg.sizes;
    m.params["t_max"] = cfg.t_max;
    m.params["realizations"] = cfg.realizations;
    m.params["theta"] = format_angle(cfg.theta);
    m.params["theta_radians"] = cfg.theta;
    m.params["window"] = cfg.window;  // t* threshold in nats
    m.params["threads"] = cfg.threads;
    m.params["format"] = common.format;
    std::string dir = make_run_dir(out_root_or_default(common.out_root), m);

    std::vector<CompareCurve> curves = run_compare(cfg);

    Table tab;
    tab.header = {"model", "L", "t", "S2", "sem"};
    Table tstar;
    tstar.header = {"model", "L", "t_star", "target", "window"};
    for (const auto& c : curves) {
        for (int t = 1; t <= cfg.t_max; ++t)
            tab.add_row({c.model, Table::cell(c.L), Table::cell(t),
                         Table::cell(c.s2[static_cast<std::size_t>(t - 1)]),
                         Table::cell(c.sem[static_cast<std::size_t>(t - 1)])});
        double target = (c.L - 1) * std::numbers::ln2;
        tstar.add_row({c.model, Table::cell(c.L), Table::cell(c.t_star),
                       Table::cell(target), Table::cell(cfg.window)});
        if (c.t_star > 0)
            std::printf("model=%-6s L=%2d  t* = %d  (S2 - target = %+.4f +- %.4f)\n",
                        c.model.c_str(), c.L, c.t_star,
                        c.s2[static_cast<std::size_t>(c.t_star - 1)] - target,
                        c.sem[static_cast<std::size_t>(c.t_star - 1)]);
        else
            std::printf("model=%-6s L=%2d  t* not reached by t_max=%d\n",
                        c.model.c_str(), c.L, cfg.t_max);
    }

    m.outputs = write_table(tab, dir, "compare", common.format);
    auto files = write_table(tstar, dir, "tstar", common.format);
    m.outputs.insert(m.outputs.end(), files.begin(), files.end());
    if (common.plot) {
        write_text_file((std::filesystem::path(dir) / "compare.svg").string(),
                        render_compare_svg(
                            (std::filesystem::path(dir) / "compare.csv").string()));
        m.outputs.push_back("compare.svg");
    }
    finish_run(m, dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-dual kicked-Ising simulator and analytics"};
    app.set_version_flag("--version", SDKIM_VERSION);
    app.require_subcommand(1);

    CommonOpts common;
    VariantOpts vopts;
    std::string g_str = "pi/3";

    auto add_common = [&](CLI::App* sub, bool with_plot = true) {
        sub->add_option("--out", common.out_root,
                        "output root (default: $SDKIM_RUNS_DIR or ./runs)");
        sub->add_option("--format", common.format, "data format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--threads", common.threads,
                        "worker cap; <= 0 means hardware default");
        sub->add_option("--seed", common.seed, "master seed")->capture_default_str();
        if (with_plot) sub->add_flag("--plot", common.plot, "render SVG figures");
    };
    auto add_variant = [&](CLI::App* sub) {
        sub->add_option("--variant", vopts.variant,
                        "dual | kick | generic | mid1 | mid2 | random")
            ->capture_default_str();
        sub->add_option("--theta", vopts.theta, "boundary kick angle (e.g. pi/14)")
            ->capture_default_str();
        sub->add_option("--u", vopts.u,
                        "generic boundary gate: 8 numbers re,im row-major")
            ->delimiter(',');
        sub->add_option("--gate-seed", vopts.gate_seed,
                        "seed for sampled gates (generic/mid1/mid2/random)")
            ->capture_default_str();
        sub->add_option("--g", g_str, "longitudinal field (angle string)")
            ->capture_default_str();
    };

    // ipr
    int L = 14, t_max = 10;
    std::vector<int> qs{2, 4, 6, 8};
    CLI::App* ipr_cmd =
        app.add_subcommand("ipr", "inverse participation ratios I_q(t) vs closed form");
    ipr_cmd->add_option("--L", L, "chain length")->capture_default_str();
    ipr_cmd->add_option("--t-max", t_max, "number of periods")->capture_default_str();
    ipr_cmd->add_option("--q", qs, "moment orders")->delimiter(',')->capture_default_str();
    add_variant(ipr_cmd);
    add_common(ipr_cmd);

    // dist
    std::vector<int> ts{1, 2, 3, 6};
    int bins = 60;
    double np_max = 0.0;
    bool dump = false;
    CLI::App* dist_cmd =
        app.add_subcommand("dist", "bit-string overlap distribution vs analytic laws");
    dist_cmd->add_option("--L", L, "chain length")->capture_default_str();
    dist_cmd->add_option("--t", ts, "times to histogram")->delimiter(',')->capture_default_str();
    dist_cmd->add_option("--bins", bins, "histogram bins")->capture_default_str();
    dist_cmd->add_option("--np-max", np_max,
                         "histogram range in units of N p; <= 0 = auto");
    dist_cmd->add_flag("--dump", dump, "also write raw probability dumps");
    add_variant(dist_cmd);
    add_common(dist_cmd);

    // dual-verify
    int Lv = 8, tv = 5;
    double tol = 1e-10;
    CLI::App* dual_cmd = app.add_subcommand(
        "dual-verify", "check transfer-matrix amplitudes against direct evolution");
    dual_cmd->add_option("--L", Lv, "maximum chain length")->capture_default_str();
    dual_cmd->add_option("--t-max", tv, "maximum time")->capture_default_str();
    dual_cmd->add_option("--tol", tol, "max allowed amplitude deviation")
        ->capture_default_str();
    add_variant(dual_cmd);
    add_common(dual_cmd, /*with_plot=*/false);

    // haar-check
    int d = 8;
    std::vector<int> hq{2, 3};
    std::uint64_t samples = 100000;
    double z_max = 4.0;
    CLI::App* haar_cmd = app.add_subcommand(
        "haar-check", "Monte-Carlo Haar moments against the closed form");
    haar_cmd->add_option("--d", d, "unitary dimension")->capture_default_str();
    haar_cmd->add_option("--q", hq, "moment orders")->delimiter(',')->capture_default_str();
    haar_cmd->add_option("--samples", samples, "Monte-Carlo samples")
        ->capture_default_str();
    haar_cmd->add_option("--z-max", z_max, "allowed sigma distance")
        ->capture_default_str();
    add_common(haar_cmd, /*with_plot=*/false);

    // compare
    std::vector<std::string> models{"dual", "random", "mid1", "mid2"};
    std::vector<int> sizes{10, 12, 14};
    int ct_max = 12, realizations = 50;
    double window = 0.1;
    CLI::App* cmp_cmd = app.add_subcommand(
        "compare", "S_2 growth and ergodic-approach time across model families");
    cmp_cmd->add_option("--models", models, "dual | random | mid1 | mid2 | kick")
        ->delimiter(',')
        ->capture_default_str();
    cmp_cmd->add_option("--L", sizes, "chain lengths")->delimiter(',')->capture_default_str();
    cmp_cmd->add_option("--t-max", ct_max, "number of periods")->capture_default_str();
    cmp_cmd->add_option("--realizations", realizations, "realizations per model/size")
        ->capture_default_str();
    cmp_cmd->add_option("--theta", vopts.theta, "kick model angle")->capture_default_str();
    cmp_cmd->add_option("--window", window, "t* window around (L-1) ln 2, in nats")
        ->capture_default_str();
    add_common(cmp_cmd);

    int rc = 0;
    ipr_cmd->callback([&] { rc = cmd_ipr(L, t_max, qs, g_str, vopts, common); });
    dist_cmd->callback(
        [&] { rc = cmd_dist(L, ts, bins, np_max, g_str, vopts, common, dump); });
    dual_cmd->callback(
        [&] { rc = cmd_dual_verify(Lv, tv, g_str, vopts, tol, common); });
    haar_cmd->callback([&] { rc = cmd_haar_check(d, hq, samples, z_max, common); });
    cmp_cmd->callback([&] {
        rc = cmd_compare(models, sizes, ct_max, realizations, vopts.theta, window,
                         common);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
