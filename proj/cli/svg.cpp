#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "table.hpp"

namespace sdkim {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Round tick spacing to 1/2/5 times a power of ten.
double nice_step(double range, int target_ticks) {
    if (!(range > 0)) return 1.0;
    double raw = range / target_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

double to_num(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw std::runtime_error("non-numeric CSV cell '" + s + "'");
    }
}

int column(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name) return static_cast<int>(i);
    throw std::runtime_error("CSV is missing column '" + name + "'");
}

}  // namespace

std::string Plot::render(int width, int height) const {
    const double ml = 72, mr = 16, mt = 36, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (auto [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin <= xmax)) { xmin = 0; xmax = 1; }
    if (!(ymin <= ymax)) { ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

    // Axes frame and ticks.
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    double xs = nice_step(xmax - xmin, 6);
    for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-9 * xs; x += xs) {
        double X = px(x);
        out << "<line x1=\"" << X << "\" y1=\"" << mt + ph << "\" x2=\"" << X
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << X << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    }
    double ys = nice_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ys) * ys; y <= ymax + 1e-9 * ys; y += ys) {
        double Y = py(y);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y << "\" x2=\"" << ml
            << "\" y2=\"" << Y << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << Y + 4
            << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
    }

    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << escape_xml(xlabel) << "</text>\n";
    out << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">" << escape_xml(ylabel) << "</text>\n";
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
        << "</text>\n";

    for (const auto& s : series) {
        if (s.line && s.pts.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\"";
            if (s.dashed) out << " stroke-dasharray=\"5,4\"";
            out << " stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : s.pts) out << fmt(px(x)) << "," << fmt(py(y)) << " ";
            out << "\"/>\n";
        }
        if (s.markers)
            for (auto [x, y] : s.pts)
                out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                    << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    }

    // Legend, top-right inside the frame.
    double lx = ml + pw - 160, ly = mt + 14;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\""
            << lx + 22 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"";
        if (s.dashed) out << " stroke-dasharray=\"5,4\"";
        out << "/>\n";
        out << "<text x=\"" << lx + 28 << "\" y=\"" << ly << "\">"
            << escape_xml(s.label) << "</text>\n";
        ly += 16;
    }

    out << "</g>\n</svg>\n";
    return out.str();
}

namespace {

// Shared skeleton for the two IPR panels: per-q numeric markers, per-q
// analytic dashed curve, horizontal steady-state guides. A value column may
// hold "nan" (no closed form for that variant); those points are dropped.
// gcol is the per-q steady-state column, or "" for a single guide at y = 1
// (the Haar value of any ratio-to-Haar is 1 by construction).
std::string render_ipr_panel(const std::string& csv_path, const std::string& ycol,
                             const std::string& acol, const std::string& gcol,
                             const std::string& title, const std::string& ylabel) {
    Table t = read_csv(csv_path);
    int ct = column(t, "t"), cq = column(t, "q");
    int cy = column(t, ycol), ca = column(t, acol);
    int cg = gcol.empty() ? -1 : column(t, gcol);

    std::map<int, Series> numeric, analytic, guides;
    double tlo = 1, thi = 1;
    for (const auto& r : t.rows) {
        int q = static_cast<int>(to_num(r[cq]));
        double tt = to_num(r[ct]);
        tlo = std::min(tlo, tt);
        thi = std::max(thi, tt);
        double y = to_num(r[cy]), a = to_num(r[ca]);
        if (std::isfinite(y)) numeric[q].pts.emplace_back(tt, y);
        if (std::isfinite(a)) analytic[q].pts.emplace_back(tt, a);
        if (cg >= 0) {
            double g = to_num(r[cg]);
            if (std::isfinite(g)) guides[q].pts.emplace_back(tt, g);
        }
    }
    if (cg < 0) guides[0].pts = {{tlo, 1.0}, {thi, 1.0}};

    Plot p;
    p.title = title;
    p.xlabel = "t";
    p.ylabel = ylabel;
    int i = 0;
    for (auto& [q, s] : numeric) {
        s.label = "q=" + std::to_string(q) + " numeric";
        s.color = kPalette[i % kPaletteSize];
        s.line = false;
        s.markers = true;
        p.series.push_back(std::move(s));
        if (auto it = analytic.find(q); it != analytic.end() && !it->second.pts.empty()) {
            it->second.label = "q=" + std::to_string(q) + " closed form";
            it->second.color = kPalette[i % kPaletteSize];
            it->second.dashed = true;
            p.series.push_back(std::move(it->second));
        }
        ++i;
    }
    for (auto& [q, s] : guides) {
        if (s.pts.empty()) continue;
        s.color = "#bbbbbb";
        s.dashed = true;
        p.series.push_back(std::move(s));
    }
    return p.render();
}

}  // namespace

std::string render_ipr_sq_svg(const std::string& csv_path) {
    return render_ipr_panel(csv_path, "S_q", "S_q_analytic", "S_q_haar",
                            "participation entropy growth", "S_q");
}

std::string render_ipr_ratio_svg(const std::string& csv_path) {
    return render_ipr_panel(csv_path, "haar_ratio", "haar_ratio_analytic", "",
                            "IPR relative to Haar", "I_q / I_q^Haar");
}

std::string render_dist_svg(const std::string& csv_path) {
    Table t = read_csv(csv_path);
    int clo = column(t, "bin_lo"), chi = column(t, "bin_hi");
    int cd = column(t, "density"), can = column(t, "analytic");
    int cpt = column(t, "porter_thomas");

    // Read N off the data: the x axis is Np, densities are rescaled by 1/N
    // so the displayed curves are dimensionless.
    Series data, ana, pt;
    data.label = "histogram";
    data.color = kPalette[1];
    data.line = false;
    data.markers = true;
    ana.label = "finite-time law";
    ana.color = kPalette[0];
    pt.label = "Porter-Thomas";
    pt.color = kPalette[2];
    pt.dashed = true;

    // Infer N from total support: columns are in p units; we plot log10 of
    // N-scaled density versus Np using the bin centers.
    double pmax = 0;
    for (const auto& r : t.rows) pmax = std::max(pmax, to_num(r[chi]));
    if (pmax <= 0) throw std::runtime_error("histogram CSV has empty support");

    for (const auto& r : t.rows) {
        double lo = to_num(r[clo]), hi = to_num(r[chi]);
        if (hi <= lo) continue;  // zero-probability atom row, not plottable here
        double mid = 0.5 * (lo + hi);
        double d = to_num(r[cd]), a = to_num(r[can]), q = to_num(r[cpt]);
        double x = mid / pmax;  // fraction of support; rescaled below
        if (d > 0) data.pts.emplace_back(x, std::log10(d));
        if (a > 0) ana.pts.emplace_back(x, std::log10(a));
        if (q > 0) pt.pts.emplace_back(x, std::log10(q));
    }

    Plot p;
    p.title = "overlap density";
    p.xlabel = "p / p_max";
    p.ylabel = "log10 density";
    p.series = {std::move(ana), std::move(pt), std::move(data)};
    return p.render();
}

std::string render_compare_svg(const std::string& csv_path) {
    Table t = read_csv(csv_path);
    int cm = column(t, "model"), cl = column(t, "L");
    int ct = column(t, "t"), cs = column(t, "S2");

    std::map<std::string, Series> curves;  // keyed "model L=.."
    std::map<int, bool> sizes;
    for (const auto& r : t.rows) {
        int L = static_cast<int>(to_num(r[cl]));
        sizes[L] = true;
        std::string key = r[cm] + " L=" + std::to_string(L);
        auto& s = curves[key];
        s.label = key;
        s.markers = true;
        s.pts.emplace_back(to_num(r[ct]), to_num(r[cs]));
    }

    Plot p;
    p.title = "S_2 growth by model";
    p.xlabel = "t";
    p.ylabel = "S_2";
    double tmax = 1;
    for (auto& [k, s] : curves) {
        std::sort(s.pts.begin(), s.pts.end());
        for (auto [x, y] : s.pts) tmax = std::max(tmax, x);
    }
    int i = 0;
    for (auto& [k, s] : curves) {
        s.color = kPalette[i++ % kPaletteSize];
        p.series.push_back(std::move(s));
    }
    for (auto [L, _] : sizes) {
        Series g;
        g.label = "";
        g.color = "#bbbbbb";
        g.dashed = true;
        double sat = (L - 1) * std::numbers::ln2;
        g.pts = {{1.0, sat}, {tmax, sat}};
        p.series.push_back(std::move(g));
    }
    return p.render();
}

}  // namespace sdkim
