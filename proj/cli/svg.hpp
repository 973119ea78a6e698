#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sdkim {

// Minimal self-contained SVG line/marker plots. Each render_* function reads
// the CSV already written by the corresponding subcommand, so every figure is
// derived solely from data on disk.

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
    std::string color = "#1f77b4";
    bool line = true;
    bool markers = false;
    bool dashed = false;
};

struct Plot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;

    std::string render(int width = 720, int height = 480) const;
};

// S_q versus t: numeric points as markers, closed form as dashed lines,
// grey guides at the Haar steady-state values.
std::string render_ipr_sq_svg(const std::string& csv_path);

// I_q / I_q^Haar versus t on the same CSV, guide at ratio 1.
std::string render_ipr_ratio_svg(const std::string& csv_path);

// Overlap histogram (log10 density versus Np) against the analytic curves.
std::string render_dist_svg(const std::string& csv_path);

// S_2 growth per model/size with saturation guides at (L-1) ln 2.
std::string render_compare_svg(const std::string& csv_path);

}  // namespace sdkim
