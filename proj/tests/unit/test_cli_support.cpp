#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "manifest.hpp"
#include "svg.hpp"
#include "table.hpp"

using namespace sdkim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "sdkim_cli_support_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("Table cells and CSV text") {
    CHECK(Table::cell(0.5) == "0.5");
    CHECK(Table::cell(3) == "3");
    CHECK(Table::cell(std::uint64_t{18446744073709551615ull}) == "18446744073709551615");
    // 17 significant digits round-trip doubles bit-exactly
    double third = 1.0 / 3.0;
    CHECK(std::stod(Table::cell(third)) == third);

    Table t;
    t.header = {"a", "b"};
    t.add_row({"1", "x"});
    t.add_row({Table::cell(2.5), "y"});
    CHECK(t.to_csv() == "a,b\n1,x\n2.5,y\n");
    CHECK_THROWS_AS(t.add_row({"only-one"}), std::invalid_argument);
}

TEST_CASE("Table JSON keeps numbers as numbers") {
    Table t;
    t.header = {"n", "s"};
    t.add_row({"2.5", "label"});
    auto j = nlohmann::json::parse(t.to_json());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["n"].is_number());
    CHECK(j[0]["n"].get<double>() == 2.5);
    CHECK(j[0]["s"].is_string());
    CHECK(j[0]["s"].get<std::string>() == "label");
}

TEST_CASE("text file and CSV round trip") {
    fs::path dir = scratch_dir();
    std::string path = (dir / "t.csv").string();

    Table t;
    t.header = {"t", "value"};
    t.add_row({"1", Table::cell(0.25)});
    t.add_row({"2", Table::cell(1.0 / 7.0)});
    write_text_file(path, t.to_csv());

    Table back = read_csv(path);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);

    CHECK(read_text_file(path) == t.to_csv());
    CHECK_THROWS(read_text_file((dir / "missing.csv").string()));
}

TEST_CASE("fnv1a64 known vectors and hex formatting") {
    CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
    CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8Cull);
    CHECK(hex16(0xCBF29CE484222325ull) == "cbf29ce484222325");
    CHECK(hex16(5) == "0000000000000005");
}

TEST_CASE("manifest JSON and run directory layout") {
    RunManifest m;
    m.subcommand = "ipr";
    m.seed = 42;
    m.version = "1.0.0";
    m.params = {{"L", 8}, {"g", "pi/3"}};
    m.spec_hash = "deadbeefdeadbeef";
    m.outputs = {"ipr.csv"};

    auto j = nlohmann::json::parse(m.to_json());
    CHECK(j["subcommand"] == "ipr");
    CHECK(j["seed"] == 42);
    CHECK(j["params"]["L"] == 8);
    CHECK(j["spec_hash"] == "deadbeefdeadbeef");
    CHECK(j["outputs"][0] == "ipr.csv");
    CHECK(j.contains("created_utc"));

    fs::path root = scratch_dir() / "runs";
    std::string dir = make_run_dir(root.string(), m);
    CHECK(fs::is_directory(dir));
    // name = subcommand-seed-paramhash8; deterministic in the parameters
    std::string name = fs::path(dir).filename().string();
    CHECK(name.substr(0, 7) == "ipr-42-");
    CHECK(name.size() == 7 + 8);
    CHECK(make_run_dir(root.string(), m) == dir);

    RunManifest m2 = m;
    m2.params["L"] = 10;
    CHECK(make_run_dir(root.string(), m2) != dir);
}

TEST_CASE("plots render from CSV files alone") {
    fs::path dir = scratch_dir();

    std::string ipr_csv = (dir / "ipr.csv").string();
    write_text_file(ipr_csv,
                    "t,q,I_q,S_q,I_q_analytic,S_q_analytic,haar_ratio,"
                    "haar_ratio_analytic,S_q_haar\n"
                    "1,2,0.00390625,5.545,0.00390625,5.545,1.5,1.5,4.85\n"
                    "2,2,0.0026,5.95,0.0026,5.95,1.0,1.0,4.85\n"
                    "1,4,1e-8,6.1,1e-8,6.1,2.0,2.0,5.2\n"
                    "2,4,5e-9,6.3,5e-9,6.3,1.1,1.1,5.2\n");
    for (const std::string& svg :
         {render_ipr_sq_svg(ipr_csv), render_ipr_ratio_svg(ipr_csv)}) {
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.rfind("</svg>\n") != std::string::npos);
        CHECK(svg.find("polyline") != std::string::npos);
        CHECK(svg.find("q=2") != std::string::npos);
    }

    std::string dist_csv = (dir / "hist_t3.csv").string();
    write_text_file(dist_csv,
                    "bin_lo,bin_hi,count,density,analytic,porter_thomas\n"
                    "0,0,12,0.0029,0.5,0\n"  // zero-atom row, skipped by the plot
                    "0,0.0001,900,2200,2100,2050\n"
                    "0.0001,0.0002,500,1200,1150,1100\n");
    std::string dist_svg = render_dist_svg(dist_csv);
    CHECK(dist_svg.find("<svg") != std::string::npos);
    CHECK(dist_svg.find("polyline") != std::string::npos);

    std::string cmp_csv = (dir / "compare.csv").string();
    write_text_file(cmp_csv,
                    "model,L,t,S2,sem\n"
                    "dual,6,1,4.15,0\n"
                    "dual,6,2,3.6,0\n"
                    "random,6,1,2.5,0.05\n"
                    "random,6,2,3.1,0.04\n");
    std::string cmp_svg = render_compare_svg(cmp_csv);
    CHECK(cmp_svg.find("<svg") != std::string::npos);
    CHECK(cmp_svg.find("dual L=6") != std::string::npos);
}

TEST_CASE("SVG text is XML-escaped") {
    Plot p;
    p.title = "a<b & c>d";
    Series s;
    s.label = "x<y>";
    s.pts = {{0.0, 0.0}, {1.0, 1.0}};
    p.series.push_back(s);
    std::string svg = p.render();
    CHECK(svg.find("a&lt;b &amp; c&gt;d") != std::string::npos);
    CHECK(svg.find("x&lt;y&gt;") != std::string::npos);
    CHECK(svg.find("a<b") == std::string::npos);
}
