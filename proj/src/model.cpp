#include "sdkim/model.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sdkim/angle.hpp"

namespace sdkim {

namespace {

double abs_max(double a, double b) { return a > b ? a : b; }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double GateU2::unitarity_error() const {
    // (U^dag U)_{ij} = sum_k conj(U_ki) U_kj
    double err = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 2; ++k) s += std::conj(m[2 * k + i]) * m[2 * k + j];
            if (i == j) s -= 1.0;
            err = abs_max(err, std::abs(s));
        }
    return err;
}

double GateU4::unitarity_error() const {
    double err = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += std::conj(m[4 * k + i]) * m[4 * k + j];
            if (i == j) s -= 1.0;
            err = abs_max(err, std::abs(s));
        }
    return err;
}

GateU2 kick_gate(double b) {
    double c = std::cos(b), s = std::sin(b);
    return {{cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0)}};
}

bool CircuitSpec::homogeneous_field() const {
    if (h.empty()) return true;
    for (double v : h)
        if (v != h.front()) return false;
    return true;
}

const char* CircuitSpec::variant_name() const {
    struct V {
        const char* operator()(const DualUnitary&) const { return "dual"; }
        const char* operator()(const BoundaryKick&) const { return "boundary_kick"; }
        const char* operator()(const BoundaryGeneric&) const { return "boundary_generic"; }
        const char* operator()(const MidSingleSite&) const { return "mid_single_site"; }
        const char* operator()(const MidTwoSite&) const { return "mid_two_site"; }
        const char* operator()(const RandomBrickwork&) const { return "random_brickwork"; }
    };
    return std::visit(V{}, variant);
}

CircuitSpec CircuitSpec::dual_unitary(int L, double g) {
    CircuitSpec s;
    s.L = L;
    s.g = g;
    return s;
}

CircuitSpec CircuitSpec::boundary_kick(int L, double theta, double g) {
    CircuitSpec s = dual_unitary(L, g);
    s.variant = BoundaryKick{theta};
    return s;
}

CircuitSpec CircuitSpec::boundary_generic(int L, const GateU2& u, double g) {
    CircuitSpec s = dual_unitary(L, g);
    s.variant = BoundaryGeneric{u};
    return s;
}

CircuitSpec CircuitSpec::mid_single_site(int L, std::uint64_t seed, double g) {
    CircuitSpec s = dual_unitary(L, g);
    s.variant = MidSingleSite{seed};
    return s;
}

CircuitSpec CircuitSpec::mid_two_site(int L, std::uint64_t seed, double g) {
    CircuitSpec s = dual_unitary(L, g);
    s.variant = MidTwoSite{seed};
    return s;
}

CircuitSpec CircuitSpec::random_brickwork(int L, std::uint64_t seed) {
    CircuitSpec s;
    s.L = L;
    s.variant = RandomBrickwork{seed};
    return s;
}

cplx ising_phase(const CircuitSpec& spec, std::uint64_t z) {
    const int L = spec.L;
    // sum_j s_j s_{j+1} = (L-1) - 2 * #(adjacent bit differences)
    std::uint64_t diff = (z ^ (z >> 1)) & ((std::uint64_t(1) << (L - 1)) - 1);
    int ndiff = std::popcount(diff);
    double angle = spec.J * static_cast<double>((L - 1) - 2 * ndiff);
    if (spec.h.empty()) {
        // homogeneous field g: sum_j h_j s_j = g (L - 2 popcount)
        angle += spec.g * static_cast<double>(L - 2 * std::popcount(z));
    } else {
        double fs = 0.0;
        for (int j = 1; j <= L; ++j) {
            int sj = 1 - 2 * static_cast<int>((z >> (L - j)) & 1);
            fs += spec.h[static_cast<size_t>(j - 1)] * sj;
        }
        angle += fs;
    }
    return std::polar(1.0, -angle);
}

ValidationReport validate(const CircuitSpec& spec) {
    ValidationReport rep;
    auto err = [&rep](const std::string& m) { rep.errors.push_back(m); };
    auto warn = [&rep](const std::string& m) { rep.warnings.push_back(m); };

    if (spec.L < 2) err("L must be >= 2 (got " + std::to_string(spec.L) + ")");
    if (!std::isfinite(spec.J) || !std::isfinite(spec.b) || !std::isfinite(spec.g))
        err("couplings J, b, g must be finite");
    if (!spec.h.empty() && spec.h.size() != static_cast<size_t>(spec.L))
        err("field vector h must be empty or have length L");
    for (double v : spec.h)
        if (!std::isfinite(v)) {
            err("field vector h contains a non-finite entry");
            break;
        }

    const bool brickwork = std::holds_alternative<RandomBrickwork>(spec.variant);
    if (!brickwork) {
        if (spec.J != pi / 4 || spec.b != pi / 4)
            err("self-dual chain requires J = b = pi/4 exactly");
        // Multiples of pi/8 make the measurement-induced single-qubit gate
        // set non-universal; the Haar-emergence closed forms assume a
        // generic field.
        double r = std::remainder(spec.g, pi / 8);
        if (std::abs(r) < 1e-12)
            warn("g is within 1e-12 of a multiple of pi/8; the emergent-Haar "
                 "closed forms do not apply at these special fields");
    }

    if (const auto* bk = std::get_if<BoundaryKick>(&spec.variant)) {
        if (!std::isfinite(bk->theta)) err("boundary kick angle theta must be finite");
    } else if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant)) {
        double ue = bg->u.unitarity_error();
        if (!(ue < 1e-12))
            err("boundary gate u is not unitary (error " + fmt17(ue) + ")");
    }
    return rep;
}

// --- serialization ---------------------------------------------------------

namespace {

std::string gate_to_string(const GateU2& u) {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += ", ";
        s += fmt17(u.m[i].real()) + ", " + fmt17(u.m[i].imag());
    }
    return s;
}

GateU2 gate_from_values(const std::vector<double>& v) {
    if (v.size() != 8)
        throw std::invalid_argument("boundary gate needs 8 values (re,im x 4)");
    GateU2 u;
    for (int i = 0; i < 4; ++i) u.m[i] = cplx(v[2 * i], v[2 * i + 1]);
    return u;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(std::stod(item.substr(a)));
    }
    return out;
}

}  // namespace

std::string to_config_text(const CircuitSpec& spec) {
    std::ostringstream out;
    out << "L = " << spec.L << "\n";
    out << "J = " << format_angle(spec.J) << "\n";
    out << "b = " << format_angle(spec.b) << "\n";
    out << "g = " << format_angle(spec.g) << "\n";
    if (!spec.h.empty()) {
        out << "h = ";
        for (size_t i = 0; i < spec.h.size(); ++i)
            out << (i ? ", " : "") << fmt17(spec.h[i]);
        out << "\n";
    }
    out << "variant = " << spec.variant_name() << "\n";
    if (const auto* bk = std::get_if<BoundaryKick>(&spec.variant))
        out << "theta = " << format_angle(bk->theta) << "\n";
    else if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant))
        out << "u = " << gate_to_string(bg->u) << "\n";
    else if (const auto* m1 = std::get_if<MidSingleSite>(&spec.variant))
        out << "seed = " << m1->seed << "\n";
    else if (const auto* m2 = std::get_if<MidTwoSite>(&spec.variant))
        out << "seed = " << m2->seed << "\n";
    else if (const auto* rb = std::get_if<RandomBrickwork>(&spec.variant))
        out << "seed = " << rb->seed << "\n";
    return out.str();
}

CircuitSpec from_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }

    auto require = [&kv](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("config is missing key '" + key + "'");
        return it->second;
    };

    CircuitSpec spec;
    spec.L = std::stoi(require("L"));
    if (kv.count("J")) spec.J = parse_angle(kv["J"]);
    if (kv.count("b")) spec.b = parse_angle(kv["b"]);
    if (kv.count("g")) spec.g = parse_angle(kv["g"]);
    if (kv.count("h")) spec.h = parse_number_list(kv["h"]);

    std::string variant = kv.count("variant") ? kv["variant"] : "dual";
    std::uint64_t seed = kv.count("seed") ? std::stoull(kv["seed"]) : 0;
    if (variant == "dual")
        spec.variant = DualUnitary{};
    else if (variant == "boundary_kick")
        spec.variant = BoundaryKick{parse_angle(require("theta"))};
    else if (variant == "boundary_generic")
        spec.variant = BoundaryGeneric{gate_from_values(parse_number_list(require("u")))};
    else if (variant == "mid_single_site")
        spec.variant = MidSingleSite{seed};
    else if (variant == "mid_two_site")
        spec.variant = MidTwoSite{seed};
    else if (variant == "random_brickwork")
        spec.variant = RandomBrickwork{seed};
    else
        throw std::invalid_argument("unknown variant '" + variant + "'");
    return spec;
}

std::string to_json_text(const CircuitSpec& spec) {
    nlohmann::json j;
    j["L"] = spec.L;
    j["J"] = format_angle(spec.J);
    j["b"] = format_angle(spec.b);
    j["g"] = format_angle(spec.g);
    if (!spec.h.empty()) j["h"] = spec.h;
    nlohmann::json v;
    v["type"] = spec.variant_name();
    if (const auto* bk = std::get_if<BoundaryKick>(&spec.variant))
        v["theta"] = format_angle(bk->theta);
    else if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant)) {
        std::vector<double> flat;
        for (auto& e : bg->u.m) {
            flat.push_back(e.real());
            flat.push_back(e.imag());
        }
        v["u"] = flat;
    } else if (const auto* m1 = std::get_if<MidSingleSite>(&spec.variant))
        v["seed"] = m1->seed;
    else if (const auto* m2 = std::get_if<MidTwoSite>(&spec.variant))
        v["seed"] = m2->seed;
    else if (const auto* rb = std::get_if<RandomBrickwork>(&spec.variant))
        v["seed"] = rb->seed;
    j["variant"] = v;
    return j.dump(2);
}

CircuitSpec from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CircuitSpec spec;
    spec.L = j.at("L").get<int>();
    auto angle_of = [](const nlohmann::json& v) {
        return v.is_string() ? parse_angle(v.get<std::string>()) : v.get<double>();
    };
    if (j.count("J")) spec.J = angle_of(j["J"]);
    if (j.count("b")) spec.b = angle_of(j["b"]);
    if (j.count("g")) spec.g = angle_of(j["g"]);
    if (j.count("h")) spec.h = j["h"].get<std::vector<double>>();

    std::string type = "dual";
    nlohmann::json v;
    if (j.count("variant")) {
        v = j["variant"];
        type = v.value("type", "dual");
    }
    if (type == "dual")
        spec.variant = DualUnitary{};
    else if (type == "boundary_kick")
        spec.variant = BoundaryKick{angle_of(v.at("theta"))};
    else if (type == "boundary_generic")
        spec.variant = BoundaryGeneric{gate_from_values(v.at("u").get<std::vector<double>>())};
    else if (type == "mid_single_site")
        spec.variant = MidSingleSite{v.value("seed", std::uint64_t(0))};
    else if (type == "mid_two_site")
        spec.variant = MidTwoSite{v.value("seed", std::uint64_t(0))};
    else if (type == "random_brickwork")
        spec.variant = RandomBrickwork{v.value("seed", std::uint64_t(0))};
    else
        throw std::invalid_argument("unknown variant '" + type + "'");
    return spec;
}

std::uint64_t spec_hash(const CircuitSpec& spec) {
    std::string canon = to_config_text(spec);
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string spec_hash_hex(const CircuitSpec& spec) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(spec_hash(spec)));
    return buf;
}

}  // namespace sdkim
