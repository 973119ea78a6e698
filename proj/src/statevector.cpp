#include "sdkim/statevector.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "sdkim/rmt.hpp"
#include "sdkim/rng.hpp"

namespace sdkim {

namespace {

// Stream-id tags for deriving per-gate seeds; arbitrary distinct constants.
constexpr std::uint64_t kTagMidSingle = 0x6D696431;  // "mid1"
constexpr std::uint64_t kTagMidTwo = 0x6D696432;     // "mid2"
constexpr std::uint64_t kTagBrick = 0x6272696B;      // "brik"

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

}  // namespace

double StateVector::norm2() const {
    NeumaierSum acc;
    for (const cplx& a : amps) acc.add(std::norm(a));
    return acc.value();
}

StateVector init_zero(int L) {
    if (L < 2) throw std::invalid_argument("init_zero: L must be >= 2");
    if (L > 28) {
        // 2^L complex doubles; refuse allocations beyond 2^28 (4 GiB).
        unsigned long long bytes = 16ULL << L;
        throw std::length_error("init_zero: L = " + std::to_string(L) +
                                " needs " + std::to_string(bytes) +
                                " bytes of amplitudes (limit L = 28)");
    }
    StateVector psi;
    psi.L = L;
    psi.amps.assign(std::uint64_t(1) << L, cplx(0, 0));
    psi.amps[0] = cplx(1, 0);
    return psi;
}

void apply_ising_layer(StateVector& psi, const CircuitSpec& spec) {
    const int L = psi.L;
    const std::uint64_t n = psi.size();
    if (spec.h.empty()) {
        // Homogeneous field: the phase depends on (ndiff, popcount) only.
        // Precompute the L x (L+1) table instead of calling polar per index.
        std::vector<cplx> table(static_cast<size_t>(L) * (L + 1));
        for (int a = 0; a < L; ++a)
            for (int p = 0; p <= L; ++p) {
                double angle = spec.J * static_cast<double>((L - 1) - 2 * a) +
                               spec.g * static_cast<double>(L - 2 * p);
                table[static_cast<size_t>(a) * (L + 1) + p] = std::polar(1.0, -angle);
            }
        const std::uint64_t mask = (std::uint64_t(1) << (L - 1)) - 1;
        for (std::uint64_t z = 0; z < n; ++z) {
            int a = std::popcount((z ^ (z >> 1)) & mask);
            int p = std::popcount(z);
            psi.amps[z] *= table[static_cast<size_t>(a) * (L + 1) + p];
        }
    } else {
        for (std::uint64_t z = 0; z < n; ++z) psi.amps[z] *= ising_phase(spec, z);
    }
}

void apply_site_gate(StateVector& psi, int j, const GateU2& u) {
    const int p = psi.L - j;  // bit position of site j
    const std::uint64_t stride = std::uint64_t(1) << p;
    const std::uint64_t n = psi.size();
    const cplx m00 = u.m[0], m01 = u.m[1], m10 = u.m[2], m11 = u.m[3];
    for (std::uint64_t base = 0; base < n; base += 2 * stride)
        for (std::uint64_t off = 0; off < stride; ++off) {
            cplx& a0 = psi.amps[base + off];
            cplx& a1 = psi.amps[base + off + stride];
            cplx b0 = m00 * a0 + m01 * a1;
            cplx b1 = m10 * a0 + m11 * a1;
            a0 = b0;
            a1 = b1;
        }
}

void apply_kick_layer(StateVector& psi, const CircuitSpec& spec) {
    const GateU2 k = kick_gate(spec.b);
    for (int j = 1; j <= psi.L; ++j) apply_site_gate(psi, j, k);
}

void apply_bond_gate(StateVector& psi, int j, const GateU4& u) {
    const int ph = psi.L - j;        // bit of site j (high bit of the pair)
    const int pl = psi.L - (j + 1);  // bit of site j+1
    const std::uint64_t sh = std::uint64_t(1) << ph;
    const std::uint64_t sl = std::uint64_t(1) << pl;
    const std::uint64_t n = psi.size();
    for (std::uint64_t z = 0; z < n; ++z) {
        if (z & (sh | sl)) continue;  // visit each quadruple once
        cplx a[4] = {psi.amps[z], psi.amps[z | sl], psi.amps[z | sh],
                     psi.amps[z | sh | sl]};
        for (int r = 0; r < 4; ++r) {
            cplx acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += u.m[4 * r + c] * a[c];
            psi.amps[z | (r & 2 ? sh : 0) | (r & 1 ? sl : 0)] = acc;
        }
    }
}

void floquet_step(StateVector& psi, const CircuitSpec& spec, int period) {
    const int L = psi.L;

    if (const auto* rb = std::get_if<RandomBrickwork>(&spec.variant)) {
        // One period = even-bond layer then odd-bond layer, open boundary.
        for (int layer = 0; layer < 2; ++layer)
            for (int j = 1 + layer; j + 1 <= L; j += 2) {
                Rng rng(derive_seed(rb->seed,
                                    {kTagBrick, std::uint64_t(period),
                                     std::uint64_t(layer), std::uint64_t(j)}));
                apply_bond_gate(psi, j, sample_gate_u4(rng));
            }
        return;
    }

    apply_ising_layer(psi, spec);

    const GateU2 bulk = kick_gate(spec.b);
    const GateU2* last = &bulk;
    GateU2 boundary;
    if (const auto* bk = std::get_if<BoundaryKick>(&spec.variant)) {
        boundary = kick_gate(bk->theta);
        last = &boundary;
    } else if (const auto* bg = std::get_if<BoundaryGeneric>(&spec.variant)) {
        last = &bg->u;
    }
    for (int j = 1; j <= L; ++j) apply_site_gate(psi, j, j == L ? *last : bulk);

    if (const auto* m1 = std::get_if<MidSingleSite>(&spec.variant)) {
        // Fixed in time: seed does not involve the period.
        Rng rng(derive_seed(m1->seed, {kTagMidSingle}));
        apply_site_gate(psi, (L + 1) / 2, sample_gate_u2(rng));
    } else if (const auto* m2 = std::get_if<MidTwoSite>(&spec.variant)) {
        Rng rng(derive_seed(m2->seed, {kTagMidTwo, std::uint64_t(period)}));
        apply_bond_gate(psi, (L + 1) / 2, sample_gate_u4(rng));
    }
}

StateVector evolve(const CircuitSpec& spec, int t) {
    StateVector psi = init_zero(spec.L);
    for (int k = 0; k < t; ++k) floquet_step(psi, spec, k);
    return psi;
}

cplx amplitude(const StateVector& psi, std::uint64_t z) {
    if (z >= psi.size())
        throw std::out_of_range("amplitude: bit-string index out of range");
    return psi.amps[z];
}

void dump_probabilities(const StateVector& psi, const CircuitSpec& spec, int t,
                        const std::string& path) {
    static_assert(std::endian::native == std::endian::little,
                  "probability dumps are defined little-endian");
    nlohmann::json header;
    header["format"] = "sdkim-probs-v1";
    header["L"] = psi.L;
    header["t"] = t;
    header["spec_hash"] = spec_hash_hex(spec);
    header["count"] = psi.size();
    header["dtype"] = "float64-le";
    std::string htext = header.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::uint64_t hlen = htext.size();
    out.write(reinterpret_cast<const char*>(&hlen), 8);
    out.write(htext.data(), static_cast<std::streamsize>(htext.size()));
    std::vector<double> p(psi.size());
    for (std::uint64_t z = 0; z < psi.size(); ++z) p[z] = std::norm(psi.amps[z]);
    out.write(reinterpret_cast<const char*>(p.data()),
              static_cast<std::streamsize>(p.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

ProbabilityDump load_probabilities(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::uint64_t hlen = 0;
    in.read(reinterpret_cast<char*>(&hlen), 8);
    std::string htext(hlen, '\0');
    in.read(htext.data(), static_cast<std::streamsize>(hlen));
    nlohmann::json header = nlohmann::json::parse(htext);
    if (header.value("format", "") != "sdkim-probs-v1")
        throw std::runtime_error("'" + path + "' is not a probability dump");

    ProbabilityDump d;
    d.L = header.at("L").get<int>();
    d.t = header.at("t").get<int>();
    d.spec_hash = header.at("spec_hash").get<std::string>();
    d.p.resize(header.at("count").get<std::uint64_t>());
    in.read(reinterpret_cast<char*>(d.p.data()),
            static_cast<std::streamsize>(d.p.size() * sizeof(double)));
    if (!in) throw std::runtime_error("short read from '" + path + "'");
    return d;
}

}  // namespace sdkim
