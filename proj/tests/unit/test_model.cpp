#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "sdkim/model.hpp"
#include "sdkim/rmt.hpp"
#include "sdkim/rng.hpp"

using namespace sdkim;

TEST_CASE("kick_gate is exp(-i b sigma_x)") {
    GateU2 k = kick_gate(pi / 4);
    CHECK(k.unitarity_error() < 1e-15);
    CHECK(k.m[0] == cplx(std::cos(pi / 4), 0));
    CHECK(k.m[1] == cplx(0, -std::sin(pi / 4)));
    CHECK(k.m[1] == k.m[2]);
    CHECK(k.m[0] == k.m[3]);
    CHECK(kick_gate(0).m[0] == cplx(1, 0));
    CHECK(kick_gate(0).m[1] == cplx(0, 0));
}

TEST_CASE("ising_phase matches a hand-computed L=2 case") {
    CircuitSpec spec = CircuitSpec::dual_unitary(2, pi / 3);
    // z = 0 -> s = (+1,+1): angle = J + h1 + h2 = pi/4 + 2pi/3
    cplx expect0 = std::polar(1.0, -(pi / 4 + 2 * pi / 3));
    CHECK(std::abs(ising_phase(spec, 0) - expect0) < 1e-15);
    // z = 1 -> s = (+1,-1): angle = -J + h1 - h2 = -pi/4
    cplx expect1 = std::polar(1.0, -(-pi / 4 + pi / 3 - pi / 3));
    CHECK(std::abs(ising_phase(spec, 1) - expect1) < 1e-15);
    // z = 2 -> s = (-1,+1): angle = -J - h1 + h2
    cplx expect2 = std::polar(1.0, pi / 4);
    CHECK(std::abs(ising_phase(spec, 2) - expect2) < 1e-15);
    // z = 3 -> s = (-1,-1): angle = J - 2g
    cplx expect3 = std::polar(1.0, -(pi / 4 - 2 * pi / 3));
    CHECK(std::abs(ising_phase(spec, 3) - expect3) < 1e-15);
}

TEST_CASE("ising_phase honors inhomogeneous fields") {
    CircuitSpec spec = CircuitSpec::dual_unitary(3);
    spec.h = {0.1, 0.2, 0.3};
    // z = 5 = (101): sites s = (-1,+1,-1); bonds: -J -J; field: -0.1+0.2-0.3
    double angle = -pi / 4 - pi / 4 - 0.1 + 0.2 - 0.3;
    CHECK(std::abs(ising_phase(spec, 5) - std::polar(1.0, -angle)) < 1e-15);
}

TEST_CASE("validate flags structural problems") {
    CHECK(validate(CircuitSpec::dual_unitary(8)).ok());

    CircuitSpec bad = CircuitSpec::dual_unitary(1);
    CHECK_FALSE(validate(bad).ok());

    CircuitSpec off = CircuitSpec::dual_unitary(6);
    off.J = 0.7;
    CHECK_FALSE(validate(off).ok());

    CircuitSpec hlen = CircuitSpec::dual_unitary(6);
    hlen.h = {0.1, 0.2};
    CHECK_FALSE(validate(hlen).ok());

    GateU2 not_unitary;
    not_unitary.m = {cplx(1, 0), cplx(0.5, 0), cplx(0, 0), cplx(1, 0)};
    CHECK_FALSE(validate(CircuitSpec::boundary_generic(6, not_unitary)).ok());

    // Brickwork replaces the whole period; the self-dual constraint is moot.
    CircuitSpec rb = CircuitSpec::random_brickwork(6, 3);
    rb.J = 0.0;
    CHECK(validate(rb).ok());
}

TEST_CASE("validate warns at the non-generic field points") {
    CircuitSpec spec = CircuitSpec::dual_unitary(6, pi / 8);
    ValidationReport rep = validate(spec);
    CHECK(rep.ok());
    CHECK(rep.warnings.size() == 1);

    CHECK(validate(CircuitSpec::dual_unitary(6, pi / 2)).warnings.size() == 1);
    CHECK(validate(CircuitSpec::dual_unitary(6, pi / 3)).warnings.empty());
}

TEST_CASE("config text round-trips every variant") {
    Rng rng(11);
    GateU2 u = sample_gate_u2(rng);
    CircuitSpec specs[] = {
        CircuitSpec::dual_unitary(10),
        CircuitSpec::boundary_kick(12, pi / 14),
        CircuitSpec::boundary_generic(8, u),
        CircuitSpec::mid_single_site(9, 77),
        CircuitSpec::mid_two_site(9, 78),
        CircuitSpec::random_brickwork(10, 99),
    };
    specs[0].h = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    for (const auto& s : specs) {
        CAPTURE(s.variant_name());
        CircuitSpec back = from_config_text(to_config_text(s));
        CHECK(to_config_text(back) == to_config_text(s));
        CHECK(spec_hash(back) == spec_hash(s));

        CircuitSpec jback = from_json_text(to_json_text(s));
        CHECK(to_config_text(jback) == to_config_text(s));
    }
}

TEST_CASE("config text stores angles as pi fractions") {
    std::string text = to_config_text(CircuitSpec::boundary_kick(8, pi / 14));
    CHECK(text.find("g = pi/3") != std::string::npos);
    CHECK(text.find("theta = pi/14") != std::string::npos);
    CHECK(text.find("J = pi/4") != std::string::npos);
}

TEST_CASE("from_config_text fills self-dual defaults and rejects bad input") {
    // L is the only required key; couplings default to the self-dual point.
    CircuitSpec minimal = from_config_text("L = 8\n");
    CHECK(minimal.L == 8);
    CHECK(minimal.J == pi / 4);
    CHECK(minimal.b == pi / 4);
    CHECK(minimal.g == pi / 3);
    CHECK(minimal.variant_name() == "dual");

    CHECK_THROWS_AS(from_config_text("J = pi/4\n"), std::invalid_argument);
    CHECK_THROWS_AS(from_config_text("L = 8\nvariant = boundary_kick\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_config_text("variant = nosuch\nL = 8\nJ = pi/4\nb = pi/4\ng = pi/3\n"),
                    std::invalid_argument);
}

TEST_CASE("spec_hash distinguishes parameter changes") {
    auto a = CircuitSpec::dual_unitary(10);
    auto b = CircuitSpec::dual_unitary(12);
    auto c = CircuitSpec::dual_unitary(10, pi / 5);
    CHECK(spec_hash(a) != spec_hash(b));
    CHECK(spec_hash(a) != spec_hash(c));
    CHECK(spec_hash_hex(a).size() == 16);
}
