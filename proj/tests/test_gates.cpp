#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oamfwm/errors.hpp"
#include "oamfwm/gates.hpp"
#include "oracles.hpp"

using namespace oamfwm;

namespace {

oracle::Function function_of(GateKind kind) {
  switch (kind) {
    case GateKind::I: return oracle::Function::Zero;
    case GateKind::NOT: return oracle::Function::One;
    case GateKind::CNOT: return oracle::Function::Identity;
    case GateKind::ZCNOT: return oracle::Function::Negation;
  }
  return oracle::Function::Zero;
}

bool has_violation(const ValidationReport& report, const std::string& needle) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

// Logical target state in a setup's convention.
OAMSuperposition logical_target(const GateSetup& setup, Complex zero, Complex one) {
  return from_logical({zero, one}, setup.target_convention, Role::Target);
}

// |<expected|signal>|^2 after folding +-1 onto |1>; the signal's |1> charge
// depends on the control branch.
double logical_fidelity(const OAMSuperposition& signal, Complex zero, Complex one) {
  const auto amps = logical_amplitudes(signal);
  return std::norm(std::conj(zero) * amps.zero + std::conj(one) * amps.one);
}

}  // namespace

TEST_CASE("element_apply on charges") {
  const Complex a{0.6, 0.0};
  const Complex b{0.0, 0.8};
  const auto mirrored = element_apply(OpticalElement::mirror(), OAMSuperposition({{0, a}, {-1, b}}));
  CHECK(mirrored == OAMSuperposition({{0, a}, {1, b}}));

  const std::vector<OpticalElement> chain{OpticalElement::cgh(-1), OpticalElement::mirror()};
  CHECK(apply_chain(chain, OAMSuperposition::basis(0)) == OAMSuperposition::basis(1));
  CHECK(apply_chain(chain, OAMSuperposition::basis(1)) == OAMSuperposition::basis(0));

  const auto shifted = element_apply(OpticalElement::cgh(2), OAMSuperposition({{0, a}, {1, b}}));
  CHECK(shifted == OAMSuperposition({{2, a}, {3, b}}));

  for (auto e : {OpticalElement::beam_splitter(), OpticalElement::pbs(), OpticalElement::hwp(),
                 OpticalElement::aom(1)}) {
    CHECK(element_apply(e, OAMSuperposition({{0, a}, {1, b}})) == OAMSuperposition({{0, a}, {1, b}}));
  }
  CHECK_THROWS_AS(element_apply(OpticalElement::cgh(2), OAMSuperposition::basis(7)), std::domain_error);
}

TEST_CASE("element_apply on tags") {
  const BeamTag h{Polarization::H, 0};
  CHECK(element_apply(OpticalElement::hwp(), h).polarization == Polarization::V);
  CHECK(element_apply(OpticalElement::aom(1), h).frequency_channel == 1);
  CHECK(element_apply(OpticalElement::cgh(1), h) == h);
  CHECK(element_apply(OpticalElement::mirror(), h) == h);
}

TEST_CASE("parse_gate_kind") {
  CHECK(parse_gate_kind("cnot") == GateKind::CNOT);
  CHECK(parse_gate_kind("C-NOT") == GateKind::CNOT);
  CHECK(parse_gate_kind("Z-CNOT") == GateKind::ZCNOT);
  CHECK(parse_gate_kind("not") == GateKind::NOT);
  CHECK_FALSE(parse_gate_kind("XOR").has_value());
  for (GateKind k : kAllGates) CHECK(parse_gate_kind(to_string(k)) == k);
}

TEST_CASE("build_gate pump charges") {
  CHECK(build_gate(GateKind::CNOT).pump1_l() == 0);
  CHECK(build_gate(GateKind::ZCNOT).pump1_l() == 1);
  CHECK(build_gate(GateKind::I).pump1 == PumpPolicy::follows_probe(0));
  CHECK(build_gate(GateKind::NOT).pump1 == PumpPolicy::follows_probe(-1));
  CHECK(build_gate(GateKind::CNOT).target_convention.target_one_l == -1);
}

TEST_CASE("I gate with matched pump and probe returns the probe charge") {
  const GateSetup setup = build_gate(GateKind::I);
  for (int c : {0, 1}) {
    for (int l : {-1, 0, 1}) {
      const auto out = apply_gate(setup, encode_logical(c, setup.target_convention, Role::Control),
                                  OAMSuperposition::basis(l));
      CHECK(out.signal == OAMSuperposition::basis(l, Role::Signal));
    }
  }
}

TEST_CASE("truth tables: 16 cases against the classical functions") {
  for (GateKind kind : kAllGates) {
    const GateSetup setup = build_gate(kind);
    const auto rows = truth_table(setup);
    for (const auto& row : rows) {
      const int expected = row.target_in ^ oracle::evaluate(function_of(kind), row.control);
      CHECK_MESSAGE(row.target_out == expected, to_string(kind), " c=", row.control,
                    " t=", row.target_in);
    }
  }
}

TEST_CASE("spot examples from the gate descriptions") {
  const GateSetup i = build_gate(GateKind::I);
  const auto keep = apply_gate(i, OAMSuperposition::basis(1, Role::Control), OAMSuperposition::basis(0));
  CHECK(logical_amplitudes(keep.signal).zero == Complex{1.0, 0.0});

  const GateSetup z = build_gate(GateKind::ZCNOT);
  const auto flip = apply_gate(z, OAMSuperposition::basis(0, Role::Control), OAMSuperposition::basis(0));
  CHECK(std::norm(logical_amplitudes(flip.signal).one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("CNOT on a superposed target") {
  const GateSetup setup = build_gate(GateKind::CNOT);
  for (int k = 0; k < 17; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 17.0;
    const Complex alpha = std::cos(theta / 2.0);
    const Complex beta = std::sin(theta / 2.0);
    const auto target = logical_target(setup, alpha, beta);

    const auto c0 = apply_gate(setup, encode_logical(0, setup.target_convention, Role::Control), target);
    const auto c1 = apply_gate(setup, encode_logical(1, setup.target_convention, Role::Control), target);
    CHECK(logical_fidelity(c0.signal, alpha, beta) >= 1.0 - 1e-12);
    CHECK(logical_fidelity(c1.signal, beta, alpha) >= 1.0 - 1e-12);
  }
}

TEST_CASE("apply_gate is linear in the target for every gate") {
  std::mt19937 rng(314);
  std::normal_distribution<double> g;
  for (GateKind kind : kAllGates) {
    const GateSetup setup = build_gate(kind);
    for (int trial = 0; trial < 25; ++trial) {
      const Complex a{g(rng), g(rng)};
      const Complex b{g(rng), g(rng)};
      const double norm = std::sqrt(std::norm(a) + std::norm(b));
      const Complex alpha = a / norm;
      const Complex beta = b / norm;
      for (int c : {0, 1}) {
        const int f = oracle::evaluate(function_of(kind), c);
        const auto out = apply_gate(setup, encode_logical(c, setup.target_convention, Role::Control),
                                    logical_target(setup, alpha, beta));
        // X^f applied to (alpha, beta), up to a global phase.
        CHECK(logical_fidelity(out.signal, f ? beta : alpha, f ? alpha : beta) >= 1.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("CNOT and ZCNOT are involutions on the logical level") {
  for (GateKind kind : {GateKind::CNOT, GateKind::ZCNOT}) {
    const auto rows = truth_table(build_gate(kind));
    for (const auto& row : rows) {
      const auto& again = rows[static_cast<std::size_t>(row.control * 2 + row.target_out)];
      CHECK(again.target_out == row.target_in);
    }
  }
}

TEST_CASE("NOT variant with a raising pump hologram") {
  const GateSetup setup = build_gate(GateKind::NOT, GateOptions{-1});
  CHECK(setup.pump1 == PumpPolicy::follows_probe(1));
  CHECK(setup.target_convention.target_one_l == -1);
  for (const auto& row : truth_table(setup)) CHECK(row.target_out == 1 - row.target_in);
  CHECK(validate_setup(setup).ok());
}

TEST_CASE("validate_setup") {
  for (GateKind kind : kAllGates) {
    const auto report = validate_setup(build_gate(kind));
    CHECK_MESSAGE(report.ok(), to_string(kind));
  }

  GateSetup no_aom = build_gate(GateKind::I);
  std::erase_if(no_aom.p1_chain, [](const OpticalElement& e) { return e.kind == ElementKind::Aom; });
  CHECK(has_violation(validate_setup(no_aom), "degenerate pump/probe frequency"));

  GateSetup wide = build_gate(GateKind::CNOT);
  wide.p2_chain = {OpticalElement::cgh(2, "P2")};
  CHECK(has_violation(validate_setup(wide), "output charge outside alphabet"));

  GateSetup parallel = build_gate(GateKind::CNOT);
  parallel.p2_tag.polarization = Polarization::H;
  const auto report = validate_setup(parallel);
  CHECK_FALSE(report.ok());
  CHECK(has_violation(report, "orthogonal"));

  GateSetup far = build_gate(GateKind::CNOT);
  far.p2_chain = {OpticalElement::cgh(3, "P2")};
  CHECK_NOTHROW(validate_setup(far));
  CHECK_FALSE(validate_setup(far).ok());
}

TEST_CASE("apply_gate wiring errors") {
  GateSetup wide = build_gate(GateKind::CNOT);
  wide.p2_chain = {OpticalElement::cgh(2, "P2")};
  CHECK_THROWS_AS(apply_gate(wide, OAMSuperposition::basis(1, Role::Control), OAMSuperposition::basis(0)),
                  WiringError);
  CHECK_THROWS_AS(truth_table(wide), WiringError);
}

TEST_CASE("superposed controls are flagged") {
  const GateSetup setup = build_gate(GateKind::CNOT);
  const double s = 1.0 / std::sqrt(2.0);
  const auto basis = apply_gate(setup, OAMSuperposition::basis(1, Role::Control), OAMSuperposition::basis(0));
  CHECK_FALSE(basis.superposed_control);
  const auto mixed = apply_gate(setup, OAMSuperposition({{0, s}, {1, s}}, Role::Control),
                                OAMSuperposition::basis(0));
  CHECK(mixed.superposed_control);
}
