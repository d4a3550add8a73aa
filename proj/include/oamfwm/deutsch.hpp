#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oamfwm/gates.hpp"
#include "oamfwm/oamstate.hpp"

namespace oamfwm {

enum class Verdict { Constant, Balanced };

std::string_view to_string(Verdict verdict);

// Two-photon state. `logical` is indexed as control * 2 + target;
// `physical` maps (control charge, target charge) to amplitude.
struct StageSnapshot {
  std::array<Complex, 4> logical{};
  std::map<std::pair<int, int>, Complex> physical;
};

struct DeutschOptions {
  Complex chi3{1.0, 0.0};
  double efficiency = 1.0;
  GateOptions gate;
};

struct DeutschResult {
  GateKind kind = GateKind::I;
  StageSnapshot psi1;
  StageSnapshot psi2;
  StageSnapshot psi3;
  // Post-selected control projection probabilities.
  double p0 = 0.0;
  double p1 = 0.0;
  // Probability that the mixing event happens at all: squared signal norm
  // times efficiency.
  double event_probability = 0.0;
  double p0_scaled = 0.0;
  double p1_scaled = 0.0;
  int global_sign = 1;
  Verdict verdict = Verdict::Constant;
  std::vector<std::string> warnings;
};

// |0>|1> -> H(x)H -> U_f -> H(x)I -> project the control.
DeutschResult run_deutsch(GateKind kind, const DeutschOptions& options = {});
DeutschResult run_deutsch(const GateSetup& setup, const DeutschOptions& options = {});

// Classical baseline: evaluates f(0) and f(1) through two truth-table rows.
Verdict oracle_classify(GateKind kind);

enum class Stage { Psi2, Psi3 };

// Control-qubit factor of a product stage, with the stage's global phase
// folded into it. For psi2 the |1> component sits at l = +1 for the constant
// class and at l = -1 for the balanced class; for psi3 it sits at +1.
OAMSuperposition testing_state(const DeutschResult& result, Stage stage);

struct ProductFactors {
  LogicalAmplitudes control;
  // Unit norm; first non-negligible component real and positive.
  LogicalAmplitudes target;
};

// Splits a two-qubit logical state into control (x) target. Throws
// std::logic_error when the state is entangled.
ProductFactors factor_product(const std::array<Complex, 4>& logical);

}  // namespace oamfwm
