#include "oamfwm/deutsch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oamfwm/errors.hpp"

namespace oamfwm {

namespace {

using PhysicalMap = std::map<std::pair<int, int>, Complex>;

std::size_t index(int control, int target) { return static_cast<std::size_t>(control * 2 + target); }

std::array<Complex, 4> fold(const PhysicalMap& physical) {
  // Group by control charge so the fold checks each branch's target alphabet.
  std::map<int, OAMSuperposition::Coefficients> branches;
  for (const auto& [charges, amp] : physical) branches[charges.first][charges.second] += amp;

  std::array<Complex, 4> logical{};
  for (const auto& [lc, coefficients] : branches) {
    const int c = decode_l(lc);
    const LogicalAmplitudes t = logical_amplitudes(OAMSuperposition(coefficients));
    logical[index(c, 0)] += t.zero;
    logical[index(c, 1)] += t.one;
  }
  return logical;
}

void validate(const DeutschOptions& options) {
  if (!(options.efficiency > 0.0 && options.efficiency <= 1.0)) {
    throw std::invalid_argument("efficiency out of (0,1]");
  }
  if (!std::isfinite(options.chi3.real()) || !std::isfinite(options.chi3.imag()) ||
      std::abs(options.chi3) == 0.0) {
    throw std::invalid_argument("chi3 must be finite and non-zero");
  }
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::Constant ? "constant" : "balanced";
}

ProductFactors factor_product(const std::array<Complex, 4>& m) {
  const double norm0 = std::norm(m[0]) + std::norm(m[1]);
  const double norm1 = std::norm(m[2]) + std::norm(m[3]);
  const double total = norm0 + norm1;
  if (!(total > 0.0)) throw std::logic_error("cannot factor a zero state");
  if (std::abs(m[0] * m[3] - m[1] * m[2]) > 1e-9 * total) {
    throw std::logic_error("two-qubit state is entangled, not a product");
  }

  const std::size_t row = norm0 >= norm1 ? 0 : 2;
  const double row_norm = std::sqrt(std::max(norm0, norm1));
  Complex t0 = m[row] / row_norm;
  Complex t1 = m[row + 1] / row_norm;
  const Complex lead = std::abs(t0) > 1e-12 ? t0 : t1;
  const Complex phase = std::conj(lead) / std::abs(lead);
  t0 *= phase;
  t1 *= phase;

  ProductFactors out;
  out.target = {t0, t1};
  out.control = {m[0] * std::conj(t0) + m[1] * std::conj(t1),
                 m[2] * std::conj(t0) + m[3] * std::conj(t1)};
  return out;
}

DeutschResult run_deutsch(GateKind kind, const DeutschOptions& options) {
  return run_deutsch(build_gate(kind, options.gate), options);
}

DeutschResult run_deutsch(const GateSetup& setup, const DeutschOptions& options) {
  validate(options);
  const LogicalConvention& convention = setup.target_convention;

  DeutschResult result;
  result.kind = setup.kind;

  // psi0 = |0>|1>, psi1 = H|0> (x) H|1>.
  const OAMSuperposition control =
      hadamard(encode_logical(0, convention, Role::Control), convention);
  const OAMSuperposition target =
      hadamard(encode_logical(1, convention, Role::Target), convention);
  for (const auto& [lc, ac] : control.coefficients()) {
    for (const auto& [lt, at] : target.coefficients()) result.psi1.physical[{lc, lt}] = ac * at;
  }
  result.psi1.logical = fold(result.psi1.physical);

  // U_f: one mixing evaluation per control branch, recombined linearly.
  PhysicalMap raw;
  for (const auto& [lc, ac] : control.coefficients()) {
    OAMSuperposition::Coefficients branch;
    for (const auto& [charges, amp] : result.psi1.physical) {
      if (charges.first == lc) branch[charges.second] = amp;
    }
    GateOutput out;
    try {
      out = apply_gate(setup, OAMSuperposition::basis(lc, Role::Control),
                       OAMSuperposition(branch, Role::Target), options.chi3);
    } catch (const WiringError& e) {
      throw WiringError(std::string(to_string(setup.kind)) + " gate, control branch l = " +
                        std::to_string(lc) + ": " + e.what());
    }
    if (out.superposed_control) result.warnings.emplace_back("superposed control routed through FWM");
    for (const auto& [ls, amp] : out.raw_signal.coefficients()) raw[{lc, ls}] += amp;
  }

  double norm2 = 0.0;
  for (const auto& [charges, amp] : raw) norm2 += std::norm(amp);
  if (!(norm2 > 0.0)) throw std::domain_error("U_f output vanishes");
  const double scale = 1.0 / std::sqrt(norm2);
  for (const auto& [charges, amp] : raw) result.psi2.physical[charges] = amp * scale;
  result.psi2.logical = fold(result.psi2.physical);

  // Final Hadamard on the control, after folding +-1 onto |1>.
  std::map<int, LogicalAmplitudes> by_target;
  for (const auto& [charges, amp] : result.psi2.physical) {
    auto& slot = by_target[charges.second];
    (decode_l(charges.first) == 0 ? slot.zero : slot.one) += amp;
  }
  for (const auto& [lt, amps] : by_target) {
    const LogicalAmplitudes h = hadamard(amps);
    result.psi3.physical[{0, lt}] += h.zero;
    result.psi3.physical[{convention.control_one_l, lt}] += h.one;
  }
  std::erase_if(result.psi3.physical, [](const auto& entry) {
    return std::abs(entry.second) < OAMSuperposition::kPruneThreshold;
  });
  const auto& l2 = result.psi2.logical;
  for (int t = 0; t <= 1; ++t) {
    const LogicalAmplitudes h = hadamard(LogicalAmplitudes{l2[index(0, t)], l2[index(1, t)]});
    result.psi3.logical[index(0, t)] = h.zero;
    result.psi3.logical[index(1, t)] = h.one;
  }

  const auto& l3 = result.psi3.logical;
  result.p0 = std::norm(l3[0]) + std::norm(l3[1]);
  result.p1 = std::norm(l3[2]) + std::norm(l3[3]);
  result.event_probability = norm2 * options.efficiency;
  result.p0_scaled = result.p0 * norm2 * options.efficiency;
  result.p1_scaled = result.p1 * norm2 * options.efficiency;
  result.verdict = result.p0 > result.p1 ? Verdict::Constant : Verdict::Balanced;
  if (std::max(result.p0, result.p1) < 1.0 - 1e-9) {
    result.warnings.emplace_back("control projection is not deterministic");
  }

  // Sign of psi3 relative to the phase of chi3.
  try {
    const ProductFactors f = factor_product(l3);
    const Complex s = result.verdict == Verdict::Constant ? f.control.zero : f.control.one;
    const Complex reference = options.chi3 / std::abs(options.chi3);
    result.global_sign = (s * std::conj(reference)).real() >= 0.0 ? 1 : -1;
  } catch (const std::logic_error&) {
    result.warnings.emplace_back("psi3 is not a product state; global sign undefined");
  }
  return result;
}

Verdict oracle_classify(GateKind kind) {
  const auto rows = truth_table(build_gate(kind));
  int f0 = -1;
  int f1 = -1;
  for (const auto& row : rows) {
    if (row.target_in != 0) continue;
    (row.control == 0 ? f0 : f1) = row.target_out;
  }
  return f0 == f1 ? Verdict::Constant : Verdict::Balanced;
}

OAMSuperposition testing_state(const DeutschResult& result, Stage stage) {
  const StageSnapshot& snapshot = stage == Stage::Psi2 ? result.psi2 : result.psi3;
  const ProductFactors f = factor_product(snapshot.logical);
  int one_l = 1;
  if (stage == Stage::Psi2 && result.verdict == Verdict::Balanced) one_l = -1;
  return OAMSuperposition({{0, f.control.zero}, {one_l, f.control.one}}, Role::Control);
}

}  // namespace oamfwm
