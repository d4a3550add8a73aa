#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oamfwm/fwm.hpp"
#include "oamfwm/oamstate.hpp"

namespace oamfwm {

enum class GateKind { I, NOT, CNOT, ZCNOT };

inline constexpr std::array<GateKind, 4> kAllGates{GateKind::I, GateKind::NOT, GateKind::CNOT,
                                                   GateKind::ZCNOT};

std::string_view to_string(GateKind kind);
// Accepts I, NOT, CNOT, C-NOT, ZCNOT, Z-CNOT (case-insensitive).
std::optional<GateKind> parse_gate_kind(std::string_view text);

enum class Polarization { H, V };

struct BeamTag {
  Polarization polarization = Polarization::H;
  int frequency_channel = 0;

  friend bool operator==(const BeamTag&, const BeamTag&) = default;
};

enum class ElementKind { Cgh, Mirror, BeamSplitter, Pbs, Hwp, Aom };

// One optical element on a beam arm. Only holograms and mirrors touch the
// charge; the rest act on routing tags.
struct OpticalElement {
  ElementKind kind = ElementKind::Mirror;
  int shift = 0;       // charge shift of a hologram, in {-2..2}
  int freq_shift = 0;  // frequency channel shift of an AOM
  std::string arm;

  static OpticalElement cgh(int shift, std::string arm = {});
  static OpticalElement mirror(std::string arm = {});
  static OpticalElement beam_splitter(std::string arm = {});
  static OpticalElement pbs(std::string arm = {});
  static OpticalElement hwp(std::string arm = {});
  static OpticalElement aom(int freq_shift, std::string arm = {});

  friend bool operator==(const OpticalElement&, const OpticalElement&) = default;
};

std::string describe(const OpticalElement& element);

// Hologram: l -> l + shift. Mirror: l -> -l. Throws std::domain_error when a
// charge leaves |l| <= kMaxCharge.
OAMSuperposition element_apply(const OpticalElement& element, const OAMSuperposition& state);
BeamTag element_apply(const OpticalElement& element, BeamTag tag);

OAMSuperposition apply_chain(std::span<const OpticalElement> chain, OAMSuperposition state);
BeamTag apply_chain(std::span<const OpticalElement> chain, BeamTag tag);

// Charge of the first pump: either fixed, or slaved to the probe charge
// (both beams split from one seed) plus a hologram offset.
struct PumpPolicy {
  enum class Mode { Fixed, FollowsProbe };

  Mode mode = Mode::Fixed;
  int value = 0;  // fixed charge or offset

  static PumpPolicy fixed(int l) { return {Mode::Fixed, l}; }
  static PumpPolicy follows_probe(int offset) { return {Mode::FollowsProbe, offset}; }

  int resolve(int probe_l) const { return mode == Mode::Fixed ? value : probe_l + value; }

  friend bool operator==(const PumpPolicy&, const PumpPolicy&) = default;
};

struct GateSetup {
  GateKind kind = GateKind::I;
  PumpPolicy pump1;
  std::vector<OpticalElement> p1_chain;
  std::vector<OpticalElement> p2_chain;
  std::vector<OpticalElement> p3_chain;
  // Physical charge of logical |1> as each qubit leaves its source.
  LogicalConvention target_convention;
  // Tags at the sources, before the arm chains.
  BeamTag p1_tag;
  BeamTag p2_tag;
  BeamTag p3_tag;
  // P1 and P3 split from a single seed beam.
  bool shared_seed = false;

  // Fixed pump charge; only meaningful for PumpPolicy::Mode::Fixed.
  int pump1_l() const { return pump1.value; }
};

struct GateOptions {
  // Overrides the target |1> charge. For NOT, -1 selects the variant whose
  // pump hologram raises the charge (l_p1 = l_p3 + 1).
  std::optional<int> target_one_l;
};

GateSetup build_gate(GateKind kind, const GateOptions& options = {});

struct GateOutput {
  OAMSuperposition signal;      // renormalized
  OAMSuperposition raw_signal;  // linear FWM output before renormalization
  double raw_norm_squared = 0.0;
  // Set when the control was not a basis state; the probe then enters the
  // antilinear mixing map branch by branch.
  bool superposed_control = false;
};

// Runs the arm chains, resolves the pump, and mixes. `control` and `target`
// are given at their sources in the setup's conventions. Throws WiringError
// when the signal carries a charge outside {-1, 0, 1}.
GateOutput apply_gate(const GateSetup& setup, const OAMSuperposition& control,
                      const OAMSuperposition& target, Complex chi3 = {1.0, 0.0});

struct TruthRow {
  int control = 0;
  int target_in = 0;
  int target_out = 0;

  friend bool operator==(const TruthRow&, const TruthRow&) = default;
};

std::array<TruthRow, 4> truth_table(const GateSetup& setup);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Polarization, frequency and alphabet checks. Never throws.
ValidationReport validate_setup(const GateSetup& setup);

}  // namespace oamfwm
