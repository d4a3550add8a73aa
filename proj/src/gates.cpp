#include "oamfwm/gates.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "oamfwm/errors.hpp"

namespace oamfwm {

namespace {

std::string upper(std::string_view text) {
  std::string out(text);
  std::ranges::transform(out, out.begin(), [](unsigned char ch) { return std::toupper(ch); });
  return out;
}

Polarization flipped(Polarization p) {
  return p == Polarization::H ? Polarization::V : Polarization::H;
}

char name(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::I: return "I";
    case GateKind::NOT: return "NOT";
    case GateKind::CNOT: return "CNOT";
    case GateKind::ZCNOT: return "ZCNOT";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view text) {
  const std::string key = upper(text);
  if (key == "I") return GateKind::I;
  if (key == "NOT") return GateKind::NOT;
  if (key == "CNOT" || key == "C-NOT") return GateKind::CNOT;
  if (key == "ZCNOT" || key == "Z-CNOT") return GateKind::ZCNOT;
  return std::nullopt;
}

OpticalElement OpticalElement::cgh(int shift, std::string arm) {
  return {ElementKind::Cgh, shift, 0, std::move(arm)};
}
OpticalElement OpticalElement::mirror(std::string arm) {
  return {ElementKind::Mirror, 0, 0, std::move(arm)};
}
OpticalElement OpticalElement::beam_splitter(std::string arm) {
  return {ElementKind::BeamSplitter, 0, 0, std::move(arm)};
}
OpticalElement OpticalElement::pbs(std::string arm) {
  return {ElementKind::Pbs, 0, 0, std::move(arm)};
}
OpticalElement OpticalElement::hwp(std::string arm) {
  return {ElementKind::Hwp, 0, 0, std::move(arm)};
}
OpticalElement OpticalElement::aom(int freq_shift, std::string arm) {
  return {ElementKind::Aom, 0, freq_shift, std::move(arm)};
}

std::string describe(const OpticalElement& element) {
  switch (element.kind) {
    case ElementKind::Cgh: return "cgh(" + std::to_string(element.shift) + ")";
    case ElementKind::Mirror: return "mirror";
    case ElementKind::BeamSplitter: return "bs";
    case ElementKind::Pbs: return "pbs";
    case ElementKind::Hwp: return "hwp";
    case ElementKind::Aom: return "aom(" + std::to_string(element.freq_shift) + ")";
  }
  return "?";
}

OAMSuperposition element_apply(const OpticalElement& element, const OAMSuperposition& state) {
  int sign = 1;
  int shift = 0;
  switch (element.kind) {
    case ElementKind::Cgh: shift = element.shift; break;
    case ElementKind::Mirror: sign = -1; break;
    default: return state;
  }
  OAMSuperposition::Coefficients out;
  for (const auto& [l, c] : state.coefficients()) {
    const int moved = sign * l + shift;
    if (std::abs(moved) > kMaxCharge) {
      throw std::domain_error(describe(element) + " pushes charge to " + std::to_string(moved) +
                              ", beyond the sanity bound");
    }
    out.emplace(moved, c);
  }
  return OAMSuperposition(std::move(out), state.role());
}

BeamTag element_apply(const OpticalElement& element, BeamTag tag) {
  switch (element.kind) {
    case ElementKind::Hwp: tag.polarization = flipped(tag.polarization); break;
    case ElementKind::Aom: tag.frequency_channel += element.freq_shift; break;
    default: break;
  }
  return tag;
}

OAMSuperposition apply_chain(std::span<const OpticalElement> chain, OAMSuperposition state) {
  for (const auto& element : chain) state = element_apply(element, state);
  return state;
}

BeamTag apply_chain(std::span<const OpticalElement> chain, BeamTag tag) {
  for (const auto& element : chain) tag = element_apply(element, tag);
  return tag;
}

GateSetup build_gate(GateKind kind, const GateOptions& options) {
  using E = OpticalElement;
  GateSetup setup;
  setup.kind = kind;
  switch (kind) {
    case GateKind::I:
    case GateKind::NOT: {
      // P1 and P3 split from one seed; the AOM makes the mixing non-degenerate
      // and the wave plates bring both to V, orthogonal to P2.
      setup.shared_seed = true;
      setup.p1_tag = {Polarization::H, 0};
      setup.p3_tag = {Polarization::H, 0};
      setup.p2_tag = {Polarization::H, 2};
      setup.p1_chain = {E::beam_splitter("P1"), E::aom(1, "P1"), E::hwp("P1")};
      setup.p3_chain = {E::beam_splitter("P3"), E::hwp("P3")};
      setup.target_convention.target_one_l = 1;
      if (kind == GateKind::I) {
        setup.pump1 = PumpPolicy::follows_probe(0);
      } else if (options.target_one_l == -1) {
        setup.pump1 = PumpPolicy::follows_probe(1);
        setup.target_convention.target_one_l = -1;
      } else {
        setup.pump1 = PumpPolicy::follows_probe(-1);
      }
      break;
    }
    case GateKind::CNOT:
      setup.pump1 = PumpPolicy::fixed(0);
      setup.p1_tag = {Polarization::H, 1};
      setup.p2_tag = {Polarization::V, 2};
      setup.p3_tag = {Polarization::H, 0};
      setup.p3_chain = {E::cgh(-1, "P3"), E::mirror("P3")};
      setup.p2_chain = {E::cgh(1, "P2")};
      setup.target_convention.target_one_l = -1;
      break;
    case GateKind::ZCNOT:
      // The mirror alone sends the target 0 -> 0, +1 -> -1; the arm hologram
      // carries no net shift.
      setup.pump1 = PumpPolicy::fixed(1);
      setup.p1_tag = {Polarization::H, 1};
      setup.p2_tag = {Polarization::V, 2};
      setup.p3_tag = {Polarization::H, 0};
      setup.p2_chain = {E::mirror("P2"), E::cgh(0, "P2")};
      setup.target_convention.target_one_l = 1;
      break;
  }
  if (options.target_one_l && kind != GateKind::NOT) {
    setup.target_convention.target_one_l = *options.target_one_l;
  }
  setup.target_convention.validate();
  return setup;
}

GateOutput apply_gate(const GateSetup& setup, const OAMSuperposition& control,
                      const OAMSuperposition& target, Complex chi3) {
  if (control.empty() || target.empty()) {
    throw std::invalid_argument("gate inputs must be non-empty");
  }
  const OAMSuperposition p2 = apply_chain(setup.p2_chain, target.with_role(Role::Target));

  // One mixing evaluation per control charge; for a basis control this is a
  // single call.
  OAMSuperposition raw({}, Role::Signal);
  for (const auto& [k, c] : control.coefficients()) {
    const OAMSuperposition p3 =
        apply_chain(setup.p3_chain, OAMSuperposition({{k, c}}, Role::Control));
    const OAMSuperposition p1 = apply_chain(
        setup.p1_chain, OAMSuperposition::basis(setup.pump1.resolve(k), Role::Pump));
    raw = raw + mix_fields(chi3, p1, p2, p3);
  }

  for (const auto& [l, c] : raw.coefficients()) {
    if (std::abs(l) > 1) {
      throw WiringError(std::string(to_string(setup.kind)) + " gate: signal charge l = " +
                        std::to_string(l) + " is outside the logical alphabet");
    }
  }
  const double norm2 = raw.norm_squared();
  if (!(norm2 > 0.0)) throw std::domain_error("gate signal vanishes");
  return {raw.normalized(), raw, norm2, control.size() > 1};
}

std::array<TruthRow, 4> truth_table(const GateSetup& setup) {
  std::array<TruthRow, 4> rows{};
  std::size_t i = 0;
  for (int c = 0; c <= 1; ++c) {
    for (int t = 0; t <= 1; ++t) {
      const auto out = apply_gate(setup, encode_logical(c, setup.target_convention, Role::Control),
                                  encode_logical(t, setup.target_convention, Role::Target));
      if (out.signal.size() != 1) {
        throw WiringError("basis input produced a superposed signal");
      }
      rows[i++] = {c, t, decode_l(out.signal.coefficients().begin()->first)};
    }
  }
  return rows;
}

ValidationReport validate_setup(const GateSetup& setup) {
  ValidationReport report;
  auto& v = report.violations;

  for (const auto* chain : {&setup.p1_chain, &setup.p2_chain, &setup.p3_chain}) {
    for (const auto& element : *chain) {
      if (element.kind == ElementKind::Cgh && std::abs(element.shift) > 2) {
        v.push_back("hologram shift " + std::to_string(element.shift) + " on arm '" +
                    element.arm + "' is outside [-2, 2]");
      }
    }
  }
  try {
    setup.target_convention.validate();
  } catch (const std::exception& e) {
    v.push_back(e.what());
  }

  const BeamTag p1 = apply_chain(setup.p1_chain, setup.p1_tag);
  const BeamTag p2 = apply_chain(setup.p2_chain, setup.p2_tag);
  const BeamTag p3 = apply_chain(setup.p3_chain, setup.p3_tag);
  // Phase matching gives the signal the polarization of the backward pump.
  const Polarization signal = p2.polarization;

  if (p1.polarization == p2.polarization) {
    v.push_back(std::string("P1 and P2 polarizations must be orthogonal (both ") +
                name(p1.polarization) + ")");
  }
  if (p3.polarization != p1.polarization) {
    v.push_back("P3 polarization must match P1");
  }
  if (signal == p3.polarization) {
    v.push_back("signal polarization must be orthogonal to P3");
  }
  if (p1.frequency_channel == p3.frequency_channel) {
    v.push_back("degenerate pump/probe frequency: P1 and P3 share channel " +
                std::to_string(p1.frequency_channel));
  }

  for (int c = 0; c <= 1; ++c) {
    for (int t = 0; t <= 1; ++t) {
      try {
        const auto out =
            apply_gate(setup, encode_logical(c, setup.target_convention, Role::Control),
                       encode_logical(t, setup.target_convention, Role::Target));
        for (const auto& [l, amp] : out.signal.coefficients()) decode_l(l);
      } catch (const std::exception& e) {
        v.push_back("output charge outside alphabet for (c=" + std::to_string(c) +
                    ", t=" + std::to_string(t) + "): " + e.what());
      }
    }
  }
  return report;
}

}  // namespace oamfwm
