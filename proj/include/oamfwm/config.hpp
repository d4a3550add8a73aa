#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oamfwm/gates.hpp"
#include "oamfwm/lgmode.hpp"
#include "oamfwm/render.hpp"

namespace oamfwm {

// Settings for one CLI run. Text form:
//
//   gate = CNOT
//   seed = 0
//   [beam]    w0, zR, k0
//   [grid]    n, extent, z
//   [fwm]     chi3_re, chi3_im, efficiency, target_one_l
//   [output]  dir, formats   (formats = pgm,csv)
struct RunConfig {
  GateKind gate = GateKind::I;
  BeamParams beam;
  GridSpec grid;
  std::optional<int> target_one_l;
  Complex chi3{1.0, 0.0};
  double efficiency = 1.0;
  std::string output_dir = ".";
  std::vector<ImageFormat> formats{ImageFormat::Pgm};
  // Reserved; the simulation is deterministic.
  std::uint64_t seed = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

// Throws ParseError carrying the offending line number.
ParsedConfig parse_config(std::string_view text);
ParsedConfig load_config(const std::string& path);

std::string serialize_config(const RunConfig& config);

}  // namespace oamfwm
