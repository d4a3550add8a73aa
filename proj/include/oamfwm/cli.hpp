#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oamfwm/config.hpp"
#include "oamfwm/deutsch.hpp"
#include "oamfwm/oamstate.hpp"

namespace oamfwm {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kIoOrParse = 2;
}  // namespace exit_code

// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutputDirEnv = "OAMFWM_OUT_DIR";

// Parses "l:re:im,l:re:im,..." and normalizes. Throws ParseError.
OAMSuperposition parse_state_spec(std::string_view spec);

// Fixed notation with 12 digits after the point; negative zero prints as 0.
std::string format_number(double value);

// Sorted-key JSON record of a run.
std::string result_record(const DeutschResult& result, const RunConfig& config);

int cmd_gate_table(GateKind kind, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const OAMSuperposition& state, const RunConfig& config, ImageFormat format,
               const std::string& output_path, std::ostream& out, std::ostream& err);
int cmd_project(const OAMSuperposition& state, int l, const RunConfig& config, std::ostream& out,
                std::ostream& err);

// Full command-line entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oamfwm
