#include "oamfwm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oamfwm/errors.hpp"
#include "oamfwm/lgmode.hpp"
#include "oamfwm/render.hpp"

namespace oamfwm {

namespace {

using nlohmann::json;

void emit(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        emit(value, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

json complex_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json stage_json(const StageSnapshot& stage) {
  json logical = json::object();
  const char* labels[] = {"00", "01", "10", "11"};
  for (std::size_t i = 0; i < 4; ++i) logical[labels[i]] = complex_json(stage.logical[i]);
  json physical = json::array();
  for (const auto& [charges, amp] : stage.physical) {
    physical.push_back({{"control_l", charges.first},
                        {"target_l", charges.second},
                        {"re", amp.real()},
                        {"im", amp.imag()}});
  }
  return {{"logical", logical}, {"physical", physical}};
}

json state_json(const OAMSuperposition& state) {
  json out = json::array();
  for (const auto& [l, c] : state.coefficients()) {
    out.push_back({{"l", l}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

DeutschOptions options_for(const RunConfig& config) {
  DeutschOptions options;
  options.chi3 = config.chi3;
  options.efficiency = config.efficiency;
  options.gate.target_one_l = config.target_one_l;
  return options;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed '" + path.string() + "'");
}

void print_stats(std::ostream& out, const PatternStats& stats) {
  out << "center_intensity_ratio " << format_number(stats.center_intensity_ratio) << "\n"
      << "ring_radius " << format_number(stats.ring_radius) << "\n"
      << "azimuth_of_max " << format_number(stats.azimuth_of_max) << "\n"
      << "anisotropy " << format_number(stats.anisotropy) << "\n"
      << "pattern " << to_string(classify(stats)) << "\n";
}

// Runs a command body, mapping exceptions onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_code::kIoOrParse;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return exit_code::kIoOrParse;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return exit_code::kIoOrParse;
  } catch (const std::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_code::kValidation;
  }
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12f", value);
  std::string text(buffer);
  if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') text.erase(0, 1);
  return text;
}

OAMSuperposition parse_state_spec(std::string_view spec) {
  OAMSuperposition::Coefficients coefficients;
  std::size_t start = 0;
  int term = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string_view::npos) comma = spec.size();
    const std::string_view item = spec.substr(start, comma - start);
    ++term;
    const auto bad = [&](const std::string& why) {
      return ParseError(0, "state term " + std::to_string(term) + " '" + std::string(item) +
                               "': " + why);
    };

    const auto c1 = item.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw bad("expected l:re:im");
    const auto number = [&](std::string_view text, auto& value) {
      const char* first = text.data();
      if (!text.empty() && text.front() == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size() || first == ptr) {
        throw bad("malformed number '" + std::string(text) + "'");
      }
    };
    int l = 0;
    double re = 0.0;
    double im = 0.0;
    number(item.substr(0, c1), l);
    number(item.substr(c1 + 1, c2 - c1 - 1), re);
    number(item.substr(c2 + 1), im);
    if (std::abs(l) > kMaxCharge) throw bad("charge beyond sanity bound");
    coefficients[l] += Complex{re, im};
    start = comma + 1;
  }
  const OAMSuperposition state(std::move(coefficients));
  if (state.empty()) throw ParseError(0, "state has no non-zero amplitudes");
  return state.normalized();
}

std::string result_record(const DeutschResult& result, const RunConfig& config) {
  json record;
  record["gate"] = std::string(to_string(result.kind));
  record["verdict"] = std::string(to_string(result.verdict));
  record["oracle_verdict"] = std::string(to_string(oracle_classify(result.kind)));
  record["p0"] = result.p0;
  record["p1"] = result.p1;
  record["p0_scaled"] = result.p0_scaled;
  record["p1_scaled"] = result.p1_scaled;
  record["event_probability"] = result.event_probability;
  record["efficiency"] = config.efficiency;
  record["chi3"] = complex_json(config.chi3);
  record["global_sign"] = result.global_sign;
  record["stages"] = {{"psi1", stage_json(result.psi1)},
                      {"psi2", stage_json(result.psi2)},
                      {"psi3", stage_json(result.psi3)}};
  record["testing_states"] = {{"psi2", state_json(testing_state(result, Stage::Psi2))},
                              {"psi3", state_json(testing_state(result, Stage::Psi3))}};
  record["warnings"] = result.warnings;
  std::string out;
  emit(record, 0, out);
  out += "\n";
  return out;
}

int cmd_gate_table(GateKind kind, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GateSetup setup = build_gate(kind);
    out << "gate " << to_string(kind) << "\n";
    out << "c t -> t_out\n";
    for (const auto& row : truth_table(setup)) {
      out << row.control << " " << row.target_in << " -> " << row.target_out << "\n";
    }
    const ValidationReport report = validate_setup(setup);
    if (report.ok()) {
      out << "validation: ok\n";
      return exit_code::kOk;
    }
    out << "validation: " << report.violations.size() << " violation(s)\n";
    for (const auto& v : report.violations) out << "  - " << v << "\n";
    return exit_code::kValidation;
  });
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DeutschOptions options = options_for(config);
    const GateSetup setup = build_gate(config.gate, options.gate);
    const ValidationReport report = validate_setup(setup);
    if (!report.ok()) {
      for (const auto& v : report.violations) err << "violation: " << v << "\n";
      return exit_code::kValidation;
    }
    const DeutschResult result = run_deutsch(setup, options);

    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    write_text(dir / "result.json", result_record(result, config));
    const std::pair<const char*, Stage> stages[] = {{"psi2_testing", Stage::Psi2},
                                                    {"psi3_testing", Stage::Psi3}};
    for (const auto& [stem, stage] : stages) {
      const RealGrid image = render_state(testing_state(result, stage), config.beam, config.grid);
      for (ImageFormat format : config.formats) {
        write_image(image, dir / (std::string(stem) + std::string(extension(format))), format);
      }
    }

    out << "gate " << to_string(result.kind) << "\n"
        << "verdict " << to_string(result.verdict) << "\n"
        << "p0 " << format_number(result.p0) << "\n"
        << "p1 " << format_number(result.p1) << "\n"
        << "global_sign " << result.global_sign << "\n"
        << "event_probability " << format_number(result.event_probability) << "\n";
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    return exit_code::kOk;
  });
}

int cmd_render(const OAMSuperposition& state, const RunConfig& config, ImageFormat format,
               const std::string& output_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RealGrid image = render_state(state, config.beam, config.grid);
    const std::filesystem::path path(output_path);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_image(image, path, format);
    out << "wrote " << path.string() << "\n";
    print_stats(out, pattern_stats(image));
    return exit_code::kOk;
  });
}

int cmd_project(const OAMSuperposition& state, int l, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const FieldGrid field = sample_field(state, config.beam, config.grid);
    out << format_number(std::norm(project_onto_lg(field, l, config.beam))) << "\n";
    return exit_code::kOk;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deutsch's algorithm on OAM qubits processed by four-wave mixing", "oamfwm"};
  app.require_subcommand(1);

  std::string gate_text;
  auto* gate_table = app.add_subcommand("gate-table", "Print a gate's truth table and validation");
  gate_table->add_option("kind", gate_text, "I, NOT, CNOT or ZCNOT")->required();

  std::string config_path;
  std::string run_gate;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run the full algorithm and write the result record");
  run->add_option("--config", config_path, "Config file");
  run->add_option("--gate", run_gate, "Override the configured gate");
  run->add_option("--out", out_dir, "Output directory");

  std::string state_spec;
  std::string format_text = "pgm";
  std::string output_file;
  auto* render = app.add_subcommand("render", "Render a charge superposition l:re:im,...");
  render->add_option("--state", state_spec, "Coefficient list l:re:im,...")->required();
  render->add_option("--config", config_path, "Config file");
  render->add_option("--format", format_text, "pgm or csv");
  render->add_option("--output", output_file, "Output file (default <dir>/render.<ext>)");

  int project_l = 0;
  auto* project = app.add_subcommand("project", "Print |<LG_l|state>|^2 on the configured grid");
  project->add_option("--state", state_spec, "Coefficient list l:re:im,...")->required();
  project->add_option("--l", project_l, "Projection charge")->required();
  project->add_option("--config", config_path, "Config file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_code::kIoOrParse;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      ParsedConfig parsed = load_config(config_path);
      for (const auto& w : parsed.warnings) err << "warning: " << w << "\n";
      config = std::move(parsed.config);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << config_path << ": " << e.what() << "\n";
    return exit_code::kIoOrParse;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return exit_code::kIoOrParse;
  }
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    config.output_dir = env;
  }

  auto parse_kind = [&](const std::string& text) -> std::optional<GateKind> {
    const auto kind = parse_gate_kind(text);
    if (!kind) err << "unknown gate '" << text << "'\n";
    return kind;
  };

  if (*gate_table) {
    const auto kind = parse_kind(gate_text);
    return kind ? cmd_gate_table(*kind, out, err) : exit_code::kIoOrParse;
  }
  if (*run) {
    if (!run_gate.empty()) {
      const auto kind = parse_kind(run_gate);
      if (!kind) return exit_code::kIoOrParse;
      config.gate = *kind;
    }
    if (!out_dir.empty()) config.output_dir = out_dir;
    return cmd_run(config, out, err);
  }

  OAMSuperposition state;
  try {
    state = parse_state_spec(state_spec);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_code::kIoOrParse;
  }
  if (*render) {
    const auto format = parse_image_format(format_text);
    if (!format) {
      err << "unknown format '" << format_text << "'\n";
      return exit_code::kIoOrParse;
    }
    const std::string path =
        output_file.empty()
            ? (std::filesystem::path(config.output_dir) / ("render" + std::string(extension(*format)))).string()
            : output_file;
    return cmd_render(state, config, *format, path, out, err);
  }
  return cmd_project(state, project_l, config, out, err);
}

}  // namespace oamfwm
