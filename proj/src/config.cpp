#include "oamfwm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "oamfwm/errors.hpp"

namespace oamfwm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, int line, std::string_view key) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError(line, "malformed number '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

struct KeyHandler {
  const char* section;
  const char* key;
  void (*apply)(RunConfig&, std::string_view, int);
};

void require(bool ok, int line, const char* message) {
  if (!ok) throw ParseError(line, message);
}

const KeyHandler kHandlers[] = {
    {"", "gate",
     [](RunConfig& c, std::string_view v, int line) {
       const auto kind = parse_gate_kind(v);
       if (!kind) throw ParseError(line, "unknown gate '" + std::string(v) + "'");
       c.gate = *kind;
     }},
    {"", "seed",
     [](RunConfig& c, std::string_view v, int line) {
       c.seed = parse_number<std::uint64_t>(v, line, "seed");
     }},
    {"beam", "w0",
     [](RunConfig& c, std::string_view v, int line) {
       c.beam.waist_w0 = parse_number<double>(v, line, "w0");
       require(c.beam.waist_w0 > 0.0 && std::isfinite(c.beam.waist_w0), line, "w0 must be > 0");
     }},
    {"beam", "zR",
     [](RunConfig& c, std::string_view v, int line) {
       c.beam.rayleigh_zR = parse_number<double>(v, line, "zR");
       require(c.beam.rayleigh_zR > 0.0 && std::isfinite(c.beam.rayleigh_zR), line, "zR must be > 0");
     }},
    {"beam", "k0",
     [](RunConfig& c, std::string_view v, int line) {
       c.beam.wavenumber_k0 = parse_number<double>(v, line, "k0");
       require(c.beam.wavenumber_k0 > 0.0 && std::isfinite(c.beam.wavenumber_k0), line,
               "k0 must be > 0");
     }},
    {"grid", "n",
     [](RunConfig& c, std::string_view v, int line) {
       c.grid.n = parse_number<int>(v, line, "n");
       require(c.grid.n >= 16 && c.grid.n % 2 == 0, line, "n must be an even integer >= 16");
     }},
    {"grid", "extent",
     [](RunConfig& c, std::string_view v, int line) {
       c.grid.extent = parse_number<double>(v, line, "extent");
       require(c.grid.extent > 0.0 && std::isfinite(c.grid.extent), line, "extent must be > 0");
     }},
    {"grid", "z",
     [](RunConfig& c, std::string_view v, int line) {
       c.grid.z = parse_number<double>(v, line, "z");
       require(std::isfinite(c.grid.z), line, "z must be finite");
     }},
    {"fwm", "chi3_re",
     [](RunConfig& c, std::string_view v, int line) {
       c.chi3.real(parse_number<double>(v, line, "chi3_re"));
       require(std::isfinite(c.chi3.real()), line, "chi3_re must be finite");
     }},
    {"fwm", "chi3_im",
     [](RunConfig& c, std::string_view v, int line) {
       c.chi3.imag(parse_number<double>(v, line, "chi3_im"));
       require(std::isfinite(c.chi3.imag()), line, "chi3_im must be finite");
     }},
    {"fwm", "efficiency",
     [](RunConfig& c, std::string_view v, int line) {
       c.efficiency = parse_number<double>(v, line, "efficiency");
       require(c.efficiency > 0.0 && c.efficiency <= 1.0, line, "efficiency out of (0,1]");
     }},
    {"fwm", "target_one_l",
     [](RunConfig& c, std::string_view v, int line) {
       const int l = parse_number<int>(v, line, "target_one_l");
       require(l == 1 || l == -1, line, "target_one_l must be +1 or -1");
       c.target_one_l = l;
     }},
    {"output", "dir",
     [](RunConfig& c, std::string_view v, int line) {
       require(!v.empty(), line, "output dir must not be empty");
       c.output_dir = std::string(v);
     }},
    {"output", "formats",
     [](RunConfig& c, std::string_view v, int line) {
       std::vector<ImageFormat> formats;
       std::size_t start = 0;
       while (start <= v.size()) {
         std::size_t comma = v.find(',', start);
         if (comma == std::string_view::npos) comma = v.size();
         const std::string_view token = trim(v.substr(start, comma - start));
         const auto format = parse_image_format(token);
         if (!format) throw ParseError(line, "unknown image format '" + std::string(token) + "'");
         if (std::find(formats.begin(), formats.end(), *format) == formats.end()) {
           formats.push_back(*format);
         }
         start = comma + 1;
       }
       c.formats = std::move(formats);
     }},
};

}  // namespace

ParsedConfig parse_config(std::string_view text) {
  ParsedConfig parsed;
  std::string section;
  std::set<std::string> seen;
  int line_number = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    ++line_number;
    pos = end + 1;

    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_number, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "beam" && section != "grid" && section != "fwm" && section != "output") {
        throw ParseError(line_number, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_number, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    const KeyHandler* handler = nullptr;
    for (const auto& h : kHandlers) {
      if (section == h.section && key == h.key) handler = &h;
    }
    if (!handler) {
      throw ParseError(line_number, "unknown key '" + key + "'" +
                                        (section.empty() ? "" : " in [" + section + "]"));
    }
    const std::string qualified = section + "." + key;
    if (!seen.insert(qualified).second) {
      parsed.warnings.push_back("line " + std::to_string(line_number) + ": duplicate key '" +
                                qualified + "', last value wins");
    }
    handler->apply(parsed.config, value, line_number);
  }
  return parsed;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "gate = " << to_string(config.gate) << "\n";
  out << "seed = " << config.seed << "\n";
  out << "\n[beam]\n";
  out << "w0 = " << format_double(config.beam.waist_w0) << "\n";
  out << "zR = " << format_double(config.beam.rayleigh_zR) << "\n";
  out << "k0 = " << format_double(config.beam.wavenumber_k0) << "\n";
  out << "\n[grid]\n";
  out << "n = " << config.grid.n << "\n";
  out << "extent = " << format_double(config.grid.extent) << "\n";
  out << "z = " << format_double(config.grid.z) << "\n";
  out << "\n[fwm]\n";
  out << "chi3_re = " << format_double(config.chi3.real()) << "\n";
  out << "chi3_im = " << format_double(config.chi3.imag()) << "\n";
  out << "efficiency = " << format_double(config.efficiency) << "\n";
  if (config.target_one_l) out << "target_one_l = " << *config.target_one_l << "\n";
  out << "\n[output]\n";
  out << "dir = " << config.output_dir << "\n";
  out << "formats = ";
  for (std::size_t i = 0; i < config.formats.size(); ++i) {
    out << (i ? "," : "") << to_string(config.formats[i]);
  }
  out << "\n";
  return out.str();
}

}  // namespace oamfwm
