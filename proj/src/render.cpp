#include "oamfwm/render.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "oamfwm/errors.hpp"

namespace oamfwm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint16_t kPgmMax = 65535;

std::string io_context(const std::filesystem::path& path) { return " '" + path.string() + "'"; }

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing" + io_context(path));
  return out;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading" + io_context(path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

// Vertex of the parabola through three (x, y) points; falls back to the
// middle abscissa when the points are not concave.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (!(a < 0.0)) return x1;
  const double vertex = -b / (2.0 * a);
  return std::clamp(vertex, x0, x2);
}

}  // namespace

RealGrid::RealGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  const auto expected = static_cast<std::size_t>(spec_.n) * static_cast<std::size_t>(spec_.n);
  if (spec_.n <= 0 || values_.size() != expected) {
    throw std::invalid_argument("grid values do not form an n x n array");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw std::domain_error("intensity must be finite and >= 0");
    max_ = std::max(max_, v);
  }
}

RealGrid RealGrid::from_values(int n, std::vector<double> values) {
  return RealGrid(GridSpec{n, 1.0, 0.0}, std::move(values));
}

std::string_view to_string(PatternClass pattern) {
  switch (pattern) {
    case PatternClass::Gaussian: return "gaussian";
    case PatternClass::Doughnut: return "doughnut";
    case PatternClass::Interference: return "interference";
    case PatternClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

RealGrid intensity(const FieldGrid& field) {
  std::vector<double> values;
  values.reserve(field.samples().size());
  for (const Complex& s : field.samples()) values.push_back(std::norm(s));
  return RealGrid(field.spec(), std::move(values));
}

RealGrid render_state(const OAMSuperposition& state, const BeamParams& beam, const GridSpec& grid) {
  return intensity(sample_field(state, beam, grid));
}

namespace {

double bilinear(const RealGrid& grid, double x, double y) {
  const GridSpec& spec = grid.spec();
  const double half = (spec.n - 1) / 2.0;
  const double fc = std::clamp(x / spec.pitch() + half, 0.0, spec.n - 1.0);
  const double fr = std::clamp(y / spec.pitch() + half, 0.0, spec.n - 1.0);
  const int c0 = std::min(static_cast<int>(fc), spec.n - 2);
  const int r0 = std::min(static_cast<int>(fr), spec.n - 2);
  const double tx = fc - c0;
  const double ty = fr - r0;
  return (1 - ty) * ((1 - tx) * grid.at(r0, c0) + tx * grid.at(r0, c0 + 1)) +
         ty * ((1 - tx) * grid.at(r0 + 1, c0) + tx * grid.at(r0 + 1, c0 + 1));
}

}  // namespace

PatternStats pattern_stats(const RealGrid& grid) {
  if (!(grid.max_value() > 0.0)) throw std::invalid_argument("pattern statistics of an all-zero grid");
  const GridSpec& spec = grid.spec();
  const int n = spec.n;
  const double pitch = spec.pitch();
  const double max = grid.max_value();

  PatternStats stats;
  const int c = n / 2;
  stats.center_intensity_ratio =
      (grid.at(c - 1, c - 1) + grid.at(c - 1, c) + grid.at(c, c - 1) + grid.at(c, c)) / (4.0 * max);

  const auto radial_bins = static_cast<std::size_t>(std::ceil(spec.extent * std::numbers::sqrt2 / pitch)) + 2;
  std::vector<double> radial_sum(radial_bins, 0.0);
  std::vector<double> radius_sum(radial_bins, 0.0);
  std::vector<int> radial_count(radial_bins, 0);
  double moment_x = 0.0;
  double moment_y = 0.0;
  double peak_r = -1.0;

  for (int row = 0; row < n; ++row) {
    const double y = spec.coordinate(row);
    for (int col = 0; col < n; ++col) {
      const double x = spec.coordinate(col);
      const double v = grid.at(row, col);
      const double r = std::hypot(x, y);
      const auto rb = std::min(static_cast<std::size_t>(r / pitch), radial_bins - 1);
      radial_sum[rb] += v;
      radius_sum[rb] += r;
      ++radial_count[rb];

      if (v == max && peak_r < 0.0) peak_r = r;
      moment_x += v * x;
      moment_y += v * y;
    }
  }

  // Azimuthally averaged profile; the peak bin is refined by a parabola
  // through its neighbours at their mean radii.
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < radial_bins; ++i) {
    if (radial_count[i] == 0) continue;
    const double mean = radial_sum[i] / radial_count[i];
    if (mean > best_value) {
      best_value = mean;
      best = i;
    }
  }
  auto mean_radius = [&](std::size_t i) { return radius_sum[i] / radial_count[i]; };
  auto mean_value = [&](std::size_t i) { return radial_sum[i] / radial_count[i]; };
  stats.ring_radius = mean_radius(best);
  if (best > 0 && best + 1 < radial_bins && radial_count[best - 1] > 0 && radial_count[best + 1] > 0) {
    stats.ring_radius = parabola_vertex(mean_radius(best - 1), mean_value(best - 1),
                                        mean_radius(best), mean_value(best),
                                        mean_radius(best + 1), mean_value(best + 1));
  }

  // Angular structure on the circle through the brightest pixel, one
  // bilinear sample per bin centre. For a ring this is the ring itself; an
  // interference lobe has its azimuthal-average peak on axis, so the
  // averaged radius would see nothing.
  std::vector<double> around(kAzimuthalBins);
  for (int b = 0; b < kAzimuthalBins; ++b) {
    const double phi = -kPi + (b + 0.5) * 2.0 * kPi / kAzimuthalBins;
    around[static_cast<std::size_t>(b)] = bilinear(grid, peak_r * std::cos(phi), peak_r * std::sin(phi));
  }
  const auto [lo, hi] = std::ranges::minmax(around);
  stats.anisotropy = hi > 0.0 ? 1.0 - lo / hi : 0.0;

  double azimuth = std::atan2(moment_y, moment_x);
  if (azimuth <= -kPi) azimuth = kPi;
  stats.azimuth_of_max = azimuth;
  return stats;
}

PatternClass classify(const PatternStats& stats) {
  if (stats.anisotropy > 0.5) return PatternClass::Interference;
  if (stats.center_intensity_ratio > 0.9) return PatternClass::Gaussian;
  if (stats.center_intensity_ratio < 0.05 && stats.anisotropy < 0.1) return PatternClass::Doughnut;
  return PatternClass::Unclassified;
}

std::string_view to_string(ImageFormat format) { return format == ImageFormat::Pgm ? "pgm" : "csv"; }

std::optional<ImageFormat> parse_image_format(std::string_view text) {
  std::string lower(text);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "pgm") return ImageFormat::Pgm;
  if (lower == "csv") return ImageFormat::Csv;
  return std::nullopt;
}

std::string_view extension(ImageFormat format) { return format == ImageFormat::Pgm ? ".pgm" : ".csv"; }

std::vector<std::uint16_t> quantize(const RealGrid& grid) {
  std::vector<std::uint16_t> pixels;
  pixels.reserve(grid.values().size());
  const double max = grid.max_value();
  for (double v : grid.values()) {
    const double scaled = max > 0.0 ? std::round(v / max * kPgmMax) : 0.0;
    pixels.push_back(static_cast<std::uint16_t>(std::clamp(scaled, 0.0, double{kPgmMax})));
  }
  return pixels;
}

void write_pgm(const RealGrid& grid, const std::filesystem::path& path) {
  char max_text[32];
  std::snprintf(max_text, sizeof max_text, "%.17g", grid.max_value());
  std::string data = "P5\n# max " + std::string(max_text) + "\n" + std::to_string(grid.n()) + " " +
                     std::to_string(grid.n()) + "\n" + std::to_string(kPgmMax) + "\n";
  for (std::uint16_t px : quantize(grid)) {
    data.push_back(static_cast<char>(px >> 8));
    data.push_back(static_cast<char>(px & 0xff));
  }
  auto out = open_for_write(path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed" + io_context(path));
}

PgmImage read_pgm(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  const auto fail = [&](const std::string& what) -> IoError {
    return IoError("malformed PGM" + io_context(path) + ": " + what);
  };
  std::size_t pos = 0;
  PgmImage image;
  bool have_max = false;

  // Header tokens, skipping whitespace and collecting the scale comment.
  auto next_token = [&]() -> std::string {
    while (pos < data.size()) {
      if (std::isspace(static_cast<unsigned char>(data[pos]))) {
        ++pos;
      } else if (data[pos] == '#') {
        const std::size_t end = data.find('\n', pos);
        if (end == std::string::npos) throw fail("unterminated comment");
        const std::string comment = data.substr(pos, end - pos);
        if (comment.rfind("# max ", 0) == 0) {
          const char* first = comment.data() + 6;
          const auto [ptr, ec] = std::from_chars(first, comment.data() + comment.size(), image.scale_max);
          if (ec != std::errc{}) throw fail("bad scale comment");
          have_max = true;
        }
        pos = end + 1;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    return data.substr(start, pos - start);
  };
  auto parse_int = [&](const std::string& token) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) throw fail("bad integer '" + token + "'");
    return value;
  };

  if (next_token() != "P5") throw fail("not a binary PGM");
  image.width = parse_int(next_token());
  image.height = parse_int(next_token());
  if (parse_int(next_token()) != kPgmMax) throw fail("expected 16-bit maxval");
  if (!have_max) throw fail("missing scale comment");
  ++pos;  // single whitespace before the raster

  const auto count = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  if (image.width <= 0 || image.height <= 0 || data.size() - pos != 2 * count) {
    throw fail("raster size mismatch");
  }
  image.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto hi = static_cast<unsigned char>(data[pos + 2 * i]);
    const auto lo = static_cast<unsigned char>(data[pos + 2 * i + 1]);
    image.pixels[i] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return image;
}

void write_csv(const RealGrid& grid, const std::filesystem::path& path) {
  std::string data;
  char buffer[32];
  const int n = grid.n();
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      if (col > 0) data.push_back(',');
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, grid.at(row, col));
      data.append(buffer, ptr);
    }
    data.push_back('\n');
  }
  auto out = open_for_write(path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed" + io_context(path));
}

RealGrid read_csv(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  std::vector<double> values;
  int rows = 0;
  std::size_t width = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string::npos) end = data.size();
    std::size_t fields = 0;
    std::size_t start = pos;
    while (start <= end) {
      std::size_t comma = data.find(',', start);
      if (comma == std::string::npos || comma > end) comma = end;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(data.data() + start, data.data() + comma, v);
      if (ec != std::errc{} || ptr != data.data() + comma) {
        throw IoError("malformed CSV" + io_context(path) + " at row " + std::to_string(rows + 1));
      }
      values.push_back(v);
      ++fields;
      start = comma + 1;
    }
    if (rows == 0) width = fields;
    if (fields != width) throw IoError("ragged CSV" + io_context(path));
    ++rows;
    pos = end + 1;
  }
  if (static_cast<std::size_t>(rows) != width) throw IoError("CSV grid is not square" + io_context(path));
  return RealGrid::from_values(rows, std::move(values));
}

void write_image(const RealGrid& grid, const std::filesystem::path& path, ImageFormat format) {
  if (format == ImageFormat::Pgm) {
    write_pgm(grid, path);
  } else {
    write_csv(grid, path);
  }
}

}  // namespace oamfwm
