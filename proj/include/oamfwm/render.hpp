#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "oamfwm/lgmode.hpp"
#include "oamfwm/oamstate.hpp"

namespace oamfwm {

// Non-negative intensity samples, row-major, row index along y.
class RealGrid {
 public:
  RealGrid(GridSpec spec, std::vector<double> values);

  // Bare n x n grid for IO; the spec is recorded but not validated.
  static RealGrid from_values(int n, std::vector<double> values);

  const GridSpec& spec() const noexcept { return spec_; }
  int n() const noexcept { return spec_.n; }
  const std::vector<double>& values() const noexcept { return values_; }
  double max_value() const noexcept { return max_; }
  double at(int row, int col) const { return values_[static_cast<std::size_t>(row) * spec_.n + col]; }

  friend bool operator==(const RealGrid&, const RealGrid&) = default;

 private:
  GridSpec spec_;
  std::vector<double> values_;
  double max_ = 0.0;
};

inline constexpr int kAzimuthalBins = 64;

struct PatternStats {
  double center_intensity_ratio = 0.0;
  double ring_radius = 0.0;     // waist units
  double azimuth_of_max = 0.0;  // (-pi, pi]
  double anisotropy = 0.0;

  friend bool operator==(const PatternStats&, const PatternStats&) = default;
};

enum class PatternClass { Gaussian, Doughnut, Interference, Unclassified };

std::string_view to_string(PatternClass pattern);

RealGrid render_state(const OAMSuperposition& state, const BeamParams& beam, const GridSpec& grid);
RealGrid intensity(const FieldGrid& field);

// Throws std::invalid_argument for an all-zero grid.
PatternStats pattern_stats(const RealGrid& grid);
PatternClass classify(const PatternStats& stats);

enum class ImageFormat { Pgm, Csv };

std::string_view to_string(ImageFormat format);
std::optional<ImageFormat> parse_image_format(std::string_view text);
std::string_view extension(ImageFormat format);

struct PgmImage {
  int width = 0;
  int height = 0;
  double scale_max = 0.0;
  std::vector<std::uint16_t> pixels;

  friend bool operator==(const PgmImage&, const PgmImage&) = default;
};

// Linear 16-bit quantization against the grid maximum.
std::vector<std::uint16_t> quantize(const RealGrid& grid);

// Binary P5, 16-bit big-endian, with a "# max <value>" comment.
void write_pgm(const RealGrid& grid, const std::filesystem::path& path);
PgmImage read_pgm(const std::filesystem::path& path);

// Row-major, comma separated, shortest round-trip decimal.
void write_csv(const RealGrid& grid, const std::filesystem::path& path);
RealGrid read_csv(const std::filesystem::path& path);

void write_image(const RealGrid& grid, const std::filesystem::path& path, ImageFormat format);

}  // namespace oamfwm
