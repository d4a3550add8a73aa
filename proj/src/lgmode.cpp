#include "oamfwm/lgmode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oamfwm {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw std::domain_error(std::string("non-finite ") + name);
}

// Everything in LG_p^l except exp(i l phi).
Complex radial_factor(int l, int p, const BeamParams& beam, double r, double z) {
  const int abs_l = std::abs(l);
  const double w = beam.spot_size(z);
  const double log_ratio = std::lgamma(p + 1.0) - std::lgamma(p + abs_l + 1.0);
  const double norm = std::sqrt(2.0 / std::numbers::pi * std::exp(log_ratio)) / w;
  const double rho = r * std::numbers::sqrt2 / w;
  const double envelope = norm * std::pow(rho, abs_l) * std::exp(-(r * r) / (w * w)) *
                          assoc_laguerre(p, abs_l, 2.0 * r * r / (w * w));
  const double zr = beam.rayleigh_zR;
  const double curvature = beam.wavenumber_k0 * r * r * z / (2.0 * (z * z + zr * zr));
  const double gouy = -(2.0 * p + abs_l + 1.0) * std::atan(z / zr);
  return std::polar(envelope, curvature + gouy);
}

// exp(i l phi) given the unit phasor exp(i phi).
Complex vortex_phase(Complex unit, int l) {
  const Complex step = l >= 0 ? unit : std::conj(unit);
  Complex out{1.0, 0.0};
  for (int k = 0; k < std::abs(l); ++k) out *= step;
  return out;
}

}  // namespace

void BeamParams::validate() const {
  if (!(waist_w0 > 0.0) || !std::isfinite(waist_w0)) throw std::invalid_argument("w0 must be > 0");
  if (!(rayleigh_zR > 0.0) || !std::isfinite(rayleigh_zR)) {
    throw std::invalid_argument("zR must be > 0");
  }
  if (!(wavenumber_k0 > 0.0) || !std::isfinite(wavenumber_k0)) {
    throw std::invalid_argument("k0 must be > 0");
  }
}

double BeamParams::spot_size(double z) const {
  const double ratio = z / rayleigh_zR;
  return waist_w0 * std::sqrt(1.0 + ratio * ratio);
}

void ModeIndex::validate() const {
  if (p < 0) throw std::invalid_argument("radial index p must be >= 0");
  if (std::abs(l) > kMaxCharge) {
    throw std::domain_error("charge |l| = " + std::to_string(std::abs(l)) + " exceeds sanity bound");
  }
}

void GridSpec::validate() const {
  if (n < 16 || n % 2 != 0) throw std::invalid_argument("grid n must be an even integer >= 16");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw std::invalid_argument("grid extent must be > 0");
  if (!std::isfinite(z)) throw std::invalid_argument("grid z must be finite");
}

FieldGrid::FieldGrid(GridSpec spec, double pixel_pitch, std::vector<Complex> samples)
    : spec_(spec), pixel_pitch_(pixel_pitch), samples_(std::move(samples)) {
  const auto expected = static_cast<std::size_t>(spec_.n) * static_cast<std::size_t>(spec_.n);
  if (samples_.size() != expected) throw std::invalid_argument("field size does not match grid");
  for (const Complex& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::domain_error("non-finite field sample");
    }
  }
}

double assoc_laguerre(int n, double alpha, double x) {
  if (n < 0) throw std::invalid_argument("Laguerre degree must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex lg_amplitude(const ModeIndex& mode, const BeamParams& beam, double r, double phi,
                     double z) {
  require_finite(r, "radius");
  require_finite(phi, "azimuth");
  require_finite(z, "axial coordinate");
  if (r < 0.0) throw std::domain_error("radius must be >= 0");
  mode.validate();
  beam.validate();
  return radial_factor(mode.l, mode.p, beam, r, z) * std::polar(1.0, mode.l * phi);
}

FieldGrid sample_field(const OAMSuperposition& state, const BeamParams& beam,
                       const GridSpec& grid) {
  if (state.empty()) throw std::invalid_argument("cannot sample an empty state");
  beam.validate();
  grid.validate();
  for (const auto& [l, c] : state.coefficients()) ModeIndex{l, 0}.validate();

  const int n = grid.n;
  const double w0 = beam.waist_w0;
  std::vector<Complex> samples(static_cast<std::size_t>(n) * n);
  for (int row = 0; row < n; ++row) {
    const double y = grid.coordinate(row) * w0;
    for (int col = 0; col < n; ++col) {
      const double x = grid.coordinate(col) * w0;
      const double r = std::hypot(x, y);
      const Complex unit = Complex{x, y} / r;
      Complex sum{};
      for (const auto& [l, c] : state.coefficients()) {
        sum += c * (radial_factor(l, 0, beam, r, grid.z) * vortex_phase(unit, l));
      }
      samples[static_cast<std::size_t>(row) * n + col] = sum;
    }
  }
  return FieldGrid(grid, grid.pitch() * w0, std::move(samples));
}

Complex overlap(const FieldGrid& a, const FieldGrid& b) {
  if (!(a.spec() == b.spec()) || a.pixel_pitch() != b.pixel_pitch()) {
    throw std::invalid_argument("overlap of fields on different grids");
  }
  Complex sum{};
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) sum += std::conj(sa[i]) * sb[i];
  return sum * (a.pixel_pitch() * a.pixel_pitch());
}

Complex project_onto_lg(const FieldGrid& field, int l, const BeamParams& beam) {
  const FieldGrid mode = sample_field(OAMSuperposition::basis(l), beam, field.spec());
  return overlap(mode, field);
}

}  // namespace oamfwm
