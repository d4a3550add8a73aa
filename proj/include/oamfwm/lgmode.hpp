#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "oamfwm/oamstate.hpp"

namespace oamfwm {

// Gaussian beam parameters. Lengths are in arbitrary units; the defaults put
// everything in waist units.
struct BeamParams {
  double waist_w0 = 1.0;
  double rayleigh_zR = 1.0;
  double wavenumber_k0 = 2.0 * std::numbers::pi * 10.0;

  void validate() const;
  // w(z) = w0 * sqrt(1 + (z/zR)^2)
  double spot_size(double z) const;

  friend bool operator==(const BeamParams&, const BeamParams&) = default;
};

struct ModeIndex {
  int l = 0;
  int p = 0;

  void validate() const;
};

// Square sampling grid centred on the beam axis. `extent` is the half-width
// in units of the beam waist w0. Samples sit at cell midpoints, so no sample
// falls on r = 0 for even n.
struct GridSpec {
  int n = 512;
  double extent = 6.0;
  double z = 0.0;

  void validate() const;
  // Sample pitch in waist units.
  double pitch() const { return 2.0 * extent / n; }
  // Coordinate of row/column index i in waist units. Exactly antisymmetric:
  // coordinate(n-1-i) == -coordinate(i).
  double coordinate(int i) const { return (i - 0.5 * (n - 1)) * pitch(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Sampled complex field. Row index runs along y, column index along x.
class FieldGrid {
 public:
  FieldGrid(GridSpec spec, double pixel_pitch, std::vector<Complex> samples);

  const GridSpec& spec() const noexcept { return spec_; }
  int n() const noexcept { return spec_.n; }
  // Physical distance between neighbouring samples.
  double pixel_pitch() const noexcept { return pixel_pitch_; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  Complex at(int row, int col) const { return samples_[static_cast<std::size_t>(row) * spec_.n + col]; }

 private:
  GridSpec spec_;
  double pixel_pitch_;
  std::vector<Complex> samples_;
};

// Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
double assoc_laguerre(int n, double alpha, double x);

// Normalized LG_p^l amplitude at cylindrical coordinates (r, phi, z),
// including curvature and Gouy phases and the exp(i l phi) vortex factor.
Complex lg_amplitude(const ModeIndex& mode, const BeamParams& beam, double r, double phi,
                     double z);

// Samples sum_l c_l LG_0^l onto the grid at grid.z.
FieldGrid sample_field(const OAMSuperposition& state, const BeamParams& beam, const GridSpec& grid);

// Discrete inner product <a|b> = sum conj(a) b dx dy.
Complex overlap(const FieldGrid& a, const FieldGrid& b);

// <LG_0^l | field>; |result|^2 is the detection probability of the l channel.
Complex project_onto_lg(const FieldGrid& field, int l, const BeamParams& beam);

}  // namespace oamfwm
