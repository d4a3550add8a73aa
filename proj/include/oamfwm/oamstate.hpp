#pragma once

#include <complex>
#include <map>
#include <string_view>

namespace oamfwm {

using Complex = std::complex<double>;

// Sanity bound on topological charge anywhere in the simulator.
inline constexpr int kMaxCharge = 8;

enum class Role { Control, Target, Signal, Pump };

std::string_view to_string(Role role);

// Single-photon transverse state: a finite map from topological charge l to
// complex amplitude. Amplitudes below kPruneThreshold are never stored.
class OAMSuperposition {
 public:
  using Coefficients = std::map<int, Complex>;

  static constexpr double kPruneThreshold = 1e-15;

  OAMSuperposition() = default;
  explicit OAMSuperposition(Coefficients coefficients, Role role = Role::Target);

  static OAMSuperposition basis(int l, Role role = Role::Target);

  const Coefficients& coefficients() const noexcept { return coefficients_; }
  Role role() const noexcept { return role_; }
  bool empty() const noexcept { return coefficients_.empty(); }
  std::size_t size() const noexcept { return coefficients_.size(); }

  // Zero for charges that are not present.
  Complex amplitude(int l) const;
  double norm_squared() const;

  // Throws std::domain_error for a zero state.
  OAMSuperposition normalized() const;
  OAMSuperposition scaled(Complex factor) const;
  OAMSuperposition with_role(Role role) const;

  friend OAMSuperposition operator+(const OAMSuperposition& a, const OAMSuperposition& b);
  friend bool operator==(const OAMSuperposition&, const OAMSuperposition&) = default;

 private:
  Coefficients coefficients_;
  Role role_ = Role::Target;
};

// Which physical charge stands for logical |1>. The control always uses +1;
// the target may use either sign depending on the gate wiring.
struct LogicalConvention {
  int control_one_l = 1;
  int target_one_l = 1;

  void validate() const;
  int one_l(Role role) const { return role == Role::Control ? control_one_l : target_one_l; }

  friend bool operator==(const LogicalConvention&, const LogicalConvention&) = default;
};

OAMSuperposition encode_logical(int bit, const LogicalConvention& convention, Role role);

// 0 -> 0, +-1 -> 1. Throws AlphabetError otherwise.
int decode_l(int l);

struct LogicalAmplitudes {
  Complex zero;
  Complex one;
};

// Folds the l = +-1 charges onto logical |1>. Throws AlphabetError when a
// charge is outside {-1, 0, 1} or when both +1 and -1 are populated.
LogicalAmplitudes logical_amplitudes(const OAMSuperposition& state);

// Inverse of the fold: |1> is placed at the convention's charge for the role.
OAMSuperposition from_logical(const LogicalAmplitudes& amplitudes,
                              const LogicalConvention& convention, Role role);

LogicalAmplitudes hadamard(const LogicalAmplitudes& amplitudes);
OAMSuperposition hadamard(const OAMSuperposition& state, const LogicalConvention& convention);

// |<a|b>|^2 over the charge basis; both arguments are expected normalized.
double fidelity(const OAMSuperposition& a, const OAMSuperposition& b);

// <a|b> over the charge basis.
Complex inner_product(const OAMSuperposition& a, const OAMSuperposition& b);

}  // namespace oamfwm
