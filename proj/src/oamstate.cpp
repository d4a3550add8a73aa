#include "oamfwm/oamstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oamfwm/errors.hpp"

namespace oamfwm {

namespace {

OAMSuperposition::Coefficients pruned(OAMSuperposition::Coefficients coefficients) {
  std::erase_if(coefficients, [](const auto& entry) {
    return std::abs(entry.second) < OAMSuperposition::kPruneThreshold;
  });
  return coefficients;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Control: return "control";
    case Role::Target: return "target";
    case Role::Signal: return "signal";
    case Role::Pump: return "pump";
  }
  return "unknown";
}

OAMSuperposition::OAMSuperposition(Coefficients coefficients, Role role)
    : coefficients_(pruned(std::move(coefficients))), role_(role) {
  for (const auto& [l, c] : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::domain_error("non-finite amplitude at l = " + std::to_string(l));
    }
  }
}

OAMSuperposition OAMSuperposition::basis(int l, Role role) {
  return OAMSuperposition({{l, Complex{1.0, 0.0}}}, role);
}

Complex OAMSuperposition::amplitude(int l) const {
  const auto it = coefficients_.find(l);
  return it == coefficients_.end() ? Complex{} : it->second;
}

double OAMSuperposition::norm_squared() const {
  double sum = 0.0;
  for (const auto& [l, c] : coefficients_) sum += std::norm(c);
  return sum;
}

OAMSuperposition OAMSuperposition::normalized() const {
  const double norm2 = norm_squared();
  if (!(norm2 > 0.0)) throw std::domain_error("cannot normalize a zero state");
  return scaled(Complex{1.0 / std::sqrt(norm2), 0.0});
}

OAMSuperposition OAMSuperposition::scaled(Complex factor) const {
  Coefficients out;
  for (const auto& [l, c] : coefficients_) out.emplace(l, c * factor);
  return OAMSuperposition(std::move(out), role_);
}

OAMSuperposition OAMSuperposition::with_role(Role role) const {
  OAMSuperposition out = *this;
  out.role_ = role;
  return out;
}

OAMSuperposition operator+(const OAMSuperposition& a, const OAMSuperposition& b) {
  OAMSuperposition::Coefficients out = a.coefficients_;
  for (const auto& [l, c] : b.coefficients_) out[l] += c;
  return OAMSuperposition(std::move(out), a.role_);
}

void LogicalConvention::validate() const {
  if (control_one_l != 1) throw std::invalid_argument("control |1> must be carried by l = +1");
  if (target_one_l != 1 && target_one_l != -1) {
    throw std::invalid_argument("target |1> must be carried by l = +1 or l = -1");
  }
}

OAMSuperposition encode_logical(int bit, const LogicalConvention& convention, Role role) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("logical bit must be 0 or 1");
  convention.validate();
  return OAMSuperposition::basis(bit == 0 ? 0 : convention.one_l(role), role);
}

int decode_l(int l) {
  if (l == 0) return 0;
  if (l == 1 || l == -1) return 1;
  throw AlphabetError("out-of-alphabet charge l = " + std::to_string(l));
}

LogicalAmplitudes logical_amplitudes(const OAMSuperposition& state) {
  for (const auto& [l, c] : state.coefficients()) decode_l(l);
  const Complex plus = state.amplitude(1);
  const Complex minus = state.amplitude(-1);
  if (plus != Complex{} && minus != Complex{}) {
    throw AlphabetError("ambiguous logical fold: both l = +1 and l = -1 are populated");
  }
  return {state.amplitude(0), plus + minus};
}

OAMSuperposition from_logical(const LogicalAmplitudes& amplitudes,
                              const LogicalConvention& convention, Role role) {
  convention.validate();
  return OAMSuperposition({{0, amplitudes.zero}, {convention.one_l(role), amplitudes.one}}, role);
}

LogicalAmplitudes hadamard(const LogicalAmplitudes& amplitudes) {
  constexpr double s = std::numbers::sqrt2 / 2.0;
  return {s * (amplitudes.zero + amplitudes.one), s * (amplitudes.zero - amplitudes.one)};
}

OAMSuperposition hadamard(const OAMSuperposition& state, const LogicalConvention& convention) {
  return from_logical(hadamard(logical_amplitudes(state)), convention, state.role());
}

Complex inner_product(const OAMSuperposition& a, const OAMSuperposition& b) {
  Complex sum{};
  for (const auto& [l, c] : a.coefficients()) sum += std::conj(c) * b.amplitude(l);
  return sum;
}

double fidelity(const OAMSuperposition& a, const OAMSuperposition& b) {
  return std::min(1.0, std::norm(inner_product(a, b)));
}

}  // namespace oamfwm
