#include "oamfwm/fwm.hpp"

#include <cmath>
#include <stdexcept>

namespace oamfwm {

void FWMConfig::validate() const {
  if (pump1.size() != 1) throw std::invalid_argument("pump1 must carry exactly one charge");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("efficiency out of (0,1]");
  }
  if (!std::isfinite(chi3.real()) || !std::isfinite(chi3.imag())) {
    throw std::invalid_argument("chi3 must be finite");
  }
}

int FWMConfig::pump1_l() const {
  if (pump1.empty()) throw std::invalid_argument("pump1 is empty");
  return pump1.coefficients().begin()->first;
}

int signal_l(int l1, int l2, int l3) { return l1 + l2 - l3; }

OAMSuperposition mix_fields(Complex chi3, const OAMSuperposition& p1, const OAMSuperposition& p2,
                            const OAMSuperposition& p3) {
  OAMSuperposition::Coefficients out;
  for (const auto& [l1, c1] : p1.coefficients()) {
    for (const auto& [l2, c2] : p2.coefficients()) {
      for (const auto& [l3, c3] : p3.coefficients()) {
        out[signal_l(l1, l2, l3)] += chi3 * c1 * c2 * std::conj(c3);
      }
    }
  }
  return OAMSuperposition(std::move(out), Role::Signal);
}

FWMOutput fwm_transform(const FWMConfig& config, const OAMSuperposition& p2,
                        const OAMSuperposition& p3) {
  config.validate();
  if (p2.empty() || p3.empty()) throw std::invalid_argument("FWM inputs must be non-empty");
  const OAMSuperposition raw = mix_fields(config.chi3, config.pump1, p2, p3);
  const double norm2 = raw.norm_squared();
  if (!(norm2 > 0.0)) throw std::domain_error("FWM signal vanishes");
  return {raw.normalized(), norm2, norm2 * config.efficiency};
}

}  // namespace oamfwm
