#pragma once

#include "oamfwm/oamstate.hpp"

namespace oamfwm {

struct FWMConfig {
  Complex chi3{1.0, 0.0};
  OAMSuperposition pump1 = OAMSuperposition::basis(0, Role::Pump);
  // Stands in for the transition ratio of a real medium. Scales the event
  // probability only.
  double efficiency = 1.0;

  // pump1 must hold exactly one charge; efficiency must lie in (0, 1].
  void validate() const;
  int pump1_l() const;
};

// Charge of the generated signal: l1 + l2 - l3.
int signal_l(int l1, int l2, int l3);

// Unnormalized E_S = chi3 * E1 * E2 * conj(E3), expanded over every charge
// triple. Linear in p1 and p2, antilinear in p3.
OAMSuperposition mix_fields(Complex chi3, const OAMSuperposition& p1, const OAMSuperposition& p2,
                            const OAMSuperposition& p3);

struct FWMOutput {
  OAMSuperposition signal;        // renormalized
  double raw_norm_squared = 0.0;  // before renormalization
  double event_weight = 0.0;      // raw_norm_squared * efficiency
};

// Throws std::invalid_argument for empty inputs or an invalid config, and
// std::domain_error when the signal vanishes identically.
FWMOutput fwm_transform(const FWMConfig& config, const OAMSuperposition& p2,
                        const OAMSuperposition& p3);

}  // namespace oamfwm
