// Copyright 2026 The fluxcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fluxcz/types.hpp"

namespace fluxcz {

void DeviceParams::validate() const {
  if (!(omega1 > 0.0) || !(omega2 > 0.0) || !(omegaC > 0.0)) {
    throw ConfigError("DeviceParams: all frequencies must be strictly positive");
  }
  if (!(omegaC > omega1) || !(omegaC > omega2)) {
    throw ConfigError("DeviceParams: coupler must sit above both qubit frequencies");
  }
  if (!std::isfinite(zeta1c) || !std::isfinite(zeta2c) || !std::isfinite(zeta12)) {
    throw ConfigError("DeviceParams: couplings must be finite");
  }
}

void RectPulse::validate() const {
  if (!(amp >= 0.0)) throw ConfigError("RectPulse: amp must be >= 0");
  // tau == 0 is allowed and means the identity pulse.
  if (!(tau >= 0.0)) throw ConfigError("RectPulse: tau must be >= 0");
  if (!std::isfinite(omegaD) || !std::isfinite(carrierPhase)) {
    throw ConfigError("RectPulse: carrier must be finite");
  }
}

void TransitionSet::validate() const {
  for (int k = 0; k < 4; ++k) {
    if (!((*this)[k] > 0.0)) {
      throw ConfigError("TransitionSet: w" + ComputationalLabel::from_index(k).str() +
                        " must be strictly positive");
    }
    if (!(sigma[k] >= 0.0)) {
      throw ConfigError("TransitionSet: sigma_" + ComputationalLabel::from_index(k).str() +
                        " must be >= 0");
    }
  }
}

TransitionSet make_symmetric_transitions(double w00, double splitting) {
  TransitionSet t;
  t.w00 = w00;
  t.w01 = w00 + splitting;
  t.w10 = w00 + splitting;
  t.w11 = w00 + 2.0 * splitting;
  return t;
}

}  // namespace fluxcz
