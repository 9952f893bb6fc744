// Copyright 2026 The sedeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sedeval/energy.hpp"

#include "sedeval/errors.hpp"

namespace sedeval {

std::optional<double> baseline_reference_kwh(std::string_view preset) {
  if (preset == "train") return baseline_energy::kTrainTotal;
  if (preset == "devtest") return baseline_energy::kDevTestTotal;
  if (preset == "train-gpu") return baseline_energy::kTrainGpu;
  if (preset == "devtest-gpu") return baseline_energy::kDevTestGpu;
  return std::nullopt;
}

double energy_normalize(double system_kwh, double baseline_measured_kwh,
                        double baseline_reference_kwh) {
  if (!(system_kwh >= 0.0)) {
    throw ValidationError("system energy must be >= 0 kWh");
  }
  if (!(baseline_measured_kwh > 0.0) || !(baseline_reference_kwh > 0.0)) {
    throw ValidationError("baseline energies must be positive");
  }
  return system_kwh * (baseline_reference_kwh / baseline_measured_kwh);
}

}  // namespace sedeval
