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

#ifndef SEDEVAL_ENERGY_HPP_
#define SEDEVAL_ENERGY_HPP_

#include <optional>
#include <string_view>

namespace sedeval {

// Published baseline consumption on one A100 (40 GB), kWh.
namespace baseline_energy {
inline constexpr double kTrainTotal = 1.180;
inline constexpr double kDevTestTotal = 0.119;
inline constexpr double kTrainGpu = 0.113;
inline constexpr double kDevTestGpu = 0.013;
}  // namespace baseline_energy

// Reference value for "train", "devtest", "train-gpu" or "devtest-gpu".
std::optional<double> baseline_reference_kwh(std::string_view preset);

// Linear ratio scaling onto the reference hardware:
// system_kwh * baseline_reference_kwh / baseline_measured_kwh.
// Throws ValidationError on a negative system value or a non-positive
// baseline.
double energy_normalize(double system_kwh, double baseline_measured_kwh,
                        double baseline_reference_kwh);

}  // namespace sedeval

#endif  // SEDEVAL_ENERGY_HPP_
