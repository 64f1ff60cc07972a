// Copyright 2026 The ghzsim Authors
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

#include "ghzsim/observable.hpp"

namespace ghzsim {

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::xxx: return "xxx";
    case Observable::xyy: return "xyy";
    case Observable::yxy: return "yxy";
    case Observable::yyx: return "yyx";
  }
  return "?";
}

std::optional<Observable> parse_observable(std::string_view name) {
  for (Observable o : kObservables) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

Observable observable_for_scan(int alpha_step, int gamma_step) {
  const Axis spin = axis_of_step(alpha_step);
  const Axis energy = axis_of_step(gamma_step);
  if (spin == Axis::x) return energy == Axis::x ? Observable::xxx : Observable::yxy;
  return energy == Axis::y ? Observable::xyy : Observable::yyx;
}

std::array<SignedSetting, 8> settings_for(Observable o) {
  const auto axes = axes_of(o);
  const auto base = [](Axis a) { return a == Axis::x ? 0 : 1; };
  std::array<SignedSetting, 8> out{};
  for (int bits = 0; bits < 8; ++bits) {
    const int path_bit = (bits >> 2) & 1;
    const int spin_bit = (bits >> 1) & 1;
    const int energy_bit = bits & 1;
    out[bits] = {
        .chi_step = base(axes.path) + 2 * path_bit,
        .alpha_step = base(axes.spin) + 2 * spin_bit,
        .gamma_step = base(axes.energy) + 2 * energy_bit,
        .sign = ((path_bit + spin_bit + energy_bit) % 2 == 0) ? 1 : -1,
    };
  }
  return out;
}

}  // namespace ghzsim
