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

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "ghzsim/apparatus.hpp"

namespace ghzsim {

/// The four three-fold correlators, named by their (path, spin, energy) axes.
enum class Observable { xxx, xyy, yxy, yyx };

inline constexpr std::array<Observable, 4> kObservables = {
    Observable::xxx, Observable::xyy, Observable::yxy, Observable::yyx};

struct ObservableAxes {
  Axis path;
  Axis spin;
  Axis energy;
};

constexpr ObservableAxes axes_of(Observable o) {
  switch (o) {
    case Observable::xxx: return {Axis::x, Axis::x, Axis::x};
    case Observable::xyy: return {Axis::x, Axis::y, Axis::y};
    case Observable::yxy: return {Axis::y, Axis::x, Axis::y};
    case Observable::yyx: return {Axis::y, Axis::y, Axis::x};
  }
  return {Axis::x, Axis::x, Axis::x};
}

constexpr int index_of(Observable o) { return static_cast<int>(o); }

std::string_view to_string(Observable o);
std::optional<Observable> parse_observable(std::string_view name);

/// Phase settings come in steps of π/2: step 0,1,2,3 ↦ 0, π/2, π, 3π/2.
constexpr double quarter_turns(int step) { return step * kPi / 2.0; }

/// Steps 0 and 2 measure σx (P(0) − P(π)); steps 1 and 3 measure σy.
constexpr Axis axis_of_step(int step) { return step % 2 == 0 ? Axis::x : Axis::y; }

/// Which correlator a (α, γ) scan contributes to. The χ lines read off the
/// scan are fixed by the product of the three axes being in the set.
Observable observable_for_scan(int alpha_step, int gamma_step);

/// One of the eight projector combinations behind a correlator.
struct SignedSetting {
  int chi_step = 0;
  int alpha_step = 0;
  int gamma_step = 0;
  int sign = 1;

  PhaseSetting phases() const {
    return {quarter_turns(chi_step), quarter_turns(alpha_step),
            quarter_turns(gamma_step)};
  }
};

/// The eight settings for `o`, indexed by the bits (path, spin, energy) with
/// path the most significant. Each bit selects the antipodal projector and
/// flips the sign.
std::array<SignedSetting, 8> settings_for(Observable o);

}  // namespace ghzsim
