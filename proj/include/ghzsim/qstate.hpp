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
#include <complex>
#include <numbers>
#include <string_view>

#include <Eigen/Dense>

namespace ghzsim {

using Complex = std::complex<double>;

/// State of one neutron over spin ⊗ path ⊗ energy. Amplitude index is
/// 4·spin + 2·path + energy, with bit 0 ↦ (↑, I, E₀) and 1 ↦ (↓, II, E₀−ħω).
using Ket8 = Eigen::Matrix<Complex, 8, 1>;
using Operator2 = Eigen::Matrix<Complex, 2, 2>;
using Operator8 = Eigen::Matrix<Complex, 8, 8>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kExactTol = 1e-12;
inline constexpr double kPipelineTol = 1e-10;

/// The three two-level degrees of freedom. Declaration order is the tensor
/// layout order.
enum class Subsystem { spin, path, energy };

inline constexpr std::array<Subsystem, 3> kSubsystems = {
    Subsystem::spin, Subsystem::path, Subsystem::energy};

std::string_view to_string(Subsystem s);

/// Bit position of a subsystem inside the 3-bit basis index.
constexpr int bit_position(Subsystem s) {
  switch (s) {
    case Subsystem::spin: return 2;
    case Subsystem::path: return 1;
    case Subsystem::energy: return 0;
  }
  return 0;
}

enum class Axis { x, y };

Ket8 basis_ket(int spin, int path, int energy);

/// Projector onto (|0⟩ + e^{iφ}|1⟩)/√2, i.e. ½[[1, e^{−iφ}], [e^{iφ}, 1]].
Operator2 equatorial_projector(double phi);

Operator2 pauli(Axis axis);
Operator2 pauli_z();
Operator2 identity2();

/// Lifts a single-subsystem operator to the full space (identity elsewhere).
Operator8 embed(const Operator2& op, Subsystem where);

/// Product of operators acting on each subsystem: spin_op ⊗ path_op ⊗ energy_op.
Operator8 tensor3(const Operator2& spin_op, const Operator2& path_op,
                  const Operator2& energy_op);

bool is_hermitian(const Operator8& op, double tol = kExactTol);

/// ⟨ψ|op|ψ⟩. Throws ContractError if `op` is not Hermitian.
double expectation(const Ket8& state, const Operator8& op);

/// |⟨a|b⟩|², insensitive to global phase.
double fidelity(const Ket8& a, const Ket8& b);

/// (e₀ + e₇)/√2 written down directly, for comparison with prepared states.
Ket8 ghz_reference();

}  // namespace ghzsim
