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

#include "ghzsim/qstate.hpp"

#include <cmath>
#include <string>

#include "ghzsim/errors.hpp"

namespace ghzsim {

std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::spin: return "spin";
    case Subsystem::path: return "path";
    case Subsystem::energy: return "energy";
  }
  return "?";
}

Ket8 basis_ket(int spin, int path, int energy) {
  for (int bit : {spin, path, energy}) {
    if (bit != 0 && bit != 1) {
      throw ContractError("basis_ket: bits must be 0 or 1, got " +
                          std::to_string(bit));
    }
  }
  Ket8 ket = Ket8::Zero();
  ket(4 * spin + 2 * path + energy) = 1.0;
  return ket;
}

Operator2 equatorial_projector(double phi) {
  const Complex phase = std::polar(1.0, phi);
  Operator2 p;
  p << 1.0, std::conj(phase), phase, 1.0;
  return 0.5 * p;
}

Operator2 pauli(Axis axis) {
  const Complex i{0.0, 1.0};
  Operator2 p;
  if (axis == Axis::x) {
    p << 0.0, 1.0, 1.0, 0.0;
  } else {
    p << 0.0, -i, i, 0.0;
  }
  return p;
}

Operator2 pauli_z() {
  Operator2 p;
  p << 1.0, 0.0, 0.0, -1.0;
  return p;
}

Operator2 identity2() { return Operator2::Identity(); }

Operator8 embed(const Operator2& op, Subsystem where) {
  const int shift = bit_position(where);
  const int others = 7 & ~(1 << shift);
  Operator8 out = Operator8::Zero();
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      if ((row & others) != (col & others)) continue;
      out(row, col) = op((row >> shift) & 1, (col >> shift) & 1);
    }
  }
  return out;
}

Operator8 tensor3(const Operator2& spin_op, const Operator2& path_op,
                  const Operator2& energy_op) {
  return embed(spin_op, Subsystem::spin) * embed(path_op, Subsystem::path) *
         embed(energy_op, Subsystem::energy);
}

bool is_hermitian(const Operator8& op, double tol) {
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double expectation(const Ket8& state, const Operator8& op) {
  if (!is_hermitian(op)) {
    throw ContractError("expectation: operator is not Hermitian");
  }
  const Complex value = state.dot(op * state);
  // Hermiticity bounds the imaginary part by rounding noise.
  if (std::abs(value.imag()) > kExactTol * std::max(1.0, std::abs(value))) {
    throw ContractError("expectation: imaginary residue " +
                        std::to_string(value.imag()));
  }
  return value.real();
}

double fidelity(const Ket8& a, const Ket8& b) { return std::norm(a.dot(b)); }

Ket8 ghz_reference() {
  Ket8 ket = Ket8::Zero();
  ket(0) = ket(7) = 1.0 / std::sqrt(2.0);
  return ket;
}

}  // namespace ghzsim
