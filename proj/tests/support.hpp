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

// Reference computations for the tests. Everything here is written out
// element by element and deliberately does not call into the library's
// embedding or projector code.

#include <cmath>
#include <complex>
#include <random>

#include "ghzsim/qstate.hpp"

namespace ghzsim::testing {

/// (a ⊗ b ⊗ c)[i][j] = a[i₂][j₂]·b[i₁][j₁]·c[i₀][j₀] over the 3-bit indices.
inline Operator8 kron3(const Operator2& a, const Operator2& b, const Operator2& c) {
  Operator8 out;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      out(i, j) = a((i >> 2) & 1, (j >> 2) & 1) * b((i >> 1) & 1, (j >> 1) & 1) *
                  c(i & 1, j & 1);
    }
  }
  return out;
}

/// ½[[1, e^{−iφ}], [e^{iφ}, 1]] from the ket (|0⟩ + e^{iφ}|1⟩)/√2.
inline Operator2 projector_from_ket(double phi) {
  Eigen::Matrix<Complex, 2, 1> ket;
  ket << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phi);
  return ket * ket.adjoint();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

inline Operator2 random_operator2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Operator2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline Ket8 random_ket(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Ket8 k;
  for (int i = 0; i < 8; ++i) k(i) = Complex(n(rng), n(rng));
  return k.normalized();
}

inline double random_phase(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-4.0 * kPi, 4.0 * kPi)(rng);
}

}  // namespace ghzsim::testing
