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

#include "ghzsim/apparatus.hpp"

#include <cmath>
#include <string>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Operator2 phase_gate(double phi) {
  Operator2 u = Operator2::Identity();
  u(1, 1) = std::polar(1.0, phi);
  return u;
}

Operator2 hadamard() {
  Operator2 h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

Operator8 flipper_matrix() {
  // On path II: spin and energy flip together (↑,E₀) ↔ (↓,E₀−ħω).
  const int path_bit = 1 << bit_position(Subsystem::path);
  const int flip = (1 << bit_position(Subsystem::spin)) |
                   (1 << bit_position(Subsystem::energy));
  Operator8 m = Operator8::Zero();
  for (int col = 0; col < 8; ++col) {
    const int row = (col & path_bit) ? (col ^ flip) : col;
    m(row, col) = 1.0;
  }
  return m;
}

Operator8 element_matrix(const PipelineElement& element) {
  return std::visit(
      Overloaded{
          [](const element::Polarizer&) {
            Operator2 up = Operator2::Zero();
            up(0, 0) = 1.0;
            return embed(up, Subsystem::spin);
          },
          [](const element::BeamSplitter&) {
            return embed(hadamard(), Subsystem::path);
          },
          [](const element::RFFlipperPathII&) { return flipper_matrix(); },
          [](const element::PathPhase& e) {
            return embed(phase_gate(e.chi), Subsystem::path);
          },
          [](const element::SpinPhase& e) {
            return embed(phase_gate(e.alpha), Subsystem::spin);
          },
          [](const element::EnergyPhase& e) {
            return embed(phase_gate(e.gamma), Subsystem::energy);
          },
          [](const element::EnergyRecombiner&) {
            return embed(equatorial_projector(0.0), Subsystem::energy);
          },
          [](const element::SpinAnalyzerXY& e) {
            return embed(equatorial_projector(e.phi), Subsystem::spin);
          },
          [](const element::PathRecombiner&) {
            return embed(equatorial_projector(0.0), Subsystem::path);
          },
      },
      element);
}

bool is_unitary(const Operator8& m) {
  return (m.adjoint() * m - Operator8::Identity()).cwiseAbs().maxCoeff() <=
         kExactTol;
}

bool is_orthogonal_projector(const Operator8& m) {
  return is_hermitian(m) && (m * m - m).cwiseAbs().maxCoeff() <= kExactTol;
}

}  // namespace

PhaseSetting operator+(const PhaseSetting& s, const PhaseOffsets& o) {
  return {s.chi + o.chi, s.alpha + o.alpha, s.gamma + o.gamma};
}

void PhysicalParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"delta_omega_larmor", delta_omega_larmor},
      {"transit_accelerator", transit_accelerator},
      {"atom_density", atom_density},
      {"scattering_length", scattering_length},
      {"wavelength", wavelength},
      {"plate_thickness", plate_thickness},
      {"omega_flipper2", omega_flipper2},
      {"transit_flippers", transit_flippers},
      {"omega_flipper1", omega_flipper1},
  };
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value < 0.0) {
      throw ConfigError(name, "must be finite and nonnegative");
    }
  }
}

PhaseSetting phases_from_physical(const PhysicalParams& p) {
  p.validate();
  return {
      .chi = p.atom_density * p.scattering_length * p.wavelength *
             p.plate_thickness,
      .alpha = p.delta_omega_larmor * p.transit_accelerator,
      .gamma = 2.0 * p.omega_flipper2 * p.transit_flippers,
  };
}

std::string_view element_name(const PipelineElement& element) {
  return std::visit(
      Overloaded{
          [](const element::Polarizer&) { return "Polarizer"; },
          [](const element::BeamSplitter&) { return "BeamSplitter"; },
          [](const element::RFFlipperPathII&) { return "RFFlipperPathII"; },
          [](const element::PathPhase&) { return "PathPhase"; },
          [](const element::SpinPhase&) { return "SpinPhase"; },
          [](const element::EnergyPhase&) { return "EnergyPhase"; },
          [](const element::EnergyRecombiner&) { return "EnergyRecombiner"; },
          [](const element::SpinAnalyzerXY&) { return "SpinAnalyzerXY"; },
          [](const element::PathRecombiner&) { return "PathRecombiner"; },
      },
      element);
}

PipelineStage::PipelineStage(PipelineElement element)
    : element_(element), matrix_(element_matrix(element)) {
  if (is_unitary(matrix_)) {
    projector_ = false;
  } else if (is_orthogonal_projector(matrix_)) {
    projector_ = true;
  } else {
    throw ContractError(std::string("pipeline element ") +
                        std::string(element_name(element_)) +
                        " is neither unitary nor a projector");
  }
}

Ket8 run_pipeline(std::span<const PipelineStage> stages, Ket8 state) {
  for (const auto& stage : stages) state = stage.apply(state);
  return state;
}

Ket8 polarize(const Ket8& state) {
  return PipelineStage(element::Polarizer{}).apply(state);
}

Ket8 beam_splitter(const Ket8& state) {
  return PipelineStage(element::BeamSplitter{}).apply(state);
}

Ket8 rf_flipper_path_II(const Ket8& state) {
  return PipelineStage(element::RFFlipperPathII{}).apply(state);
}

Ket8 apply_phase(const Ket8& state, Subsystem which, double phi) {
  const int mask = 1 << bit_position(which);
  const Complex phase = std::polar(1.0, phi);
  Ket8 out = state;
  for (int i = 0; i < 8; ++i) {
    if (i & mask) out(i) *= phase;
  }
  return out;
}

std::vector<PipelineStage> preparation_stages() {
  return {PipelineStage(element::Polarizer{}),
          PipelineStage(element::BeamSplitter{}),
          PipelineStage(element::RFFlipperPathII{})};
}

Ket8 prepare_ghz() {
  const auto stages = preparation_stages();
  return run_pipeline(stages, basis_ket(0, 0, 0));
}

Ket8 prepare_flipper_off() {
  const auto stages = preparation_stages();
  return run_pipeline(std::span(stages).first(2), basis_ket(0, 0, 0));
}

double joint_projection_probability(const Ket8& state, const PhaseSetting& s) {
  const Operator8 joint = tensor3(equatorial_projector(s.alpha),
                                  equatorial_projector(s.chi),
                                  equatorial_projector(s.gamma));
  return expectation(state, joint);
}

std::vector<PipelineStage> detection_stages(const PhaseSetting& s) {
  return {PipelineStage(element::PathPhase{-s.chi}),
          PipelineStage(element::SpinPhase{-s.alpha}),
          PipelineStage(element::EnergyPhase{-s.gamma}),
          PipelineStage(element::EnergyRecombiner{}),
          PipelineStage(element::SpinAnalyzerXY{0.0}),
          PipelineStage(element::PathRecombiner{})};
}

double detection_probability(const Ket8& state, const PhaseSetting& s) {
  const auto stages = detection_stages(s);
  return run_pipeline(stages, state).squaredNorm();
}

}  // namespace ghzsim
