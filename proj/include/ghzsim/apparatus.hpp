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

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ghzsim/qstate.hpp"

namespace ghzsim {

/// Path (χ), spin (α) and energy (γ) phases in radians. Values are kept
/// unreduced; wrap only for display.
struct PhaseSetting {
  double chi = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;

  bool operator==(const PhaseSetting&) const = default;
};

/// Fixed instrumental phase offsets added to every setting.
struct PhaseOffsets {
  double chi = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
};

PhaseSetting operator+(const PhaseSetting& s, const PhaseOffsets& o);

/// Hardware parameters that set the three phases. Frequencies are angular
/// (rad/s); converting a quoted cyclic frequency is the caller's job.
struct PhysicalParams {
  double delta_omega_larmor = 0.0;     // rad/s, accelerator coil
  double transit_accelerator = 0.0;    // s
  double atom_density = 0.0;           // 1/m³
  double scattering_length = 0.0;      // m
  double wavelength = 1.92e-10;        // m
  double plate_thickness = 0.0;        // m
  double omega_flipper2 = 0.0;         // rad/s
  double transit_flippers = 0.0;       // s
  double omega_flipper1 = 0.0;         // rad/s, sets the ħω energy splitting

  // Metadata only; none of these enter the two-level dynamics.
  double guide_field_gauss = 20.0;
  double guide_field2_gauss = 10.0;
  double flipper1_frequency_hz = 58e3;
  double flipper2_frequency_hz = 29e3;
  double monochromaticity = 0.01;

  /// Throws ConfigError on a negative or non-finite entry.
  void validate() const;
};

/// χ = N·b_c·λ·D, α = Δω_L·T₁, γ = 2·ω_r·T₂.
PhaseSetting phases_from_physical(const PhysicalParams& params);

// Beamline elements. Phase elements multiply the |1⟩ component of their
// subsystem by e^{iφ}; projection elements act as equatorial projectors.
namespace element {
struct Polarizer {};
struct BeamSplitter {};
struct RFFlipperPathII {};
struct PathPhase { double chi = 0.0; };
struct SpinPhase { double alpha = 0.0; };
struct EnergyPhase { double gamma = 0.0; };
/// Second RF flipper. Its map (1/√2)|E₀−ħω/2⟩(⟨E₀| + ⟨E₀−ħω|) yields the same
/// detection statistics as the φ = 0 energy projector, which is what we use.
struct EnergyRecombiner {};
/// π/2 spin turner plus +z analyzer: selects the xy-plane direction φ.
struct SpinAnalyzerXY { double phi = 0.0; };
/// Final interferometer plate feeding the detector: the φ = 0 path projector.
struct PathRecombiner {};
}  // namespace element

using PipelineElement =
    std::variant<element::Polarizer, element::BeamSplitter,
                 element::RFFlipperPathII, element::PathPhase,
                 element::SpinPhase, element::EnergyPhase,
                 element::EnergyRecombiner, element::SpinAnalyzerXY,
                 element::PathRecombiner>;

std::string_view element_name(const PipelineElement& element);

/// A beamline element together with its 8×8 matrix. Construction verifies the
/// matrix is either unitary or an orthogonal projector.
class PipelineStage {
 public:
  explicit PipelineStage(PipelineElement element);

  const PipelineElement& element() const noexcept { return element_; }
  const Operator8& matrix() const noexcept { return matrix_; }
  bool is_projector() const noexcept { return projector_; }

  Ket8 apply(const Ket8& state) const { return matrix_ * state; }

 private:
  PipelineElement element_;
  Operator8 matrix_;
  bool projector_ = false;
};

/// Applies stages in order. Projection stages leave the state unnormalized;
/// its squared norm is then the detection probability.
Ket8 run_pipeline(std::span<const PipelineStage> stages, Ket8 state);

Ket8 polarize(const Ket8& state);
Ket8 beam_splitter(const Ket8& state);
Ket8 rf_flipper_path_II(const Ket8& state);
Ket8 apply_phase(const Ket8& state, Subsystem which, double phi);

/// Polarizer → beam splitter → path-II RF flipper acting on |↑, I, E₀⟩.
std::vector<PipelineStage> preparation_stages();
Ket8 prepare_ghz();

/// The same preparation with the RF flipper switched off: the spin stays up
/// and only the path is in superposition.
Ket8 prepare_flipper_off();

/// ⟨ψ| P^p(χ) P^s(α) P^e(γ) |ψ⟩ computed from the projectors directly.
double joint_projection_probability(const Ket8& state, const PhaseSetting& s);

/// Stages that realize the joint projection with physical elements: the
/// phases are wound back by −φ and the recombiners project onto φ = 0.
std::vector<PipelineStage> detection_stages(const PhaseSetting& s);

/// Detection probability from running `detection_stages`. Agrees with
/// joint_projection_probability since P(φ) = U(φ) P(0) U(φ)†.
double detection_probability(const Ket8& state, const PhaseSetting& s);

}  // namespace ghzsim
