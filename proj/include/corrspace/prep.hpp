// Copyright 2026 The corrspace Authors
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

#include <string>
#include <vector>

#include "corrspace/qmath.hpp"

/// Post-selected linear-optics preparation of the wire resources, modeled at
/// the qubit level.
namespace corrspace {

enum class ElementKind {
  Pbc,         // partially polarizing cube: diag(sqrt T_h, sqrt T_v) on one qubit
  Hwp,         // half-wave plate at a given angle
  PbsExpand,   // adds a spatial qubit: |H> -> |H H'>, |V> -> |V V'>
  CphasePbc,   // overlapping cube on two paths: diag(1, sqrt T, sqrt T, 2T - 1)
  SwapLabels,  // exchanges the names of two qubits
};

struct OpticalElement {
  ElementKind kind = ElementKind::Pbc;
  std::vector<std::string> qubits;
  double t_h = 1.0;
  double t_v = 1.0;
  double angle = 0.0;  // radians, for Hwp
  std::string new_label;

  void validate() const;
};

struct FilterResult {
  StateVector state;
  double probability = 1.0;
};

/// Applies diag(sqrt t_h, sqrt t_v), renormalizes, returns the norm^2 ratio.
/// Throws NumericError when nothing is transmitted.
FilterResult pbc_filter(const StateVector& state, const std::string& qubit, double t_h, double t_v);

/// Half-wave plate with fast axis at `angle`: [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
StateVector hwp(const StateVector& state, const std::string& qubit, double angle);

/// The new qubit is inserted right after `qubit`.
StateVector pbs_expand(const StateVector& state, const std::string& qubit, const std::string& new_label);

/// Overlapping partially polarizing cube on two photons; transmission t for V.
FilterResult cphase_pbc(const StateVector& state, const std::string& a, const std::string& b, double t);

struct PrepStep {
  OpticalElement element;
  double probability = 1.0;
};

struct PrepResult {
  StateVector state;
  double success_probability = 1.0;
  std::vector<PrepStep> steps;
};

PrepResult run_pipeline(const StateVector& input, const std::vector<OpticalElement>& elements);

enum class PrepTarget { Psi4, Psi6 };

/// Two (HH + VV)/sqrt2 pairs on photons (1, 2) and (3, 4).
StateVector methods_input();

/// Wave plates, amplitude filters on paths 2 and 3, the C-phase cube
/// combination on paths 1 and 4, and for the six-qubit target the label
/// exchange of photons 1 and 2 followed by spatial expansion of 1 and 3.
/// A path-1 filter adjusts the V amplitude for angles other than pi/6; it is
/// the identity at pi/6.
std::vector<OpticalElement> methods_elements(PrepTarget target, double theta);

PrepResult methods_pipeline(PrepTarget target, double theta);

}  // namespace corrspace
