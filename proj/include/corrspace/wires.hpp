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

#include <array>
#include <string>
#include <vector>

#include "corrspace/qmath.hpp"

/// Matrix-product computational wires and the small 2D resources built from
/// them. A wire with site tensors A_1..A_n and boundaries |l>, |r> has
///   amp(s_1..s_n) = <r| A_n[s_n] ... A_1[s_1] |l>.
namespace corrspace {

enum class SiteKind { A, B, BRotated, Canonical };

/// Site tensor: one 2x2 correlation-space matrix per physical basis state.
///
/// basis_kets[k] is the physical ket carrying label basis_labels[k], written in
/// the computational basis; basis_map[k] is the matrix attached to it.
struct SiteTensor {
  SiteKind kind = SiteKind::B;
  double theta = 0.0;
  std::array<std::string, 2> basis_labels;
  std::array<Vec2, 2> basis_kets;
  std::array<Mat2, 2> basis_map;

  /// Weighted site: H -> Hadamard cos(theta), V -> Hadamard Z sin(theta).
  static SiteTensor a(double theta);
  /// Readout site: H -> Hadamard, V -> Hadamard Z.
  static SiteTensor b();
  /// Readout site defined in the rotated spatial basis: P' -> Hadamard, M' -> Hadamard Z.
  static SiteTensor b_rotated();
  /// Canonical form: 0 -> W, 1 -> W S(theta_c). W must be unitary.
  static SiteTensor canonical(const Mat2& w, double theta_c);

  /// Matrix induced by projecting onto computational basis state s.
  Mat2 op(int s) const;
};

struct Wire {
  std::vector<std::string> labels;
  std::vector<SiteTensor> sites;
  Vec2 left = kets::p();
  Vec2 right = kets::h();

  void validate() const;
};

/// A normalized state together with the norm it had before normalization.
struct ContractedState {
  StateVector state;
  double raw_norm = 0.0;
};

/// Sums the matrix product over all physical configurations.
/// Throws NumericError when every amplitude vanishes.
ContractedState contract_wire(const Wire& wire);
/// Same contraction without normalization.
StateVector contract_wire_raw(const Wire& wire);

/// Throws std::invalid_argument when cos(theta) or sin(theta) is within 1e-9 of zero.
void check_theta(double theta);

/// Four-qubit wire A, A, A, B on labels 1, 2, 3, 4.
Wire psi4_wire(double theta);
StateVector build_psi4(double theta);

/// Six-qubit resource on labels (1, 2, 1', 3, 3', 4): wire 1-2-1' and wire 3-3'
/// joined through site 4 prepared in |+> and CZ gates on 2-4 and 3-4.
StateVector build_psi6(double theta);
/// Closed-form expression of the same state, before normalization.
ContractedState psi6_literal(double theta);

/// Register order used by the 36 witness settings: (4, 3, 3', 2, 1, 1').
std::vector<std::string> psi6_settings_order();

enum class CouplingGate { CZ, CX };

/// For CX the first label is the control.
struct CouplingEdge {
  std::string first;
  std::string second;
  CouplingGate gate = CouplingGate::CZ;
};

struct InjectedSite {
  std::string label;
  Vec2 ket = kets::p();
};

struct ResourceSpec {
  std::vector<Wire> wires;
  std::vector<InjectedSite> injected;
  std::vector<CouplingEdge> edges;

  /// Register order of contract_resource: wire labels in order, then injected sites.
  std::vector<std::string> labels() const;
  void validate() const;
};

/// Contracts each wire, appends injected sites and applies the coupling gates.
/// raw_norm is the product of the wire norms (the gates are unitary).
ContractedState contract_resource(const ResourceSpec& spec);

/// Resource whose contraction is build_psi6(theta).
ResourceSpec psi6_resource(double theta);

/// Couples two canonical-form wires through an injected qubit: CX gates with
/// the injected qubit as control and the chosen site of each wire as target.
/// The injected state must be |+> up to a phase.
ResourceSpec couple_canonical(const Wire& left, std::size_t left_site, const Wire& right,
                              std::size_t right_site, const std::string& injected_label,
                              const Vec2& injected = kets::p());

/// Maps the logical correlation-space vector to the physical state of a
/// readout site closed by the right boundary: physical = R logical with
/// R(s, :) = <r| site.op(s).
Mat2 readout_map(const SiteTensor& site, const Vec2& right = kets::h());

}  // namespace corrspace
