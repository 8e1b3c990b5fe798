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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corrspace/measurement.hpp"
#include "corrspace/qmath.hpp"
#include "corrspace/wires.hpp"

/// Adaptive measurement programs on the wire resources and their outcome
/// bookkeeping. Logical outputs live in correlation space; physical outputs are
/// the remaining readout qubits.
namespace corrspace {

/// X^x Z^z per logical wire.
struct PauliFrame {
  std::vector<std::array<int, 2>> wires;

  /// X^x Z^z of one wire.
  Mat2 op(std::size_t wire) const;
};

struct ProtocolTranscript {
  std::vector<OutcomeRecord> outcomes;
  PauliFrame frame;
  VecX logical_out;
  StateVector physical_out{{}, VecX::Ones(1)};
  bool success = false;
  double total_probability = 1.0;
  std::string status;

  std::vector<int> outcome_bits() const;
};

struct MeasurementStep {
  std::string qubit;
  MeasurementBasis basis;
};

/// Returns the next measurement given the outcomes so far, or nothing when done.
using MeasurementProgram = std::function<std::optional<MeasurementStep>(const std::vector<int>&)>;

template <class State>
struct ProgramRun {
  std::vector<OutcomeRecord> records;
  State state;
  double probability = 1.0;
};

template <class State>
ProgramRun<State> run_program(const State& state, const MeasurementProgram& program, OutcomeSource& source);

/// Every outcome branch with nonzero probability, in lexicographic outcome order.
template <class State>
std::vector<ProgramRun<State>> enumerate_branches(const State& state, const MeasurementProgram& program);

// ---- single-qubit rotations -------------------------------------------------

MeasurementProgram rotation_program(double alpha, double beta, double gamma, double theta);

/// Measures qubits 1, 2, 3 of the four-qubit wire in B(alpha), B(beta), B(gamma).
/// Success means all three outcomes are 0; then the physical output on qubit 4
/// is Rz(gamma) Rx(beta) Rz(alpha)|+>.
ProtocolTranscript rotate_sequence(double alpha, double beta, double gamma, OutcomeSource source,
                                   double theta = kPi / 6);

struct SuccessProbability {
  double p_s = 0.0;
  /// Lower bound of p_s over all alpha.
  double p_theta = 0.0;
};

/// Probability that a B(alpha) measurement on a weighted site yields outcome 0.
SuccessProbability success_probability(double alpha, double theta);

/// Rotation angle induced by outcome 1 of B(alpha), in (-pi, pi].
double wrong_angle(double alpha, double theta);

/// p_s + (1 - p_s)(1 - (1 - p_theta)^n)
double nblock_bound(double alpha, double theta, int n);

// ---- randomness compensation ------------------------------------------------

enum class CompensationResource { TwoQubit, FourQubit };

/// Two-qubit wire (labels 3, 4) or the four-qubit wire (labels 1..4).
StateVector compensation_resource_state(CompensationResource resource, double theta);

MeasurementProgram compensation_program(double alpha, CompensationResource resource, double theta);

/// Whether an outcome sequence of compensation_program realizes Hadamard Rz(alpha).
bool compensation_succeeded(CompensationResource resource, const std::vector<int>& outcomes);

ProtocolTranscript compensate(double alpha, CompensationResource resource, OutcomeSource source,
                              double theta = kPi / 6);

struct BranchSummary {
  double success_probability = 0.0;
  double total_probability = 0.0;  // sums to 1 over all branches
  std::vector<ProtocolTranscript> branches;
};

BranchSummary compensate_exhaustive(double alpha, CompensationResource resource, double theta = kPi / 6);

/// p_s(alpha) + (1 - p_s(alpha)) p_s(alpha - alpha') for the four-qubit wire,
/// p_s(alpha) for the two-qubit wire.
double compensation_success_formula(double alpha, CompensationResource resource, double theta = kPi / 6);

struct CurvePoint {
  double alpha = 0.0;
  double probability = 0.0;
};

/// Success probability of the compensation protocol on the white-noise mixture
/// with the given fidelity, by branch enumeration on the density matrix.
std::vector<CurvePoint> noisy_success_curve(const std::vector<double>& alpha_grid, CompensationResource resource,
                                            double fidelity, double theta = kPi / 6);

// ---- entangling gate ---------------------------------------------------------

MeasurementProgram cz_program(double alpha, double theta);

/// Qubit 1 in B(alpha), qubits 2 and 3 in B(pi/2), then qubit 4 in Y when
/// r2 = r3 = 0 and in Z otherwise. Output on (1', 3').
ProtocolTranscript cz_gate_protocol(double alpha, OutcomeSource source, double theta = kPi / 6);

struct LogicalMapCheck {
  Mat4 map;       // measured logical map, up to scale
  Mat4 expected;  // (H x H)(Z x Z)^r4 CZ
  double deviation = 0.0;
  double input_condition = 0.0;  // condition number of the input matrix
};

/// Feeds four linearly independent logical inputs through the r2 = r3 = 0, given r4
/// branch and recovers the implemented two-qubit map by unnormalized contraction.
LogicalMapCheck cz_logical_map(int r4, double theta = kPi / 6);

// ---- Deutsch ------------------------------------------------------------------

enum class OracleKind { Constant, Balanced };

MeasurementProgram deutsch_program(OracleKind kind, double theta);

struct DeutschResult {
  int query_bit = 0;    // readout of 3' after relabeling; 0 means constant
  int ancilla_bit = 0;  // readout of 1' after relabeling
  bool aborted = false;
  bool relabel_applies = true;
  /// Probability that the relabeled query bit names the oracle correctly.
  double success_probability = 0.0;
  /// Relabeled readout distribution indexed by 2 * query + ancilla.
  std::array<double, 4> readout{};
  ProtocolTranscript transcript;
};

/// Measures qubit 1 in B(pi); the constant oracle measures 2, 3 and 4 in B(0),
/// the balanced oracle measures 2 and 3 in B(pi/2) and 4 in Y. The balanced
/// oracle aborts when r2 or r3 is 1.
DeutschResult deutsch(OracleKind kind, OutcomeSource source, double theta = kPi / 6);

/// Classical correction of (query, ancilla): the ancilla flips with r1. For the
/// balanced oracle the query flips with r1 xor r4; for the constant oracle it
/// is left alone.
std::array<int, 2> deutsch_relabel(std::array<int, 2> raw, int r1, int r4, OracleKind kind);

}  // namespace corrspace
