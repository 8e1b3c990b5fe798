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

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Dense complex linear algebra for small qubit registers.
///
/// Amplitude ordering convention used everywhere in this library: the first
/// label of a register is the most significant bit of the amplitude index.
/// A register with labels (a, b, c) stores |s_a s_b s_c> at index
/// 4*s_a + 2*s_b + s_c.
namespace corrspace {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Largest register the dense representation accepts.
inline constexpr int kMaxQubits = 10;

/// Thrown when a qubit label is not part of a register.
class UnknownQubit : public std::out_of_range {
 public:
  explicit UnknownQubit(const std::string& label)
      : std::out_of_range("unknown qubit label '" + label + "'") {}
};

/// Thrown for numerically impossible requests: zero-probability post-selection,
/// vanishing norms, degenerate parameters.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named single-qubit operator.
struct LocalOperator {
  Mat2 mat;
  std::string name;
};

namespace ops {
Mat2 identity();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
/// exp(-i zeta sigma_z / 2)
Mat2 rz(double zeta);
/// exp(-i beta sigma_x / 2)
Mat2 rx(double beta);
/// diag(e^{-i theta/2}, e^{i theta/2})
Mat2 phase_s(double theta);
/// Pauli matrix for a letter in {I, X, Y, Z}.
Mat2 pauli(char letter);
Mat4 cz();
}  // namespace ops

/// Single-qubit kets with H=|0>, V=|1>.
namespace kets {
Vec2 h();
Vec2 v();
Vec2 p();  // (H+V)/sqrt2
Vec2 m();  // (H-V)/sqrt2
Vec2 r();  // (H+iV)/sqrt2
Vec2 l();  // (H-iV)/sqrt2
}  // namespace kets

/// Pure state of a labeled qubit register.
class StateVector {
 public:
  StateVector(std::vector<std::string> labels, VecX amps);

  /// Tensor product of single-qubit kets, in label order.
  static StateVector product(std::vector<std::string> labels, const std::vector<Vec2>& kets);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const VecX& amps() const { return amps_; }
  VecX& amps() { return amps_; }

  /// Position of a label (0 = most significant). Throws UnknownQubit.
  int position(std::string_view label) const;
  bool has(std::string_view label) const;

  double norm() const { return amps_.norm(); }
  StateVector normalized() const;

  /// Amplitude of a basis state given as bits in label order.
  cplx amplitude(const std::vector<int>& bits) const;

  /// Same state with qubits listed in `order` (a permutation of labels()).
  StateVector permuted(const std::vector<std::string>& order) const;

  /// Same amplitudes under new names.
  StateVector relabeled(std::vector<std::string> labels) const;

 private:
  std::vector<std::string> labels_;
  VecX amps_;
};

/// Mixed state of a labeled qubit register.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::string> labels, MatX mat);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::vector<std::string> labels);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const MatX& mat() const { return mat_; }
  int position(std::string_view label) const;
  bool has(std::string_view label) const;

  cplx trace() const { return mat_.trace(); }
  DensityMatrix normalized() const;
  DensityMatrix permuted(const std::vector<std::string>& order) const;

  /// Checks Hermiticity, unit trace and eigenvalues >= -eig_tol.
  bool is_valid(double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_tol = 1e-10) const;

 private:
  std::vector<std::string> labels_;
  MatX mat_;
};

/// Kronecker product; the first argument is the most significant factor.
MatX kron(const MatX& a, const MatX& b);
VecX kron(const VecX& a, const VecX& b);

/// Register concatenation |a> (x) |b>. Labels must be disjoint.
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector apply_local(const Mat2& op, const StateVector& state, std::string_view qubit);
inline StateVector apply_local(const LocalOperator& op, const StateVector& state,
                               std::string_view qubit) {
  return apply_local(op.mat, state, qubit);
}
StateVector apply_cz(const StateVector& state, std::string_view a, std::string_view b);
/// Applies `op` to `target` when `control` is |1>.
StateVector apply_controlled(const Mat2& op, const StateVector& state, std::string_view control,
                             std::string_view target);

/// Reduced state on `keep` (order of the result follows `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::string>& keep);

/// <target| rho |target>
double fidelity(const DensityMatrix& rho, const StateVector& target);

/// 2 (1 - Tr rho^2) for a single qubit.
double linear_entropy(const DensityMatrix& rho_single);

/// |<a|b>| / (|a||b|). Registers must carry the same labels (any order).
double overlap_modulus(const StateVector& a, const StateVector& b);
double overlap_modulus(const VecX& a, const VecX& b);

/// Expectation of a Pauli word (letters in label order of `state`).
double pauli_expectation(const StateVector& state, std::string_view word);
/// Expectation of a Pauli word acting on the named qubits.
double pauli_expectation(const StateVector& state, const std::vector<std::string>& qubits,
                         std::string_view letters);
double pauli_expectation(const DensityMatrix& rho, std::string_view word);

/// If a = lambda * b for some complex lambda, returns lambda.
std::optional<cplx> proportionality(const MatX& a, const MatX& b, double tol = 1e-10);

/// max_ij |a_ij / lambda - b_ij| with lambda = tr(b^dag a) / tr(b^dag b).
double distance_up_to_scalar(const MatX& a, const MatX& b);

}  // namespace corrspace
