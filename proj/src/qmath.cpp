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

#include "corrspace/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "corrspace/kernels.hpp"

namespace corrspace {

namespace ops {

Mat2 identity() { return Mat2::Identity(); }

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Mat2 rz(double zeta) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(-kI * zeta / 2.0);
  m(1, 1) = std::exp(kI * zeta / 2.0);
  return m;
}

Mat2 rx(double beta) {
  Mat2 m;
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 phase_s(double theta) { return rz(theta); }

Mat2 pauli(char letter) {
  switch (letter) {
    case 'I': return identity();
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

Mat4 cz() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1.0;
  return m;
}

}  // namespace ops

namespace kets {

Vec2 h() { return Vec2(1.0, 0.0); }
Vec2 v() { return Vec2(0.0, 1.0); }
Vec2 p() { return Vec2(1.0, 1.0) / std::sqrt(2.0); }
Vec2 m() { return Vec2(1.0, -1.0) / std::sqrt(2.0); }
Vec2 r() { return Vec2(1.0, kI) / std::sqrt(2.0); }
Vec2 l() { return Vec2(1.0, -kI) / std::sqrt(2.0); }

}  // namespace kets

namespace {

void check_labels(const std::vector<std::string>& labels, Eigen::Index dim) {
  const auto n = labels.size();
  if (n > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("register exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
  if (std::set<std::string>(labels.begin(), labels.end()).size() != n) {
    throw std::invalid_argument("duplicate qubit label");
  }
  if (dim != (Eigen::Index{1} << n)) {
    throw std::invalid_argument("dimension does not match the number of labels");
  }
}

int find_label(const std::vector<std::string>& labels, std::string_view label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw UnknownQubit(std::string(label));
  return static_cast<int>(it - labels.begin());
}

// Basis index permutation: new index -> old index when qubits are reordered.
std::vector<Eigen::Index> permutation_map(const std::vector<std::string>& from,
                                          const std::vector<std::string>& to) {
  const int n = static_cast<int>(from.size());
  if (static_cast<int>(to.size()) != n) throw std::invalid_argument("order must list every qubit once");
  std::vector<int> src(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) src[static_cast<std::size_t>(k)] = find_label(from, to[static_cast<std::size_t>(k)]);
  if (std::set<int>(src.begin(), src.end()).size() != src.size()) {
    throw std::invalid_argument("order must list every qubit once");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::Index old = 0;
    for (int k = 0; k < n; ++k) {
      if ((j >> (n - 1 - k)) & 1) old |= Eigen::Index{1} << (n - 1 - src[static_cast<std::size_t>(k)]);
    }
    map[static_cast<std::size_t>(j)] = old;
  }
  return map;
}

}  // namespace

StateVector::StateVector(std::vector<std::string> labels, VecX amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
  check_labels(labels_, amps_.size());
}

StateVector StateVector::product(std::vector<std::string> labels, const std::vector<Vec2>& kets) {
  if (labels.size() != kets.size()) throw std::invalid_argument("one ket per label required");
  VecX amps = VecX::Ones(1);
  for (const auto& k : kets) amps = kron(amps, VecX(k));
  return StateVector(std::move(labels), std::move(amps));
}

int StateVector::position(std::string_view label) const { return find_label(labels_, label); }

bool StateVector::has(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (!(nrm > 1e-300)) throw NumericError("cannot normalize a zero vector");
  return StateVector(labels_, amps_ / nrm);
}

cplx StateVector::amplitude(const std::vector<int>& bits) const {
  if (static_cast<int>(bits.size()) != num_qubits()) {
    throw std::invalid_argument("bit string length does not match register");
  }
  Eigen::Index idx = 0;
  for (int b : bits) idx = (idx << 1) | (b ? 1 : 0);
  return amps_(idx);
}

StateVector StateVector::permuted(const std::vector<std::string>& order) const {
  const auto map = permutation_map(labels_, order);
  VecX out(amps_.size());
  for (Eigen::Index j = 0; j < out.size(); ++j) out(j) = amps_(map[static_cast<std::size_t>(j)]);
  return StateVector(order, std::move(out));
}

StateVector StateVector::relabeled(std::vector<std::string> labels) const {
  return StateVector(std::move(labels), amps_);
}

DensityMatrix::DensityMatrix(std::vector<std::string> labels, MatX mat)
    : labels_(std::move(labels)), mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("density matrix must be square");
  check_labels(labels_, mat_.rows());
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.labels(), psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<std::string> labels) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  return DensityMatrix(std::move(labels), MatX::Identity(dim, dim) / static_cast<double>(dim));
}

int DensityMatrix::position(std::string_view label) const { return find_label(labels_, label); }

bool DensityMatrix::has(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

DensityMatrix DensityMatrix::normalized() const {
  const cplx tr = trace();
  if (!(std::abs(tr) > 1e-300)) throw NumericError("cannot normalize a traceless operator");
  return DensityMatrix(labels_, mat_ / tr);
}

DensityMatrix DensityMatrix::permuted(const std::vector<std::string>& order) const {
  const auto map = permutation_map(labels_, order);
  MatX out(mat_.rows(), mat_.cols());
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) = mat_(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
    }
  }
  return DensityMatrix(order, std::move(out));
}

bool DensityMatrix::is_valid(double herm_tol, double trace_tol, double eig_tol) const {
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > herm_tol) return false;
  if (std::abs(trace() - 1.0) > trace_tol) return false;
  const MatX herm = (mat_ + mat_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatX> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_tol;
}

MatX kron(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

VecX kron(const VecX& a, const VecX& b) {
  VecX out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return StateVector(std::move(labels), kron(a.amps(), b.amps()));
}

StateVector apply_local(const Mat2& op, const StateVector& state, std::string_view qubit) {
  StateVector out = state;
  kernels::omp::apply_1q(std::span<cplx>(out.amps().data(), static_cast<std::size_t>(out.amps().size())),
                         out.num_qubits(), state.position(qubit), op);
  return out;
}

StateVector apply_cz(const StateVector& state, std::string_view a, std::string_view b) {
  const int pa = state.position(a);
  const int pb = state.position(b);
  if (pa == pb) throw std::invalid_argument("CZ needs two distinct qubits");
  StateVector out = state;
  kernels::omp::apply_cz(std::span<cplx>(out.amps().data(), static_cast<std::size_t>(out.amps().size())),
                         out.num_qubits(), pa, pb);
  return out;
}

StateVector apply_controlled(const Mat2& op, const StateVector& state, std::string_view control,
                             std::string_view target) {
  const int pc = state.position(control);
  const int pt = state.position(target);
  if (pc == pt) throw std::invalid_argument("controlled gate needs two distinct qubits");
  StateVector out = state;
  kernels::omp::apply_controlled(
      std::span<cplx>(out.amps().data(), static_cast<std::size_t>(out.amps().size())),
      out.num_qubits(), pc, pt, op);
  return out;
}

namespace {

std::vector<int> keep_positions(const std::vector<std::string>& labels,
                                const std::vector<std::string>& keep) {
  std::vector<int> pos;
  for (const auto& k : keep) pos.push_back(find_label(labels, k));
  if (std::set<int>(pos.begin(), pos.end()).size() != pos.size()) {
    throw std::invalid_argument("duplicate qubit in partial trace");
  }
  return pos;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  const auto pos = keep_positions(rho.labels(), keep);
  return DensityMatrix(keep, kernels::omp::reduce(rho.mat(), rho.num_qubits(), pos));
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::string>& keep) {
  const auto pos = keep_positions(psi.labels(), keep);
  const auto& a = psi.amps();
  return DensityMatrix(keep, kernels::omp::reduce_pure(
                                 std::span<const cplx>(a.data(), static_cast<std::size_t>(a.size())),
                                 psi.num_qubits(), pos));
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
  const StateVector t = target.permuted(rho.labels());
  return t.amps().dot(rho.mat() * t.amps()).real();
}

double linear_entropy(const DensityMatrix& rho_single) {
  if (rho_single.num_qubits() != 1) throw std::invalid_argument("linear entropy expects one qubit");
  const double purity = (rho_single.mat() * rho_single.mat()).trace().real();
  return 2.0 * (1.0 - purity);
}

double overlap_modulus(const VecX& a, const VecX& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap of vectors with different sizes");
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 1e-300) || !(nb > 1e-300)) throw NumericError("overlap with a zero vector");
  return std::abs(a.dot(b)) / (na * nb);
}

double overlap_modulus(const StateVector& a, const StateVector& b) {
  return overlap_modulus(a.amps(), b.permuted(a.labels()).amps());
}

double pauli_expectation(const StateVector& state, std::string_view word) {
  const auto& a = state.amps();
  return kernels::omp::pauli_expectation(
             std::span<const cplx>(a.data(), static_cast<std::size_t>(a.size())), state.num_qubits(), word)
      .real();
}

double pauli_expectation(const StateVector& state, const std::vector<std::string>& qubits,
                         std::string_view letters) {
  if (qubits.size() != letters.size()) throw std::invalid_argument("one Pauli letter per qubit required");
  std::string word(static_cast<std::size_t>(state.num_qubits()), 'I');
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    word[static_cast<std::size_t>(state.position(qubits[k]))] = letters[k];
  }
  return pauli_expectation(state, word);
}

double pauli_expectation(const DensityMatrix& rho, std::string_view word) {
  return kernels::omp::pauli_expectation_dm(rho.mat(), rho.num_qubits(), word).real();
}

std::optional<cplx> proportionality(const MatX& a, const MatX& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  const double bb = b.squaredNorm();
  if (bb == 0.0) return a.norm() <= tol ? std::optional<cplx>(0.0) : std::nullopt;
  const cplx lambda = (b.adjoint() * a).trace() / bb;
  if ((a - lambda * b).cwiseAbs().maxCoeff() > tol * std::max(1.0, std::abs(lambda))) return std::nullopt;
  return lambda;
}

double distance_up_to_scalar(const MatX& a, const MatX& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  const double bb = b.squaredNorm();
  if (bb == 0.0) throw NumericError("reference matrix is zero");
  const cplx lambda = (b.adjoint() * a).trace() / bb;
  if (std::abs(lambda) < 1e-300) throw NumericError("matrices are orthogonal");
  return (a / lambda - b).cwiseAbs().maxCoeff();
}

}  // namespace corrspace
