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

#include "corrspace/measurement.hpp"

#include <cmath>

#include "corrspace/kernels.hpp"
#include "corrspace/random.hpp"

namespace corrspace {

namespace {

// Removes the global phase so the first significant component is real positive.
Vec2 canonical_phase(const Vec2& k) {
  const Vec2 n = k.normalized();
  const cplx lead = std::abs(n(0)) > 1e-12 ? n(0) : n(1);
  return n * (std::abs(lead) / lead);
}

std::vector<std::string> without(const std::vector<std::string>& labels, const std::string& q) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    if (l != q) out.push_back(l);
  }
  return out;
}

int choose_outcome(const std::array<double, 2>& p, MeasureMode mode) {
  if (const auto* ps = std::get_if<Postselect>(&mode)) {
    if (ps->outcome != 0 && ps->outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
    if (!(p[static_cast<std::size_t>(ps->outcome)] > 1e-15)) {
      throw NumericError("post-selected outcome has zero probability");
    }
    return ps->outcome;
  }
  auto* rng = std::get<Sample>(mode).rng;
  if (rng == nullptr) throw std::invalid_argument("sampling requires a generator");
  return uniform01(*rng) < p[0] / (p[0] + p[1]) ? 0 : 1;
}

}  // namespace

void MeasurementBasis::validate(double tol) const {
  if (std::abs(kets[0].norm() - 1.0) > tol || std::abs(kets[1].norm() - 1.0) > tol ||
      std::abs(kets[0].dot(kets[1])) > tol) {
    throw std::invalid_argument("basis '" + name + "' is not orthonormal");
  }
}

MeasurementBasis basis_B(double zeta, double theta) {
  check_theta(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double ch = std::cos(zeta / 2.0);
  const double sh = std::sin(zeta / 2.0);
  // s|H> + i c tan(zeta/2)|V> and c|H> - i s cot(zeta/2)|V>, cleared of poles.
  const Vec2 k0(s * ch, kI * c * sh);
  const Vec2 k1(c * sh, -kI * s * ch);
  MeasurementBasis b{"B", {canonical_phase(k0), canonical_phase(k1)}, zeta, theta};
  return b;
}

MeasurementBasis basis_u(double theta_c) {
  const double u0 = (std::cos(theta_c / 4.0) - std::sin(theta_c / 4.0)) / std::sqrt(2.0);
  const double u1 = (std::cos(theta_c / 4.0) + std::sin(theta_c / 4.0)) / std::sqrt(2.0);
  MeasurementBasis b{"u", {Vec2(u0, -u1), Vec2(u1, u0)}, std::nullopt, theta_c};
  return b;
}

MeasurementBasis basis_z() { return {"Z", {kets::h(), kets::v()}, std::nullopt, std::nullopt}; }
MeasurementBasis basis_x() { return {"X", {kets::p(), kets::m()}, std::nullopt, std::nullopt}; }
MeasurementBasis basis_y() { return {"Y", {kets::r(), kets::l()}, std::nullopt, std::nullopt}; }

InducedOperator induced_operator(const Vec2& basis_ket, const SiteTensor& site) {
  InducedOperator out;
  out.matrix = Mat2::Zero();
  for (int k = 0; k < 2; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out.matrix += basis_ket.dot(site.basis_kets[uk]) * site.basis_map[uk];
  }
  const cplx det = out.matrix.determinant();
  const double scale = out.matrix.cwiseAbs().maxCoeff();
  if (scale > 0.0 && std::abs(det) > 1e-14 * scale * scale) {
    const cplx lambda = std::sqrt(det);
    out.scalar = lambda;
    out.special_unitary = out.matrix / lambda;
    const Mat2 g = out.matrix.adjoint() * out.matrix;
    out.proportional_to_unitary =
        (g - Mat2::Identity() * (g.trace() / 2.0)).cwiseAbs().maxCoeff() <= 1e-12 * g.cwiseAbs().maxCoeff();
  }
  return out;
}

StateVector project(const StateVector& state, const std::string& qubit, const Vec2& ket) {
  const int pos = state.position(qubit);
  const auto& a = state.amps();
  VecX out = kernels::omp::contract_qubit(std::span<const cplx>(a.data(), static_cast<std::size_t>(a.size())),
                                          state.num_qubits(), pos, ket);
  return StateVector(without(state.labels(), qubit), std::move(out));
}

DensityMatrix project(const DensityMatrix& rho, const std::string& qubit, const Vec2& ket) {
  const int pos = rho.position(qubit);
  MatX out = kernels::omp::contract_qubit_dm(rho.mat(), rho.num_qubits(), pos, ket);
  return DensityMatrix(without(rho.labels(), qubit), std::move(out));
}

std::array<double, 2> outcome_probabilities(const StateVector& state, const std::string& qubit,
                                            const MeasurementBasis& basis) {
  return {project(state, qubit, basis.kets[0]).amps().squaredNorm(),
          project(state, qubit, basis.kets[1]).amps().squaredNorm()};
}

std::array<double, 2> outcome_probabilities(const DensityMatrix& rho, const std::string& qubit,
                                            const MeasurementBasis& basis) {
  return {project(rho, qubit, basis.kets[0]).trace().real(), project(rho, qubit, basis.kets[1]).trace().real()};
}

Measured<StateVector> measure(const StateVector& state, const std::string& qubit,
                              const MeasurementBasis& basis, MeasureMode mode) {
  std::array<StateVector, 2> branches = {project(state, qubit, basis.kets[0]),
                                         project(state, qubit, basis.kets[1])};
  const std::array<double, 2> p = {branches[0].amps().squaredNorm(), branches[1].amps().squaredNorm()};
  const int r = choose_outcome(p, mode);
  const auto ur = static_cast<std::size_t>(r);
  StateVector collapsed(branches[ur].labels(), branches[ur].amps() / std::sqrt(p[ur]));
  return {OutcomeRecord{qubit, basis, r, p[ur]}, std::move(collapsed)};
}

Measured<DensityMatrix> measure(const DensityMatrix& rho, const std::string& qubit,
                                const MeasurementBasis& basis, MeasureMode mode) {
  std::array<DensityMatrix, 2> branches = {project(rho, qubit, basis.kets[0]), project(rho, qubit, basis.kets[1])};
  const std::array<double, 2> p = {std::max(0.0, branches[0].trace().real()),
                                   std::max(0.0, branches[1].trace().real())};
  const int r = choose_outcome(p, mode);
  const auto ur = static_cast<std::size_t>(r);
  DensityMatrix collapsed(branches[ur].labels(), branches[ur].mat() / p[ur]);
  return {OutcomeRecord{qubit, basis, r, p[ur]}, std::move(collapsed)};
}

OutcomeSource OutcomeSource::postselect(std::vector<int> outcomes) {
  OutcomeSource s;
  s.outcomes_ = std::move(outcomes);
  return s;
}

OutcomeSource OutcomeSource::zeros() {
  OutcomeSource s;
  s.all_zero_ = true;
  return s;
}

OutcomeSource OutcomeSource::sample(std::uint64_t seed) {
  OutcomeSource s;
  s.sampling_ = true;
  s.rng_.seed(seed);
  return s;
}

MeasureMode OutcomeSource::next() {
  if (sampling_) return Sample{&rng_};
  if (all_zero_) return Postselect{0};
  if (cursor_ >= outcomes_.size()) throw std::invalid_argument("not enough post-selected outcomes supplied");
  return Postselect{outcomes_[cursor_++]};
}

}  // namespace corrspace
