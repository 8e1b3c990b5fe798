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

#include "corrspace/wires.hpp"

#include <cmath>
#include <set>

namespace corrspace {

namespace {

std::array<Vec2, 2> computational_kets() { return {kets::h(), kets::v()}; }

}  // namespace

SiteTensor SiteTensor::a(double theta) {
  SiteTensor t;
  t.kind = SiteKind::A;
  t.theta = theta;
  t.basis_labels = {"H", "V"};
  t.basis_kets = computational_kets();
  t.basis_map = {ops::hadamard() * std::cos(theta), ops::hadamard() * ops::pauli_z() * std::sin(theta)};
  return t;
}

SiteTensor SiteTensor::b() {
  SiteTensor t;
  t.kind = SiteKind::B;
  t.basis_labels = {"H", "V"};
  t.basis_kets = computational_kets();
  t.basis_map = {ops::hadamard(), ops::hadamard() * ops::pauli_z()};
  return t;
}

SiteTensor SiteTensor::b_rotated() {
  SiteTensor t;
  t.kind = SiteKind::BRotated;
  t.basis_labels = {"P'", "M'"};
  t.basis_kets = {kets::p(), kets::m()};
  t.basis_map = {ops::hadamard(), ops::hadamard() * ops::pauli_z()};
  return t;
}

SiteTensor SiteTensor::canonical(const Mat2& w, double theta_c) {
  if ((w.adjoint() * w - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("canonical-form W must be unitary");
  }
  SiteTensor t;
  t.kind = SiteKind::Canonical;
  t.theta = theta_c;
  t.basis_labels = {"0", "1"};
  t.basis_kets = computational_kets();
  t.basis_map = {w, w * ops::phase_s(theta_c)};
  return t;
}

// A[|s>] = sum_k <s|e_k> A[e_k]
Mat2 SiteTensor::op(int s) const {
  Mat2 out = Mat2::Zero();
  for (int k = 0; k < 2; ++k) out += basis_kets[static_cast<std::size_t>(k)](s) * basis_map[static_cast<std::size_t>(k)];
  return out;
}

void Wire::validate() const {
  if (sites.empty() || sites.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("a wire needs between 1 and " + std::to_string(kMaxQubits) + " sites");
  }
  if (labels.size() != sites.size()) throw std::invalid_argument("one label per wire site required");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw std::invalid_argument("duplicate site label in wire");
  }
  if (left.norm() == 0.0 || right.norm() == 0.0) throw std::invalid_argument("boundary vectors must be nonzero");
}

StateVector contract_wire_raw(const Wire& wire) {
  wire.validate();
  const int n = static_cast<int>(wire.sites.size());
  std::array<Mat2, 2> ops_cache;
  // Correlation-space vectors for every prefix s_1..s_k, index = bits in order.
  std::vector<Vec2> prefix{wire.left};
  for (int k = 0; k < n; ++k) {
    const auto& site = wire.sites[static_cast<std::size_t>(k)];
    ops_cache = {site.op(0), site.op(1)};
    std::vector<Vec2> next(prefix.size() * 2);
    for (std::size_t j = 0; j < prefix.size(); ++j) {
      next[2 * j] = ops_cache[0] * prefix[j];
      next[2 * j + 1] = ops_cache[1] * prefix[j];
    }
    prefix = std::move(next);
  }
  VecX amps(static_cast<Eigen::Index>(prefix.size()));
  for (std::size_t j = 0; j < prefix.size(); ++j) amps(static_cast<Eigen::Index>(j)) = wire.right.dot(prefix[j]);
  return StateVector(wire.labels, std::move(amps));
}

ContractedState contract_wire(const Wire& wire) {
  StateVector raw = contract_wire_raw(wire);
  const double nrm = raw.norm();
  if (!(nrm > 1e-300)) throw NumericError("wire contraction vanishes identically");
  return {raw.normalized(), nrm};
}

void check_theta(double theta) {
  if (std::abs(std::cos(theta)) < 1e-9 || std::abs(std::sin(theta)) < 1e-9) {
    throw std::invalid_argument("theta must not be a multiple of pi/2");
  }
}

Wire psi4_wire(double theta) {
  check_theta(theta);
  const SiteTensor a = SiteTensor::a(theta);
  return Wire{{"1", "2", "3", "4"}, {a, a, a, SiteTensor::b()}};
}

StateVector build_psi4(double theta) { return contract_wire(psi4_wire(theta)).state; }

ResourceSpec psi6_resource(double theta) {
  check_theta(theta);
  const SiteTensor a = SiteTensor::a(theta);
  ResourceSpec spec;
  spec.wires.push_back(Wire{{"1", "2", "1'"}, {a, a, SiteTensor::b()}});
  spec.wires.push_back(Wire{{"3", "3'"}, {a, SiteTensor::b_rotated()}});
  spec.injected.push_back(InjectedSite{"4", kets::p()});
  spec.edges.push_back(CouplingEdge{"2", "4", CouplingGate::CZ});
  spec.edges.push_back(CouplingEdge{"3", "4", CouplingGate::CZ});
  return spec;
}

ContractedState psi6_literal(double theta) {
  check_theta(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Branch on (1, 2, 1') and on (3, 3'); site 4 selects Z on 2 and on 3.
  VecX mu = VecX::Zero(8);
  mu(0b000) = c * c;
  mu(0b010) = c * s;
  mu(0b101) = c * s;
  mu(0b111) = -s * s;
  VecX nu = VecX::Zero(4);
  nu(0b00) = c / 2.0;
  nu(0b11) = s / 2.0;
  VecX mu_z = mu;
  for (Eigen::Index j = 0; j < 8; ++j) {
    if (j & 0b010) mu_z(j) = -mu_z(j);
  }
  VecX nu_z = nu;
  for (Eigen::Index j = 0; j < 4; ++j) {
    if (j & 0b10) nu_z(j) = -nu_z(j);
  }
  // Site 4 is the least significant qubit in (1, 2, 1', 3, 3', 4).
  const VecX branch0 = kron(mu, nu);
  const VecX branch1 = kron(mu_z, nu_z);
  VecX amps(64);
  for (Eigen::Index j = 0; j < 32; ++j) {
    amps(2 * j) = branch0(j);
    amps(2 * j + 1) = branch1(j);
  }
  StateVector raw({"1", "2", "1'", "3", "3'", "4"}, std::move(amps));
  const double nrm = raw.norm();
  return {raw.normalized(), nrm};
}

StateVector build_psi6(double theta) {
  StateVector built = contract_resource(psi6_resource(theta)).state;
  const StateVector literal = psi6_literal(theta).state;
  if (overlap_modulus(built, literal) < 1.0 - 1e-12) {
    throw NumericError("six-qubit construction paths disagree");
  }
  return built;
}

std::vector<std::string> psi6_settings_order() { return {"4", "3", "3'", "2", "1", "1'"}; }

std::vector<std::string> ResourceSpec::labels() const {
  std::vector<std::string> out;
  for (const auto& w : wires) out.insert(out.end(), w.labels.begin(), w.labels.end());
  for (const auto& site : injected) out.push_back(site.label);
  return out;
}

void ResourceSpec::validate() const {
  for (const auto& w : wires) w.validate();
  for (const auto& site : injected) {
    if (site.ket.norm() == 0.0) throw std::invalid_argument("injected state must be nonzero");
  }
  const auto all = labels();
  if (all.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("resource exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
  const std::set<std::string> unique(all.begin(), all.end());
  if (unique.size() != all.size()) throw std::invalid_argument("duplicate site label in resource");
  for (const auto& e : edges) {
    if (e.first == e.second) throw std::invalid_argument("coupling edge needs two distinct sites");
    if (!unique.count(e.first)) throw UnknownQubit(e.first);
    if (!unique.count(e.second)) throw UnknownQubit(e.second);
  }
}

ContractedState contract_resource(const ResourceSpec& spec) {
  spec.validate();
  std::vector<std::string> no_labels;
  StateVector state(no_labels, VecX::Ones(1));
  double raw_norm = 1.0;
  for (const auto& w : spec.wires) {
    const auto part = contract_wire(w);
    raw_norm *= part.raw_norm;
    state = tensor(state, part.state);
  }
  for (const auto& site : spec.injected) {
    state = tensor(state, StateVector::product({site.label}, {site.ket.normalized()}));
  }
  for (const auto& e : spec.edges) {
    state = e.gate == CouplingGate::CZ ? apply_cz(state, e.first, e.second)
                                       : apply_controlled(ops::pauli_x(), state, e.first, e.second);
  }
  return {state, raw_norm};
}

ResourceSpec couple_canonical(const Wire& left, std::size_t left_site, const Wire& right,
                              std::size_t right_site, const std::string& injected_label,
                              const Vec2& injected) {
  if (left_site >= left.sites.size() || right_site >= right.sites.size()) {
    throw std::out_of_range("coupled site index outside the wire");
  }
  if (std::abs(std::abs(kets::p().dot(injected)) - injected.norm()) > 1e-12 * std::max(1.0, injected.norm()) ||
      injected.norm() == 0.0) {
    throw std::invalid_argument("the injected site must be prepared in |+>");
  }
  ResourceSpec spec;
  spec.wires = {left, right};
  spec.injected.push_back(InjectedSite{injected_label, injected});
  spec.edges.push_back(CouplingEdge{injected_label, left.labels[left_site], CouplingGate::CX});
  spec.edges.push_back(CouplingEdge{injected_label, right.labels[right_site], CouplingGate::CX});
  spec.validate();
  return spec;
}

Mat2 readout_map(const SiteTensor& site, const Vec2& right) {
  Mat2 r;
  for (int s = 0; s < 2; ++s) r.row(s) = right.adjoint() * site.op(s);
  return r;
}

}  // namespace corrspace
