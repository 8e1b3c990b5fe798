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

#include <cmath>

#include <gtest/gtest.h>

#include "corrspace/wires.hpp"

namespace corrspace {
namespace {

// Amplitude <r| A[s_n] ... A[s_1] |l> evaluated directly from the site maps.
cplx direct_amplitude(const Wire& w, const std::vector<int>& bits) {
  Vec2 v = w.left;
  for (std::size_t k = 0; k < w.sites.size(); ++k) v = w.sites[k].op(bits[k]) * v;
  return w.right.dot(v);
}

TEST(SiteTensor, WeightedSiteMaps) {
  const double th = 0.4;
  const SiteTensor a = SiteTensor::a(th);
  EXPECT_TRUE(a.op(0).isApprox(ops::hadamard() * std::cos(th)));
  EXPECT_TRUE(a.op(1).isApprox(ops::hadamard() * ops::pauli_z() * std::sin(th)));
  const SiteTensor b = SiteTensor::b();
  EXPECT_TRUE(b.op(0).isApprox(ops::hadamard()));
  EXPECT_TRUE(b.op(1).isApprox(ops::hadamard() * ops::pauli_z()));
}

TEST(SiteTensor, RotatedReadoutUsesDiagonalKets) {
  // P' -> H, M' -> HZ, so computational |0'> = (P' + M')/sqrt2 maps to (H + HZ)/sqrt2.
  const SiteTensor r = SiteTensor::b_rotated();
  const Mat2 h = ops::hadamard();
  EXPECT_TRUE(r.op(0).isApprox((h + h * ops::pauli_z()) / std::sqrt(2.0)));
  EXPECT_TRUE(r.op(1).isApprox((h - h * ops::pauli_z()) / std::sqrt(2.0)));
}

TEST(SiteTensor, CanonicalRequiresUnitary) {
  EXPECT_NO_THROW(SiteTensor::canonical(ops::hadamard(), 0.3));
  Mat2 bad = Mat2::Identity();
  bad(0, 1) = 0.5;
  EXPECT_THROW(SiteTensor::canonical(bad, 0.3), std::invalid_argument);
}

TEST(Wire, ContractionMatchesDirectAmplitudes) {
  for (double th : {kPi / 6, 0.3, 1.1}) {
    const Wire w = psi4_wire(th);
    const StateVector raw = contract_wire_raw(w);
    for (int idx = 0; idx < 16; ++idx) {
      const std::vector<int> bits = {(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
      EXPECT_NEAR(std::abs(raw.amplitude(bits) - direct_amplitude(w, bits)), 0.0, 1e-14);
    }
    const ContractedState c = contract_wire(w);
    EXPECT_NEAR(c.state.norm(), 1.0, 1e-14);
    EXPECT_NEAR(c.raw_norm, raw.norm(), 1e-14);
  }
}

TEST(Wire, ClosedFormFourQubitState) {
  const double th = kPi / 6, c = std::cos(th), s = std::sin(th);
  const Vec2 h = kets::h(), v = kets::v(), p = kets::p(), m = kets::m();
  const VecX first = kron(kron(VecX(c * h), VecX(c * h + s * v)), VecX(c * kron(VecX(h), VecX(p)) + s * kron(VecX(v), VecX(m))));
  const VecX second = kron(kron(VecX(s * v), VecX(c * h - s * v)), VecX(c * kron(VecX(h), VecX(m)) + s * kron(VecX(v), VecX(p))));
  EXPECT_NEAR(overlap_modulus(build_psi4(th).amps(), first + second), 1.0, 1e-13);
}

TEST(Wire, DegenerateWeightRejected) {
  EXPECT_THROW(build_psi4(0.0), std::invalid_argument);
  EXPECT_THROW(build_psi4(kPi / 2), std::invalid_argument);
}

TEST(Wire, ValidationCatchesMismatches) {
  Wire w = psi4_wire(kPi / 6);
  w.labels.pop_back();
  EXPECT_THROW(w.validate(), std::invalid_argument);
  w = psi4_wire(kPi / 6);
  w.labels[1] = w.labels[0];
  EXPECT_THROW(w.validate(), std::invalid_argument);
}

TEST(SixQubit, OperationalAndLiteralAgree) {
  for (double th : {kPi / 6, 0.4, 1.0}) {
    const ContractedState op = contract_resource(psi6_resource(th));
    const ContractedState lit = psi6_literal(th);
    EXPECT_NEAR(overlap_modulus(op.state, lit.state), 1.0, 1e-12);
  }
  EXPECT_EQ(build_psi6(kPi / 6).labels(), (std::vector<std::string>{"1", "2", "1'", "3", "3'", "4"}));
}

TEST(SixQubit, LiteralBranchesHaveRelativeNorm) {
  // |mu> and |nu> carry norms 1 and 1/2, so each branch of the sum has norm 1/2.
  const ContractedState lit = psi6_literal(kPi / 6);
  EXPECT_NEAR(lit.raw_norm, 1 / std::sqrt(2.0), 1e-14);
}

TEST(Resource, ValidationRejectsBadEdges) {
  ResourceSpec spec = psi6_resource(kPi / 6);
  spec.edges.push_back({"4", "nowhere", CouplingGate::CZ});
  EXPECT_THROW(spec.validate(), UnknownQubit);
  spec = psi6_resource(kPi / 6);
  spec.edges.push_back({"2", "2", CouplingGate::CZ});
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Resource, CanonicalCouplingNeedsPlusState) {
  const Wire w = psi4_wire(kPi / 6);
  Wire other = psi4_wire(kPi / 6);
  other.labels = {"5", "6", "7", "8"};
  EXPECT_NO_THROW(couple_canonical(w, 1, other, 1, "c"));
  EXPECT_THROW(couple_canonical(w, 1, other, 1, "c", kets::h()), std::invalid_argument);
  EXPECT_THROW(couple_canonical(w, 9, other, 1, "c"), std::out_of_range);
  const ContractedState joined = contract_resource(couple_canonical(w, 1, other, 1, "c"));
  EXPECT_EQ(joined.state.num_qubits(), 9);
  EXPECT_NEAR(joined.state.norm(), 1.0, 1e-13);
}

TEST(Readout, MapsLogicalBasisToDiagonalStates) {
  // Correlation |0> -> physical |P>, |1> -> |M> through the plain readout site.
  const Mat2 r = readout_map(SiteTensor::b());
  const Vec2 zero = r * kets::h();
  const Vec2 one = r * kets::v();
  EXPECT_NEAR(overlap_modulus(VecX(zero), VecX(kets::p())), 1.0, 1e-14);
  EXPECT_NEAR(overlap_modulus(VecX(one), VecX(kets::m())), 1.0, 1e-14);
}

}  // namespace
}  // namespace corrspace
