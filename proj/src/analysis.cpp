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

#include "corrspace/analysis.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "corrspace/kernels.hpp"
#include "corrspace/tomography.hpp"
#include "corrspace/wires.hpp"

namespace corrspace {

namespace {

constexpr int kWitnessQubits = 6;

const char kLetters[] = {'I', 'X', 'Y', 'Z'};

std::string word_from_index(int index, int n) {
  std::string w(static_cast<std::size_t>(n), 'I');
  for (int q = n - 1; q >= 0; --q) {
    w[static_cast<std::size_t>(q)] = kLetters[index & 3];
    index >>= 2;
  }
  return w;
}

std::vector<std::string> settings_order() { return psi6_settings_order(); }

PauliWord make_word(const std::string& letters, cplx coefficient) {
  return PauliWord{settings_order(), letters, coefficient};
}

// Bits of the outcome index that a word reads.
std::size_t word_mask(const std::string& word) {
  const int n = static_cast<int>(word.size());
  std::size_t mask = 0;
  for (int q = 0; q < n; ++q) {
    if (word[static_cast<std::size_t>(q)] != 'I') mask |= std::size_t{1} << (n - 1 - q);
  }
  return mask;
}

double correlator(const SettingData& d, const std::string& word) {
  const std::size_t mask = word_mask(word);
  double acc = 0.0;
  for (std::size_t k = 0; k < d.probabilities.size(); ++k) {
    acc += (std::popcount(k & mask) & 1) ? -d.probabilities[k] : d.probabilities[k];
  }
  return acc;
}

Mat2 setting_rotation(char letter) {
  switch (letter) {
    case 'Z': return Mat2::Identity();
    case 'X': return ops::hadamard();
    case 'Y': {
      Mat2 sdg = Mat2::Zero();
      sdg(0, 0) = 1.0;
      sdg(1, 1) = -kI;
      return ops::hadamard() * sdg;
    }
    default: throw std::invalid_argument(std::string("setting letters must be X, Y or Z, got '") + letter + "'");
  }
}

MatX diag2(double a, double b) {
  MatX m = MatX::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// a|00><00| + b|11><11|
MatX diag_pair(double a, double b) {
  MatX m = MatX::Zero(4, 4);
  m(0, 0) = a;
  m(3, 3) = b;
  return m;
}

MatX pauli_pair(char a, char b) { return kron(MatX(ops::pauli(a)), MatX(ops::pauli(b))); }
MatX pauli1(char a) { return MatX(ops::pauli(a)); }

MatX term(const MatX& site4, const MatX& pair3, const MatX& site2, const MatX& pair1) {
  return kron(kron(kron(site4, pair3), site2), pair1);
}

}  // namespace

double two_point_correlation(const StateVector& state, const std::string& i, const std::string& j, char a, char b) {
  if (i == j) throw std::invalid_argument("two-point correlation needs distinct qubits");
  const double joint = pauli_expectation(state, {i, j}, std::string{a, b});
  const double ea = pauli_expectation(state, {i}, std::string{a});
  const double eb = pauli_expectation(state, {j}, std::string{b});
  return joint - ea * eb;
}

double q_max(const StateVector& state, const std::string& i, const std::string& j) {
  double best = 0.0;
  for (char a : {'X', 'Y', 'Z'}) {
    for (char b : {'X', 'Y', 'Z'}) best = std::max(best, std::abs(two_point_correlation(state, i, j, a, b)));
  }
  return best;
}

std::vector<double> local_entropies(const StateVector& state) {
  std::vector<double> out;
  for (const auto& label : state.labels()) out.push_back(linear_entropy(partial_trace(state, {label})));
  return out;
}

std::vector<std::string> witness_settings() {
  return {"ZZZZZZ", "ZXXZZZ", "ZYYZZZ", "ZZZZXX", "ZXXZXX", "ZYYZXX", "ZZZZYY", "ZXXZYY", "ZYYZYY",
          "ZZZXZZ", "ZXXXZZ", "ZYYXZZ", "ZZZYXY", "ZXXYXY", "ZYYYXY", "ZZZYYX", "ZXXYYX", "ZYYYYX",
          "XZZZZZ", "XZZZXX", "XZZZYY", "XYXYZZ", "XYXXXY", "XYZXYX", "XXYYZZ", "XXYXXY", "XXYXYX",
          "YYXZZZ", "YYXZXX", "YYXZYY", "YXYZZZ", "YXYZXX", "YXYZYY", "YZZYZZ", "YZZXXY", "YZZXYX"};
}

std::vector<std::string> witness_settings_corrected() {
  auto s = witness_settings();
  s[23] = "XYXXYX";
  return s;
}

std::vector<MatX> witness_terms(double theta) {
  check_theta(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double c2 = c * c, s2 = s * s, cs = c * s, h = 0.5;
  const MatX id = MatX::Identity(2, 2);
  const MatX z = pauli1('Z'), x = pauli1('X'), y = pauli1('Y');
  const MatX xx = pauli_pair('X', 'X'), yy = pauli_pair('Y', 'Y');
  const MatX xy = pauli_pair('X', 'Y'), yx = pauli_pair('Y', 'X');
  const MatX even3 = diag_pair(c2, s2), odd3 = diag_pair(c2, -s2), neg3 = diag_pair(-c2, s2);
  const MatX even2 = diag2(c2, s2), odd2 = diag2(c2, -s2), neg2 = diag2(-c2, s2);
  const MatX even1 = diag_pair(c2, s2), odd1 = diag_pair(c2, -s2), neg1 = diag_pair(-c2, s2);

  return {
      term(id, even3, even2, even1),                       // 1
      term(z, even3, cs * x, even1),                       // 2
      term(z, h * cs * xx, even2, even1),                  // 3
      term(id, even3, neg2, h * cs * yy),                  // 4
      term(id, even3, odd2, h * cs * xx),                  // 5
      -term(z, h * cs * yy, even2, even1),                 // 6
      term(id, h * cs * xx, cs * x, odd1),                 // 7
      term(id, h * cs * yy, cs * x, odd1),                 // 8
      term(z, even3, h * c2 * s2 * y, xy),                 // 9
      term(z, even3, h * c2 * s2 * y, yx),                 // 10
      term(z, h * cs * xx, odd2, h * cs * xx),             // 11
      term(z, h * cs * yy, neg2, h * cs * xx),             // 12
      term(z, h * cs * xx, neg2, h * cs * yy),             // 13
      term(z, h * cs * yy, odd2, h * cs * yy),             // 14
      term(id, h * cs * xx, h * c2 * s2 * y, xy),          // 15
      term(id, h * cs * yy, h * c2 * s2 * y, xy),          // 16
      term(id, h * cs * xx, h * c2 * s2 * y, yx),          // 17
      term(id, h * cs * yy, h * c2 * s2 * y, yx),          // 18
      term(x, odd3, odd2, even1),                          // 19
      term(y, odd3, cs * y, odd1),                         // 20
      term(x, odd3, even2, h * cs * xx),                   // 21
      term(x, odd3, even2, h * cs * yy),                   // 22
      term(h * cs * y, xy, odd2, even1),                   // 23
      term(h * cs * y, yx, odd2, even1),                   // 24
      term(y, neg3, h * c2 * s2 * x, xy),                  // 25
      term(y, neg3, h * c2 * s2 * x, yx),                  // 26
      term(h * cs * x, xy, cs * y, neg1),                  // 27
      term(h * cs * x, yx, cs * y, neg1),                  // 28
      term(h * cs * y, yx, neg2, h * cs * yy),             // 29
      term(h * cs * y, yx, odd2, h * cs * xx),             // 30
      term(h * cs * y, xy, odd2, h * cs * xx),             // 31
      term(h * cs * y, xy, neg2, h * cs * yy),             // 32
      term(h * cs * x, yx, h * c2 * s2 * x, xy),           // 33
      term(h * cs * x, yx, h * c2 * s2 * x, yx),           // 34
      term(h * cs * x, xy, h * c2 * s2 * x, xy),           // 35
      term(h * cs * x, xy, h * c2 * s2 * x, yx),           // 36
  };
}

std::vector<PauliWord> pauli_expansion(const MatX& op, double tol) {
  if (op.rows() != 64 || op.cols() != 64) throw std::invalid_argument("expected a six-qubit operator");
  std::vector<PauliWord> out;
  for (int idx = 0; idx < (1 << (2 * kWitnessQubits)); ++idx) {
    const std::string w = word_from_index(idx, kWitnessQubits);
    const cplx coeff = kernels::omp::pauli_expectation_dm(op, kWitnessQubits, w) / 64.0;
    if (std::abs(coeff) > tol) out.push_back(make_word(w, coeff));
  }
  return out;
}

std::vector<PauliWord> projector_pauli_expansion(double theta) {
  const StateVector psi = build_psi6(theta).permuted(settings_order());
  std::vector<PauliWord> out;
  for (int idx = 0; idx < (1 << (2 * kWitnessQubits)); ++idx) {
    const std::string w = word_from_index(idx, kWitnessQubits);
    const double coeff = pauli_expectation(psi, w) / 64.0;
    if (std::abs(coeff) > 1e-13) out.push_back(make_word(w, coeff));
  }
  return out;
}

bool setting_covers(const std::string& setting, const std::string& word) {
  if (setting.size() != word.size()) return false;
  for (std::size_t q = 0; q < word.size(); ++q) {
    if (word[q] != 'I' && word[q] != setting[q]) return false;
  }
  return true;
}

bool diagonal_in_setting(const MatX& op, const std::string& setting, double tol) {
  MatX u = MatX::Ones(1, 1);
  for (char c : setting) u = kron(u, MatX(setting_rotation(c)));
  if (u.rows() != op.rows()) throw std::invalid_argument("setting size does not match the operator");
  MatX d = u * op * u.adjoint();
  d.diagonal().setZero();
  return d.cwiseAbs().maxCoeff() <= tol;
}

WitnessAssembly assemble_witness(double theta, const std::vector<std::string>& settings) {
  const auto terms = witness_terms(theta);
  const StateVector psi = build_psi6(theta).permuted(settings_order());
  WitnessAssembly a;
  a.projector = psi.amps() * psi.amps().adjoint();
  a.sum = MatX::Zero(64, 64);
  for (const auto& t : terms) a.sum += t;
  const Eigen::MatrixXd diff = (a.sum - a.projector).cwiseAbs();
  a.residual = diff.maxCoeff(&a.worst_row, &a.worst_col);
  a.trace = a.sum.trace().real();
  a.target_expectation = psi.amps().dot(a.sum * psi.amps()).real();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    a.term_direct.push_back(psi.amps().dot(terms[i] * psi.amps()).real());
    double expanded = 0.0;
    for (const auto& w : pauli_expansion(terms[i])) expanded += (w.coefficient * pauli_expectation(psi, w.letters)).real();
    a.term_expanded.push_back(expanded);
    std::vector<int> cover;
    for (std::size_t k = 0; k < settings.size(); ++k) {
      if (diagonal_in_setting(terms[i], settings[k])) cover.push_back(static_cast<int>(k) + 1);
    }
    if (cover.empty()) a.uncovered_terms.push_back(static_cast<int>(i) + 1);
    a.covering_settings.push_back(std::move(cover));
  }
  return a;
}

std::vector<SettingData> exact_setting_data(const DensityMatrix& rho, const std::vector<std::string>& settings) {
  std::vector<SettingData> out;
  for (const auto& s : settings) {
    if (static_cast<int>(s.size()) != rho.num_qubits() || setting_kind(s) != SettingKind::Axis) {
      throw std::invalid_argument("setting '" + s + "' must have one X, Y or Z letter per qubit");
    }
    const auto kets = setting_kets(s);
    std::vector<double> p(kets.size());
    kernels::omp::born_probabilities(rho.mat(), kets, p);
    out.push_back(SettingData{s, std::move(p), 0});
  }
  return out;
}

std::vector<SettingData> sampled_setting_data(const DensityMatrix& rho, const std::vector<std::string>& settings,
                                              std::int64_t shots, std::uint64_t seed) {
  const CountsTable table = simulate_counts(rho, settings, shots, seed, SamplingMode::Multinomial);
  std::vector<SettingData> out;
  for (const auto& row : table.rows) {
    std::vector<double> p(row.counts.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = static_cast<double>(row.counts[k]) / static_cast<double>(shots);
    out.push_back(SettingData{row.setting, std::move(p), shots});
  }
  return out;
}

FidelityEstimate fidelity_from_settings(const std::vector<SettingData>& data, double theta,
                                        const std::vector<std::string>& required) {
  std::map<std::string, const SettingData*> lookup;
  for (const auto& d : data) lookup.emplace(d.setting, &d);
  std::vector<const SettingData*> ordered;
  for (const auto& s : required) {
    const auto it = lookup.find(s);
    if (it == lookup.end()) throw std::invalid_argument("missing data for setting " + s);
    if (it->second->probabilities.size() != (std::size_t{1} << s.size())) {
      throw std::invalid_argument("setting " + s + " needs one probability per outcome");
    }
    ordered.push_back(it->second);
  }

  FidelityEstimate est;
  // Per setting: g(k) = sum of coefficient * eigenvalue over the words it reads.
  std::vector<std::vector<double>> g(required.size());
  for (std::size_t k = 0; k < required.size(); ++k) g[k].assign(ordered[k]->probabilities.size(), 0.0);
  for (const auto& w : projector_pauli_expansion(theta)) {
    const double coeff = w.coefficient.real();
    std::size_t owner = required.size();
    for (std::size_t k = 0; k < required.size(); ++k) {
      if (setting_covers(required[k], w.letters)) {
        owner = k;
        break;
      }
    }
    if (owner == required.size()) {
      est.uncovered_weight += std::abs(coeff);
      est.uncovered_words.push_back(w.letters);
      continue;
    }
    const std::size_t mask = word_mask(w.letters);
    for (std::size_t out = 0; out < g[owner].size(); ++out) {
      g[owner][out] += (std::popcount(out & mask) & 1) ? -coeff : coeff;
    }
  }

  double var = 0.0;
  for (std::size_t k = 0; k < required.size(); ++k) {
    const auto& p = ordered[k]->probabilities;
    double mean = 0.0, second = 0.0;
    for (std::size_t out = 0; out < p.size(); ++out) {
      mean += p[out] * g[k][out];
      second += p[out] * g[k][out] * g[k][out];
    }
    est.per_setting.push_back(mean);
    est.fidelity += mean;
    if (ordered[k]->shots > 0) var += std::max(0.0, second - mean * mean) / static_cast<double>(ordered[k]->shots);
  }
  est.sigma = std::sqrt(var);
  return est;
}

std::vector<double> witness_term_values(const std::vector<SettingData>& data, double theta) {
  std::vector<double> out;
  for (const auto& t : witness_terms(theta)) {
    double value = 0.0;
    bool measured = true;
    for (const auto& w : pauli_expansion(t)) {
      const SettingData* source = nullptr;
      for (const auto& d : data) {
        if (setting_covers(d.setting, w.letters)) {
          source = &d;
          break;
        }
      }
      if (source == nullptr) {
        measured = false;
        break;
      }
      value += w.coefficient.real() * correlator(*source, w.letters);
    }
    out.push_back(measured ? value : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

}  // namespace corrspace
