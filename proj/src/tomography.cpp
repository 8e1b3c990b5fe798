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

#include "corrspace/tomography.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "corrspace/kernels.hpp"
#include "corrspace/random.hpp"

namespace corrspace {

double weight_for_fidelity(double fidelity, int num_qubits) {
  const double d = std::ldexp(1.0, num_qubits);
  if (!(fidelity > 1.0 / d) || fidelity > 1.0) {
    throw std::invalid_argument("fidelity must lie in (1/2^n, 1]");
  }
  return (d * fidelity - 1.0) / (d - 1.0);
}

DensityMatrix mix_with_identity(const StateVector& psi, double weight) {
  const StateVector n = psi.normalized();
  const Eigen::Index d = n.amps().size();
  MatX mat = weight * n.amps() * n.amps().adjoint();
  mat.diagonal().array() += (1.0 - weight) / static_cast<double>(d);
  return DensityMatrix(n.labels(), std::move(mat));
}

DensityMatrix white_noise(const StateVector& psi, double fidelity_target) {
  return mix_with_identity(psi, weight_for_fidelity(fidelity_target, psi.num_qubits()));
}

namespace {

Vec2 letter_ket(char c) {
  switch (c) {
    case 'H': return kets::h();
    case 'V': return kets::v();
    case 'P': return kets::p();
    case 'M': return kets::m();
    case 'R': return kets::r();
    case 'L': return kets::l();
    default: throw std::invalid_argument(std::string("unknown projector letter '") + c + "'");
  }
}

std::array<Vec2, 2> axis_kets(char c) {
  switch (c) {
    case 'Z': return {kets::h(), kets::v()};
    case 'X': return {kets::p(), kets::m()};
    case 'Y': return {kets::r(), kets::l()};
    default: throw std::invalid_argument(std::string("unknown axis letter '") + c + "'");
  }
}

std::vector<std::string> cartesian(int n, const std::string& alphabet) {
  std::vector<std::string> out{""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    for (const auto& prefix : out) {
      for (char c : alphabet) next.push_back(prefix + c);
    }
    out = std::move(next);
  }
  return out;
}

struct ProjectorSet {
  std::vector<VecX> kets;
  std::vector<double> counts;
};

ProjectorSet flatten(const CountsTable& table) {
  ProjectorSet set;
  for (const auto& row : table.rows) {
    if (static_cast<int>(row.setting.size()) != table.num_qubits()) {
      throw std::invalid_argument("setting '" + row.setting + "' does not match the register size");
    }
    auto kets = setting_kets(row.setting);
    if (kets.size() != row.counts.size()) {
      throw std::invalid_argument("setting '" + row.setting + "' has the wrong number of counts");
    }
    for (std::size_t k = 0; k < kets.size(); ++k) {
      if (row.counts[k] < 0) throw std::invalid_argument("counts must be non-negative");
      set.kets.push_back(std::move(kets[k]));
      set.counts.push_back(static_cast<double>(row.counts[k]));
    }
  }
  return set;
}

bool informationally_complete(const std::vector<VecX>& kets, int dim) {
  // Rank of the projectors in the real d^2-dimensional operator space.
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d * d, d * d);
  for (const auto& k : kets) {
    const MatX proj = k * k.adjoint();
    Eigen::VectorXd v(d * d);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      v(idx++) = proj(i, i).real();
      for (Eigen::Index j = i + 1; j < d; ++j) {
        v(idx++) = std::sqrt(2.0) * proj(i, j).real();
        v(idx++) = std::sqrt(2.0) * proj(i, j).imag();
      }
    }
    g.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  g = g.selfadjointView<Eigen::Lower>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return es.eigenvalues().minCoeff() > 1e-10 * top;
}

double log_likelihood(const std::vector<double>& counts, const std::vector<double>& probs, double total) {
  double ll = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0.0) ll += counts[j] * std::log(std::max(probs[j], 1e-300));
  }
  return ll / total;
}

}  // namespace

SettingKind setting_kind(const std::string& setting) {
  if (setting.empty()) throw std::invalid_argument("empty setting");
  const bool axis = setting.find_first_not_of("ZXY") == std::string::npos;
  const bool proj = setting.find_first_not_of("HVPMRL") == std::string::npos;
  if (axis) return SettingKind::Axis;
  if (proj) return SettingKind::Projector;
  throw std::invalid_argument("setting '" + setting + "' mixes axis and projector letters");
}

std::vector<VecX> setting_kets(const std::string& setting) {
  if (setting_kind(setting) == SettingKind::Projector) {
    VecX k = VecX::Ones(1);
    for (char c : setting) k = kron(k, VecX(letter_ket(c)));
    return {k};
  }
  std::vector<VecX> out{VecX::Ones(1)};
  for (char c : setting) {
    const auto pair = axis_kets(c);
    std::vector<VecX> next;
    next.reserve(out.size() * 2);
    for (const auto& prefix : out) {
      next.push_back(kron(prefix, VecX(pair[0])));
      next.push_back(kron(prefix, VecX(pair[1])));
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::string> axis_settings(int num_qubits) { return cartesian(num_qubits, "ZXY"); }
std::vector<std::string> projector_settings(int num_qubits) { return cartesian(num_qubits, "HVPMRL"); }

std::int64_t CountsTable::total() const {
  std::int64_t t = 0;
  for (const auto& row : rows) t = std::accumulate(row.counts.begin(), row.counts.end(), t);
  return t;
}

std::vector<std::vector<double>> expected_counts(const DensityMatrix& rho, const std::vector<std::string>& settings,
                                                 std::int64_t shots) {
  std::vector<std::vector<double>> out;
  for (const auto& s : settings) {
    if (static_cast<int>(s.size()) != rho.num_qubits()) throw std::invalid_argument("setting size mismatch");
    const auto kets = setting_kets(s);
    std::vector<double> p(kets.size());
    kernels::omp::born_probabilities(rho.mat(), kets, p);
    for (double& v : p) v = std::max(0.0, v) * static_cast<double>(shots);
    out.push_back(std::move(p));
  }
  return out;
}

CountsTable simulate_counts(const DensityMatrix& rho, const std::vector<std::string>& settings, std::int64_t shots,
                            std::uint64_t seed, SamplingMode mode) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  CountsTable table;
  table.labels = rho.labels();
  table.rows.resize(settings.size());
  const auto count = static_cast<std::ptrdiff_t>(settings.size());
  for (const auto& s : settings) {
    if (static_cast<int>(s.size()) != rho.num_qubits()) throw std::invalid_argument("setting size mismatch");
    setting_kind(s);
  }
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto kets = setting_kets(settings[ui]);
    std::vector<double> p(kets.size());
    kernels::serial::born_probabilities(rho.mat(), kets, p);
    for (double& v : p) v = std::max(0.0, v);
    std::mt19937_64 rng(derive_seed(seed, ui));
    SettingCounts row{settings[ui], std::vector<std::int64_t>(kets.size(), 0), 0};
    if (mode == SamplingMode::Poisson) {
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double mean = p[k] * static_cast<double>(shots);
        if (mean > 0.0) row.counts[k] = std::poisson_distribution<std::int64_t>(mean)(rng);
      }
      row.shots = std::accumulate(row.counts.begin(), row.counts.end(), std::int64_t{0});
    } else if (kets.size() == 1) {
      row.counts[0] = std::binomial_distribution<std::int64_t>(shots, std::min(1.0, p[0]))(rng);
      row.shots = shots;
    } else {
      // Sequential conditional binomials give an exact multinomial draw.
      std::int64_t remaining = shots;
      double mass = std::accumulate(p.begin(), p.end(), 0.0);
      for (std::size_t k = 0; k + 1 < p.size() && remaining > 0; ++k) {
        const double q = mass > 0.0 ? std::clamp(p[k] / mass, 0.0, 1.0) : 0.0;
        row.counts[k] = std::binomial_distribution<std::int64_t>(remaining, q)(rng);
        remaining -= row.counts[k];
        mass -= p[k];
      }
      row.counts.back() += remaining;
      row.shots = shots;
    }
    table.rows[ui] = std::move(row);
  }
  return table;
}

ReconstructionResult ml_reconstruct(const CountsTable& counts, const MlOptions& options, const StateVector* target) {
  const int n = counts.num_qubits();
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("register size out of range");
  const int dim = 1 << n;
  const ProjectorSet set = flatten(counts);
  const double total = std::accumulate(set.counts.begin(), set.counts.end(), 0.0);
  if (!(total > 0.0)) throw NumericError("no counts to reconstruct from");

  const std::vector<double> ones(set.kets.size(), 1.0);
  const MatX g = kernels::omp::weighted_projector_sum(set.kets, ones, dim);
  const bool complete = informationally_complete(set.kets, dim);
  // Uneven projector sums are undone on the left of the update; balanced sets
  // (every product set generated here) leave it the identity.
  MatX g_inv = MatX::Identity(dim, dim);
  {
    const double scale = g.trace().real() / dim;
    if ((g - scale * MatX::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      Eigen::SelfAdjointEigenSolver<MatX> es(g, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() > 1e-12 * scale) g_inv = (g / scale).inverse();
    }
  }

  MatX rho = MatX::Identity(dim, dim) / static_cast<double>(dim);
  std::vector<double> probs(set.kets.size());
  std::vector<double> weights(set.kets.size());
  kernels::omp::born_probabilities(rho, set.kets, probs);
  double ll = log_likelihood(set.counts, probs, total);

  int iter = 0;
  bool converged = false;
  double epsilon = 1e6;  // effectively undiluted until a step fails
  while (iter < options.max_iterations) {
    ++iter;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      weights[j] = set.counts[j] > 0.0 ? set.counts[j] / (total * std::max(probs[j], 1e-300)) : 0.0;
    }
    const MatX r = g_inv * kernels::omp::weighted_projector_sum(set.kets, weights, dim);
    bool accepted = false;
    double gain = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      const MatX step = (MatX::Identity(dim, dim) + epsilon * r) / (1.0 + epsilon);
      MatX candidate = step * rho * step.adjoint();
      candidate = (candidate + candidate.adjoint()).eval() / 2.0;
      candidate /= candidate.trace().real();
      std::vector<double> cand_probs(set.kets.size());
      kernels::omp::born_probabilities(candidate, set.kets, cand_probs);
      const double cand_ll = log_likelihood(set.counts, cand_probs, total);
      if (cand_ll >= ll) {
        gain = cand_ll - ll;
        rho = std::move(candidate);
        probs = std::move(cand_probs);
        ll = cand_ll;
        accepted = true;
        break;
      }
      epsilon *= 0.5;
    }
    if (!accepted || gain < options.tolerance) {
      converged = true;
      break;
    }
  }

  ReconstructionResult result{DensityMatrix(counts.labels, rho), ll, iter, converged, complete, std::nullopt,
                              std::nullopt};
  if (target != nullptr) result.fidelity_to_target = fidelity(result.rho, *target);
  return result;
}

MonteCarloResult monte_carlo_error(const CountsTable& counts, const StateVector& target, int runs,
                                   std::uint64_t seed, const MlOptions& options) {
  if (runs < 2) throw std::invalid_argument("Monte Carlo needs at least two runs");
  MonteCarloResult result;
  result.fidelities.assign(static_cast<std::size_t>(runs), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < runs; ++i) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    CountsTable resampled = counts;
    for (auto& row : resampled.rows) {
      for (auto& c : row.counts) {
        c = c > 0 ? std::poisson_distribution<std::int64_t>(static_cast<double>(c))(rng) : 0;
      }
      row.shots = std::accumulate(row.counts.begin(), row.counts.end(), std::int64_t{0});
    }
    const auto rec = ml_reconstruct(resampled, options, &target);
    result.fidelities[static_cast<std::size_t>(i)] = *rec.fidelity_to_target;
  }
  const double mean =
      std::accumulate(result.fidelities.begin(), result.fidelities.end(), 0.0) / static_cast<double>(runs);
  double var = 0.0;
  for (double f : result.fidelities) var += (f - mean) * (f - mean);
  result.mean_fidelity = mean;
  result.sigma = std::sqrt(var / static_cast<double>(runs - 1));
  return result;
}

}  // namespace corrspace
