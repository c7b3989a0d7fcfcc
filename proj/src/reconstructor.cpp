// Copyright 2026 The PAPA Tomography Authors
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

#include "papa/reconstructor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "papa/levenberg_marquardt.hpp"

namespace papa {

namespace {

// Real numbers per pair that carry a Hermitian 16x16 difference. The
// off-diagonal entries appear once, scaled by sqrt(2), so the squared norm is
// the Frobenius norm of the full difference.
constexpr int kEntriesPerPair = 256;
const double kSqrt2 = std::sqrt(2.0);

void require_compatible(const PapaModel& m, const TomographyData& data) {
  m.validate();
  data.validate();
  if (m.n_qubits != data.n_qubits) {
    std::ostringstream os;
    os << "model has " << m.n_qubits << " qubits but data has " << data.n_qubits;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

// Writes the Choi-difference block of every pair for the process s. Without
// data the blocks hold the reductions themselves.
void choi_residuals(const Superoperator& s, const TomographyData* data, const std::vector<QubitPair>& pairs,
                    double* out) {
  for (const QubitPair& pair : pairs) {
    CMatrix diff = reduced_choi_from_superop(s, pair).data;
    if (data) diff -= data->at(pair).data;
    for (int i = 0; i < 16; ++i) *out++ = diff(i, i).real();
    for (int row = 0; row < 16; ++row)
      for (int col = row + 1; col < 16; ++col) {
        const Complex mean = 0.5 * (diff(row, col) + std::conj(diff(col, row)));
        *out++ = kSqrt2 * mean.real();
        *out++ = kSqrt2 * mean.imag();
      }
  }
}

struct SparseEntry {
  int row;
  int col;
  Complex value;
};

// Two-qubit superoperator of each unit parameter step, kept sparse.
const std::vector<std::vector<SparseEntry>>& unit_superops() {
  static const std::vector<std::vector<SparseEntry>> table = [] {
    std::vector<std::vector<SparseEntry>> out(kParamsPerFactor);
    std::vector<double> unit(kParamsPerFactor, 0.0);
    CMatrix chi, s2;
    for (int j = 0; j < kParamsPerFactor; ++j) {
      unit[j] = 1.0;
      detail::unpack_chi(unit.data(), chi);
      unit[j] = 0.0;
      detail::chi_to_superop_into(chi, two_qubit_basis(), s2);
      for (int c = 0; c < 16; ++c)
        for (int r = 0; r < 16; ++r)
          if (std::abs(s2(r, c)) > 0.0) out[j].push_back({r, c, s2(r, c)});
    }
    return out;
  }();
  return table;
}

// out = embed(op) * in for a sparse two-qubit op.
void sparse_left(const std::vector<SparseEntry>& op, const detail::PairLayout& layout, const CMatrix& in,
                 CMatrix& out) {
  out.setZero(in.rows(), in.cols());
  for (Eigen::Index base : layout.bases)
    for (const auto& e : op) out.row(base + layout.offsets[e.row]) += e.value * in.row(base + layout.offsets[e.col]);
}

// out = in * embed(op) for a sparse two-qubit op.
void sparse_right(const std::vector<SparseEntry>& op, const detail::PairLayout& layout, const CMatrix& in,
                  CMatrix& out) {
  out.setZero(in.rows(), in.cols());
  for (Eigen::Index base : layout.bases)
    for (const auto& e : op) out.col(base + layout.offsets[e.col]) += e.value * in.col(base + layout.offsets[e.row]);
}

void penalty_residuals(const CMatrix& chi, double scale, double* out) {
  const RVector r = cptp_residuals(ChiMatrix{chi}, two_qubit_basis());
  for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = scale * r(i);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(eps_tol > 0.0) || !std::isfinite(eps_tol)) throw Error(ErrorCode::kInvalidArgument, "eps_tol must be > 0");
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) throw Error(ErrorCode::kInvalidArgument, "fd_step must be > 0");
  if (max_iters < 0) throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 0");
  if (!(penalty_weight >= 0.0) || !std::isfinite(penalty_weight)) {
    throw Error(ErrorCode::kInvalidArgument, "penalty_weight must be >= 0");
  }
  if (!(penalty_continuation >= 0.0 && penalty_continuation < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "penalty_continuation must lie in [0, 1)");
  }
}

double cost_c1(const PapaModel& m, const TomographyData& data, FactorOrder order) {
  require_compatible(m, data);
  const Superoperator s = build_superop(m, order);
  double total = 0.0;
  for (QubitPair pair : all_pairs(m.n_qubits)) {
    total += (reduced_choi_from_superop(s, pair).data - data.at(pair).data).squaredNorm();
  }
  return total;
}

double cost_c2(const PapaModel& m, double penalty_weight) {
  m.validate();
  double total = 0.0;
  for (const auto& f : m.factors) total += cptp_residuals(f.chi, two_qubit_basis()).squaredNorm();
  return penalty_weight * total;
}

int residual_count(int n_qubits) {
  const int pairs = n_qubits * (n_qubits - 1) / 2;
  return pairs * (kEntriesPerPair + kCptpResidualCount);
}

RVector residual_vector(const PapaModel& m, const TomographyData& data, const SolverConfig& cfg) {
  require_compatible(m, data);
  const auto pairs = all_pairs(m.n_qubits);
  RVector r(residual_count(m.n_qubits));
  choi_residuals(build_superop(m, cfg.factor_order), &data, pairs, r.data());
  const double scale = std::sqrt(cfg.penalty_weight);
  double* penalty = r.data() + pairs.size() * kEntriesPerPair;
  for (const auto& f : m.factors) {
    penalty_residuals(f.chi.data, scale, penalty);
    penalty += kCptpResidualCount;
  }
  return r;
}

RMatrix finite_diff_jacobian(const std::function<RVector(const RVector&)>& residual_fn, const RVector& v,
                             double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be > 0");
  const RVector base = residual_fn(v);
  if (!base.allFinite()) throw Error(ErrorCode::kDiverged, "residual is not finite");
  RMatrix jac(base.size(), v.size());
  RVector probe = v;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    probe(j) = v(j) + step;
    const RVector shifted = residual_fn(probe);
    probe(j) = v(j);
    if (!shifted.allFinite()) throw Error(ErrorCode::kDiverged, "residual is not finite");
    jac.col(j) = (shifted - base) / step;
  }
  return jac;
}

RMatrix model_jacobian(const RVector& params, const TomographyData& data, const SolverConfig& cfg) {
  const int n = data.n_qubits;
  const PapaModel model = unpack(params, n);
  require_compatible(model, data);
  const auto pairs = all_pairs(n);
  const auto& basis = two_qubit_basis();
  const int n_factors = static_cast<int>(model.factors.size());
  const auto seq = factor_sequence(n_factors, cfg.factor_order);
  const Eigen::Index dim = Eigen::Index{1} << (2 * n);
  const double scale = std::sqrt(cfg.penalty_weight);
  const double h = cfg.fd_step;

  std::vector<CMatrix> factor_superops(n_factors);
  std::vector<detail::PairLayout> layouts(n_factors);
  for (int f = 0; f < n_factors; ++f) {
    detail::chi_to_superop_into(model.factors[f].chi.data, basis, factor_superops[f]);
    layouts[f] = detail::pair_layout(model.factors[f].pair, n);
  }

  // The process is E(seq[0]) E(seq[1]) ... E(seq[last]).
  std::vector<CMatrix> prefix(n_factors), suffix(n_factors);
  prefix[0] = CMatrix::Identity(dim, dim);
  for (int i = 1; i < n_factors; ++i) {
    prefix[i] = prefix[i - 1];
    detail::apply_pair_right(factor_superops[seq[i - 1]], layouts[seq[i - 1]], prefix[i]);
  }
  suffix[n_factors - 1] = CMatrix::Identity(dim, dim);
  for (int i = n_factors - 2; i >= 0; --i) {
    suffix[i] = suffix[i + 1];
    detail::apply_pair_left(factor_superops[seq[i + 1]], layouts[seq[i + 1]], suffix[i]);
  }

  const Eigen::Index choi_rows = static_cast<Eigen::Index>(pairs.size()) * kEntriesPerPair;
  RMatrix jac = RMatrix::Zero(residual_count(n), params.size());
  Superoperator step{n, CMatrix(dim, dim)};
  CMatrix chi;
  RVector penalty_base(kCptpResidualCount), penalty_shifted(kCptpResidualCount);
  const auto& units = unit_superops();

  // The process is affine in every single parameter, so the forward
  // difference of the Choi rows is exactly the process built with the
  // factor at pos replaced by its unit step. The other factors are applied
  // one pair block at a time from the shorter side.
  auto unit_step = [&](int pos, const std::vector<SparseEntry>& op) {
    const int f = seq[pos];
    if (pos <= n_factors - 1 - pos) {
      sparse_left(op, layouts[f], suffix[pos], step.data);
      for (int i = pos - 1; i >= 0; --i) detail::apply_pair_left(factor_superops[seq[i]], layouts[seq[i]], step.data);
    } else {
      sparse_right(op, layouts[f], prefix[pos], step.data);
      for (int i = pos + 1; i < n_factors; ++i) {
        detail::apply_pair_right(factor_superops[seq[i]], layouts[seq[i]], step.data);
      }
    }
  };

  for (int pos = 0; pos < n_factors; ++pos) {
    const int f = seq[pos];
    const Eigen::Index offset = static_cast<Eigen::Index>(f) * kParamsPerFactor;
    const Eigen::Index penalty_row = choi_rows + static_cast<Eigen::Index>(f) * kCptpResidualCount;
    penalty_residuals(model.factors[f].chi.data, scale, penalty_base.data());

    RVector block = params.segment(offset, kParamsPerFactor);
    for (int j = 0; j < kParamsPerFactor; ++j) {
      auto column = jac.col(offset + j);
      unit_step(pos, units[j]);
      choi_residuals(step, nullptr, pairs, column.data());

      const double saved = block(j);
      block(j) = saved + h;
      detail::unpack_chi(block.data(), chi);
      block(j) = saved;
      penalty_residuals(chi, scale, penalty_shifted.data());
      if (!column.head(choi_rows).allFinite() || !penalty_shifted.allFinite()) {
        throw Error(ErrorCode::kDiverged, "residual is not finite");
      }
      column.segment(penalty_row, kCptpResidualCount) = (penalty_shifted - penalty_base) / h;
    }
  }
  return jac;
}

std::map<QubitPair, double> pair_trace_distances(const PapaModel& m, const TomographyData& data,
                                                 FactorOrder order) {
  require_compatible(m, data);
  const Superoperator s = build_superop(m, order);
  std::map<QubitPair, double> out;
  for (QubitPair pair : all_pairs(m.n_qubits)) {
    out[pair] = trace_distance(reduced_choi_from_superop(s, pair), data.at(pair));
  }
  return out;
}

double full_trace_distance(const PapaModel& m, const Superoperator& truth, FactorOrder order) {
  if (truth.n_qubits != m.n_qubits) {
    throw Error(ErrorCode::kInvalidArgument, "model and true process act on different numbers of qubits");
  }
  return trace_distance(superop_to_choi(build_superop(m, order)), superop_to_choi(truth));
}

ReconstructionResult solve(const TomographyData& data, const PapaModel& init, const SolverConfig& cfg) {
  cfg.validate();
  require_compatible(init, data);
  const int n = data.n_qubits;

  LmOptions opts;
  opts.relative_tol = cfg.eps_tol;
  opts.max_iters = cfg.max_iters;
  auto run = [&](const RVector& start, double weight, int max_iters) {
    SolverConfig stage = cfg;
    stage.penalty_weight = weight;
    LmOptions stage_opts = opts;
    stage_opts.max_iters = max_iters;
    auto residual = [&](const RVector& v) { return residual_vector(unpack(v, n), data, stage); };
    auto jacobian = [&](const RVector& v, const RVector&) { return model_jacobian(v, data, stage); };
    return levenberg_marquardt(residual, jacobian, start, stage_opts);
  };
  // Softer-penalty stages only seed the next one, so they get a reduced budget.
  const int warmup_iters = std::max(1, cfg.max_iters / 5);

  const RVector start = pack(init);
  LmResult lm = run(start, cfg.penalty_weight, cfg.max_iters);
  std::string path = "direct";
  const bool exact = lm.converged && lm.status == "exact fit";
  if (cfg.penalty_continuation > 0.0 && cfg.penalty_weight > 0.0 && !exact) {
    RVector v = start;
    int iterations = 0;
    for (double w = cfg.penalty_weight * cfg.penalty_continuation; w < cfg.penalty_weight * (1.0 - 1e-12);
         w *= 10.0) {
      const LmResult stage = run(v, w, warmup_iters);
      v = stage.x;
      iterations += stage.iterations;
    }
    LmResult alt = run(v, cfg.penalty_weight, cfg.max_iters);
    alt.iterations += iterations;
    if (alt.cost < lm.cost) {
      lm = std::move(alt);
      path = "continuation";
    }
  }

  ReconstructionResult out;
  out.raw_model = unpack(lm.x, n);
  out.model = out.raw_model;
  for (auto& f : out.model.factors) f.chi = project_psd_chi(f.chi);
  out.final_cost = lm.cost;
  out.final_c1 = cost_c1(out.raw_model, data, cfg.factor_order);
  out.final_c2 = cost_c2(out.raw_model, cfg.penalty_weight);
  out.per_pair_trace_dist = pair_trace_distances(out.model, data, cfg.factor_order);
  out.per_pair_trace_dist_raw = pair_trace_distances(out.raw_model, data, cfg.factor_order);
  out.iterations = lm.iterations;
  out.converged = lm.converged;
  out.status = lm.status;
  out.path = path;
  out.cost_history = lm.cost_history;
  return out;
}

}  // namespace papa
