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

#include "papa/gst_decomposition.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/QR>

namespace papa {

namespace {

constexpr double kSumWeight = 1e3;
constexpr double kActiveTol = 1e-12;

RVector stack_real(const CMatrix& m) {
  RVector v(2 * m.size());
  v << Eigen::Map<const CVector>(m.data(), m.size()).real(), Eigen::Map<const CVector>(m.data(), m.size()).imag();
  return v;
}

RVector solve_min_norm(const RMatrix& a, const RVector& b) {
  if (a.cols() == 0) return RVector();
  return Eigen::CompleteOrthogonalDecomposition<RMatrix>(a).solve(b);
}

RMatrix columns(const RMatrix& a, const std::vector<int>& idx) {
  RMatrix out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(idx[j]);
  return out;
}

// Lawson-Hanson active set method for min ||a x - b||, x >= 0.
RVector nnls(const RMatrix& a, const RVector& b) {
  const Eigen::Index n = a.cols();
  RVector x = RVector::Zero(n);
  std::vector<bool> passive(static_cast<size_t>(n), false);
  const int max_outer = static_cast<int>(3 * n + 10);
  for (int outer = 0; outer < max_outer; ++outer) {
    const RVector w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = kActiveTol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < max_outer; ++inner) {
      std::vector<int> p_idx;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j]) p_idx.push_back(static_cast<int>(j));
      const RVector sp = solve_min_norm(columns(a, p_idx), b);
      RVector s = RVector::Zero(n);
      for (size_t j = 0; j < p_idx.size(); ++j) s(p_idx[j]) = sp(static_cast<Eigen::Index>(j));
      double alpha = 1.0;
      bool feasible = true;
      for (int j : p_idx) {
        if (s(j) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (int j : p_idx) {
        if (x(j) <= kActiveTol) {
          x(j) = 0.0;
          passive[j] = false;
        }
      }
    }
  }
  return x;
}

// Equality-constrained least squares on a fixed support via the KKT system.
bool refine_on_support(const RMatrix& a, const RVector& b, RVector& x) {
  std::vector<int> support;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x(j) > 0.0) support.push_back(static_cast<int>(j));
  if (support.empty()) return false;
  const RMatrix ap = columns(a, support);
  const Eigen::Index m = ap.cols();
  RMatrix kkt = RMatrix::Zero(m + 1, m + 1);
  kkt.topLeftCorner(m, m) = ap.transpose() * ap;
  kkt.topRightCorner(m, 1).setOnes();
  kkt.bottomLeftCorner(1, m).setOnes();
  RVector rhs(m + 1);
  rhs << ap.transpose() * b, 1.0;
  const RVector sol = solve_min_norm(kkt, rhs);
  if (sol.head(m).minCoeff() < -1e-12) return false;
  RVector refined = RVector::Zero(x.size());
  for (size_t j = 0; j < support.size(); ++j) refined(support[j]) = std::max(0.0, sol(static_cast<Eigen::Index>(j)));
  const double total = refined.sum();
  if (!(total > 0.0)) return false;
  x = refined / total;
  return true;
}

ChoiState gate_choi(const Unitary& g) { return superop_to_choi(unitary_to_superop(g)); }

}  // namespace

GateSet GateSet::standard() {
  GateSet gs;
  gs.labels.push_back("CNOT");
  gs.gates.push_back({cnot_matrix()});
  const auto& basis = OperatorBasis::pauli(2);
  for (int i = 0; i < basis.size(); ++i) {
    gs.labels.push_back(basis.label(i));
    gs.gates.push_back({basis.element(i)});
  }
  return gs;
}

int GateSet::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(ErrorCode::kInvalidArgument, "gate-set has no element '" + label + "'");
  return static_cast<int>(it - labels.begin());
}

ConvexDecomposition fit_convex_decomposition(const ChoiState& target, const GateSet& gs) {
  if (target.data.rows() != 16 || target.data.cols() != 16) {
    throw Error(ErrorCode::kInvalidDimension, "convex decomposition expects a two-qubit Choi state");
  }
  const Eigen::Index rows = 2 * 256;
  RMatrix a(rows + 1, gs.size());
  for (int i = 0; i < gs.size(); ++i) {
    a.col(i).head(rows) = stack_real(gate_choi(gs.gates[i]).data);
    a(rows, i) = kSumWeight;
  }
  RVector b(rows + 1);
  b << stack_real(target.data), kSumWeight;

  RVector x = nnls(a, b);
  if (x.sum() > 0.0) {
    if (!refine_on_support(a.topRows(rows), b.head(rows), x)) x /= x.sum();
  }

  ConvexDecomposition d;
  CMatrix fit = CMatrix::Zero(16, 16);
  for (int i = 0; i < gs.size(); ++i) {
    if (x(i) > 0.0) {
      d.terms.push_back({x(i), i});
      fit += x(i) * gate_choi(gs.gates[i]).data;
    }
  }
  d.residual = (fit - target.data).norm();
  return d;
}

ConvexDecomposition decompose_ideal_reduction(const Unitary& gate, QubitPair pair, const GateSet& gs) {
  const Superoperator s = unitary_to_superop(gate);
  const ConvexDecomposition d = fit_convex_decomposition(reduced_choi_from_superop(s, pair), gs);
  if (d.residual > kDecompositionResidualTol) {
    std::ostringstream os;
    os << "reduction on pair " << pair.label() << " is not a convex mixture of gate-set unitaries (residual "
       << d.residual << ")";
    throw Error(ErrorCode::kNotDecomposable, os.str());
  }
  return d;
}

ConvexDecomposition decompose_ideal_reduction(const GateLayer& gate, QubitPair pair, const GateSet& gs) {
  return decompose_ideal_reduction(layer_unitary(gate), pair, gs);
}

std::vector<QubitPair> CompatibilityReport::failing_pairs() const {
  std::vector<QubitPair> out;
  for (const auto& p : pairs)
    if (!p.decomposable) out.push_back(p.pair);
  return out;
}

std::string CompatibilityReport::summary() const {
  std::ostringstream os;
  os << (compatible ? "compatible" : "incompatible");
  for (const auto& p : pairs) {
    os << "; " << p.pair.label() << " residual=" << p.residual << (p.decomposable ? "" : " (not decomposable)");
  }
  return os.str();
}

CompatibilityReport is_papa_gst_compatible(const Unitary& gate, const GateSet& gs) {
  const Superoperator s = unitary_to_superop(gate);
  CompatibilityReport report;
  report.compatible = true;
  for (QubitPair pair : all_pairs(s.n_qubits)) {
    const ConvexDecomposition d = fit_convex_decomposition(reduced_choi_from_superop(s, pair), gs);
    const bool ok = d.residual <= kDecompositionResidualTol;
    report.pairs.push_back({pair, d.residual, ok});
    report.compatible = report.compatible && ok;
  }
  return report;
}

CompatibilityReport is_papa_gst_compatible(const GateLayer& gate, const GateSet& gs) {
  return is_papa_gst_compatible(layer_unitary(gate), gs);
}

CharacterizedGateSet simulate_gateset(QubitPair pair, int n_qubits, const ErrorModel& err, const GateSet& gs) {
  validate_pair(pair, n_qubits);
  validate_error_model(err);
  CharacterizedGateSet cgs{pair, err, gs.labels, {}};
  const auto* cr = std::get_if<CRCoherent>(&err);
  if (cr && n_qubits != 3) throw Error(ErrorCode::kUnsupported, "cross-resonance gate-set needs three qubits");
  const Superoperator noise = cr ? Superoperator::identity(n_qubits) : error_superop(err, n_qubits);
  for (int i = 0; i < gs.size(); ++i) {
    Superoperator process;
    if (cr && gs.labels[i] == "CNOT") {
      process = unitary_to_superop(cr_cnot_unitary_on(cr->beta, cr->phi_zz, pair.k, pair.l));
    } else {
      const Unitary embedded{embed_two(gs.gates[i].data, pair.k, pair.l, n_qubits)};
      process = compose(noise, unitary_to_superop(embedded));
    }
    cgs.choi[i] = reduced_choi_from_superop(process, pair);
  }
  return cgs;
}

ChoiState gst_sigma(const ConvexDecomposition& d, const CharacterizedGateSet& cgs) {
  ChoiState out{2, CMatrix::Zero(16, 16)};
  for (const auto& t : d.terms) {
    auto it = cgs.choi.find(t.gate_index);
    if (it == cgs.choi.end()) {
      std::ostringstream os;
      os << "characterized gate-set on " << cgs.pair.label() << " lacks gate index " << t.gate_index;
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
    out.data += t.coefficient * it->second.data;
  }
  return out;
}

TomographyData gst_tomography(const GateLayer& gate, const ErrorModel& err, const GateSet& gs) {
  gate.validate();
  TomographyData data;
  data.n_qubits = gate.n_qubits;
  const Unitary u = layer_unitary(gate);
  for (QubitPair pair : all_pairs(gate.n_qubits)) {
    const ConvexDecomposition d = decompose_ideal_reduction(u, pair, gs);
    data.sigma[pair] = gst_sigma(d, simulate_gateset(pair, gate.n_qubits, err, gs));
  }
  return data;
}

std::string ErrorToleranceReport::summary() const {
  std::ostringstream os;
  os << (tolerable ? "error model tolerable" : "error model not tolerable");
  for (const auto& [pair, td] : trace_distance) os << "; " << pair.label() << " td=" << td;
  return os.str();
}

ErrorToleranceReport check_gst_error_tolerance(const GateLayer& gate, const ErrorModel& err, const GateSet& gs,
                                               double tol) {
  const NoisyProcess process = simulate_noisy_process(gate, err);
  const TomographyData bootstrapped = gst_tomography(gate, err, gs);
  ErrorToleranceReport report;
  for (QubitPair pair : all_pairs(gate.n_qubits)) {
    const double td = trace_distance(bootstrapped.at(pair), pairwise_qpt(process, pair));
    report.trace_distance[pair] = td;
    if (td > tol) {
      report.tolerable = false;
      report.failing_pairs.push_back(pair);
    }
  }
  return report;
}

}  // namespace papa
