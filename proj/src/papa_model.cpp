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

#include "papa/papa_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace papa {

PapaModel PapaModel::identity(int n_qubits) {
  if (n_qubits < 2) throw Error(ErrorCode::kInvalidArgument, "a pairwise model needs at least two qubits");
  PapaModel m;
  m.n_qubits = n_qubits;
  const ChiMatrix id = unitary_chi(CMatrix::Identity(4, 4));
  for (QubitPair p : all_pairs(n_qubits)) m.factors.push_back({p, id});
  return m;
}

void PapaModel::validate() const {
  if (n_qubits < 2) throw Error(ErrorCode::kInvalidArgument, "model must have at least two qubits");
  const auto pairs = all_pairs(n_qubits);
  if (factors.size() != pairs.size()) {
    std::ostringstream os;
    os << "model on " << n_qubits << " qubits needs " << pairs.size() << " factors, has " << factors.size();
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (factors[i].pair != pairs[i]) {
      throw Error(ErrorCode::kInvalidArgument, "model factors must follow lexicographic pair order");
    }
    if (factors[i].chi.data.rows() != 16 || factors[i].chi.data.cols() != 16) {
      throw Error(ErrorCode::kInvalidDimension, "model factor chi must be 16x16");
    }
  }
}

const ChiMatrix& PapaModel::chi(QubitPair pair) const {
  for (const auto& f : factors)
    if (f.pair == pair) return f.chi;
  throw Error(ErrorCode::kOutOfRange, "model has no factor on pair " + pair.label());
}

ChiMatrix& PapaModel::chi(QubitPair pair) {
  return const_cast<ChiMatrix&>(static_cast<const PapaModel&>(*this).chi(pair));
}

int parameter_count(int n_qubits) { return kParamsPerFactor * n_qubits * (n_qubits - 1) / 2; }

const OperatorBasis& two_qubit_basis() {
  static const OperatorBasis basis = OperatorBasis::pauli(2);
  return basis;
}

ChiMatrix unitary_chi(const CMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw Error(ErrorCode::kInvalidDimension, "unitary_chi expects a 4x4 matrix");
  const auto& basis = two_qubit_basis();
  CVector coeff(16);
  for (int r = 0; r < 16; ++r) coeff(r) = (basis.element(r).adjoint() * u).trace() * basis.scale();
  // U rho U^dag = sum_{p,r} u_r conj(u_p) E_r rho E_p^dag
  return {coeff.conjugate() * coeff.transpose()};
}

std::vector<int> factor_sequence(int n_factors, FactorOrder order) {
  std::vector<int> seq(static_cast<size_t>(n_factors));
  std::iota(seq.begin(), seq.end(), 0);
  if (order == FactorOrder::kFirstPairFirst) std::reverse(seq.begin(), seq.end());
  return seq;
}

Superoperator build_superop(const PapaModel& model, FactorOrder order) {
  model.validate();
  const auto& basis = two_qubit_basis();
  Superoperator s = Superoperator::identity(model.n_qubits);
  const auto seq = factor_sequence(static_cast<int>(model.factors.size()), order);
  CMatrix s2;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    const auto& f = model.factors[*it];
    detail::chi_to_superop_into(f.chi.data, basis, s2);
    detail::apply_pair_left(s2, detail::pair_layout(f.pair, model.n_qubits), s.data);
  }
  return s;
}

ChoiState reduced_choi_of_model(const PapaModel& model, QubitPair pair, FactorOrder order) {
  validate_pair(pair, model.n_qubits);
  return reduced_choi_from_superop(build_superop(model, order), pair);
}

namespace detail {

void unpack_chi(const double* params, CMatrix& chi) {
  chi.resize(16, 16);
  for (int i = 0; i < 16; ++i) chi(i, i) = Complex(params[i], 0.0);
  int idx = 16;
  for (int p = 0; p < 16; ++p)
    for (int r = p + 1; r < 16; ++r) {
      const Complex v(params[idx], params[idx + 1]);
      idx += 2;
      chi(p, r) = v;
      chi(r, p) = std::conj(v);
    }
}

void pack_chi(const CMatrix& chi, double* params) {
  for (int i = 0; i < 16; ++i) params[i] = chi(i, i).real();
  int idx = 16;
  for (int p = 0; p < 16; ++p)
    for (int r = p + 1; r < 16; ++r) {
      params[idx++] = chi(p, r).real();
      params[idx++] = chi(p, r).imag();
    }
}

}  // namespace detail

RVector pack(const PapaModel& model) {
  model.validate();
  RVector v(parameter_count(model.n_qubits));
  for (size_t f = 0; f < model.factors.size(); ++f) {
    detail::pack_chi(model.factors[f].chi.data, v.data() + f * kParamsPerFactor);
  }
  return v;
}

PapaModel unpack(const RVector& params, int n_qubits) {
  if (n_qubits < 2) throw Error(ErrorCode::kInvalidArgument, "unpack: need at least two qubits");
  if (params.size() != parameter_count(n_qubits)) {
    std::ostringstream os;
    os << "unpack: expected " << parameter_count(n_qubits) << " parameters for " << n_qubits << " qubits, got "
       << params.size();
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  PapaModel m;
  m.n_qubits = n_qubits;
  const auto pairs = all_pairs(n_qubits);
  for (size_t f = 0; f < pairs.size(); ++f) {
    PapaFactor factor{pairs[f], {}};
    detail::unpack_chi(params.data() + f * kParamsPerFactor, factor.chi.data);
    m.factors.push_back(std::move(factor));
  }
  return m;
}

PapaModel ideal_initial_guess(const GateLayer& gate, int n_qubits) {
  gate.validate();
  if (gate.n_qubits != n_qubits) {
    throw Error(ErrorCode::kUnsupported, "ideal_initial_guess: gate acts on a different number of qubits");
  }
  if (n_qubits < 2) throw Error(ErrorCode::kUnsupported, "ideal_initial_guess: need at least two qubits");
  const auto pairs = all_pairs(n_qubits);
  std::vector<CMatrix> unitaries(pairs.size(), CMatrix::Identity(4, 4));
  auto pair_index = [&](QubitPair p) {
    return static_cast<size_t>(std::find(pairs.begin(), pairs.end(), p) - pairs.begin());
  };

  if (gate.cnot) {
    const auto [c, t] = *gate.cnot;
    const QubitPair p{std::min(c, t), std::max(c, t)};
    CMatrix cx = cnot_matrix();
    if (c > t) {
      CMatrix swap = CMatrix::Zero(4, 4);
      swap(0, 0) = swap(3, 3) = 1.0;
      swap(1, 2) = swap(2, 1) = 1.0;
      cx = swap * cx * swap;
    }
    unitaries[pair_index(p)] = cx;
  }
  for (int q = 1; q <= n_qubits; ++q) {
    const Pauli g = gate.single_qubit[q - 1];
    if (g == Pauli::I) continue;
    const QubitPair p = q == 1 ? QubitPair{1, 2} : QubitPair{1, q};
    const CMatrix local = q == p.k ? kron(pauli_matrix(g), CMatrix::Identity(2, 2))
                                   : kron(CMatrix::Identity(2, 2), pauli_matrix(g));
    auto& u = unitaries[pair_index(p)];
    u = local * u;
  }

  PapaModel m;
  m.n_qubits = n_qubits;
  for (size_t i = 0; i < pairs.size(); ++i) m.factors.push_back({pairs[i], unitary_chi(unitaries[i])});
  return m;
}

}  // namespace papa
