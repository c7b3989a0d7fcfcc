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

#include "papa/channel.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace papa {

namespace {

bool is_power_of_two(Eigen::Index x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(Eigen::Index x) { return std::countr_zero(static_cast<unsigned long long>(x)); }

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || !is_power_of_two(m.rows())) {
    std::ostringstream os;
    os << what << ": expected a square matrix with power-of-two dimension, got " << m.rows()
       << "x" << m.cols();
    throw Error(ErrorCode::kInvalidDimension, os.str());
  }
}

const std::array<CMatrix, 4>& single_qubit_paulis() {
  static const std::array<CMatrix, 4> paulis = [] {
    std::array<CMatrix, 4> p;
    const Complex i(0.0, 1.0);
    p[0] = CMatrix::Identity(2, 2);
    p[1] = CMatrix(2, 2);
    p[1] << 0.0, 1.0, 1.0, 0.0;
    p[2] = CMatrix(2, 2);
    p[2] << 0.0, -i, i, 0.0;
    p[3] = CMatrix(2, 2);
    p[3] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return paulis;
}

// Index of an n-qubit basis state given the two bits on the pair and the
// bits of the n-2 spectators (spectators ordered by increasing qubit index).
struct ReductionIndexer {
  int n = 0;
  int n_spectators = 0;
  // full[pair_bits][spectator_bits]
  std::vector<std::array<Eigen::Index, 4>> full;

  ReductionIndexer(QubitPair pair, int n_qubits) : n(n_qubits), n_spectators(n_qubits - 2) {
    std::vector<int> spectators;
    for (int q = 1; q <= n; ++q) {
      if (q != pair.k && q != pair.l) spectators.push_back(q);
    }
    const Eigen::Index n_spec_states = Eigen::Index{1} << n_spectators;
    full.resize(static_cast<size_t>(n_spec_states));
    for (Eigen::Index s = 0; s < n_spec_states; ++s) {
      Eigen::Index base = 0;
      for (int t = 0; t < n_spectators; ++t) {
        const Eigen::Index bit = (s >> (n_spectators - 1 - t)) & 1;
        base |= bit << (n - spectators[t]);
      }
      for (int pb = 0; pb < 4; ++pb) {
        const Eigen::Index bk = (pb >> 1) & 1;
        const Eigen::Index bl = pb & 1;
        full[s][pb] = base | (bk << (n - pair.k)) | (bl << (n - pair.l));
      }
    }
  }
};

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::string QubitPair::label() const {
  std::ostringstream os;
  os << "(" << k << "," << l << ")";
  return os.str();
}

std::vector<QubitPair> all_pairs(int n_qubits) {
  std::vector<QubitPair> pairs;
  for (int k = 1; k <= n_qubits; ++k) {
    for (int l = k + 1; l <= n_qubits; ++l) pairs.push_back({k, l});
  }
  return pairs;
}

void validate_pair(QubitPair pair, int n_qubits) {
  if (pair.k < 1 || pair.l > n_qubits || pair.k >= pair.l) {
    std::ostringstream os;
    os << "qubit pair " << pair.label() << " invalid for " << n_qubits << " qubits";
    throw Error(ErrorCode::kOutOfRange, os.str());
  }
}

Superoperator Superoperator::identity(int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << (2 * n_qubits);
  return {n_qubits, CMatrix::Identity(dim, dim)};
}

OperatorBasis OperatorBasis::pauli(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 5) {
    throw Error(ErrorCode::kInvalidDimension, "Pauli basis supports 1..5 qubits");
  }
  OperatorBasis b;
  b.n_qubits_ = n_qubits;
  b.dim_ = 1 << n_qubits;
  b.scale_ = std::pow(2.0, -0.5 * n_qubits);
  const int count = 1 << (2 * n_qubits);
  const auto& paulis = single_qubit_paulis();
  b.elements_.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    CMatrix e = CMatrix::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
      const int digit = (idx >> (2 * (n_qubits - 1 - q))) & 3;
      e = kron(e, paulis[digit]);
    }
    b.elements_.push_back(std::move(e));
  }
  b.rows_.resize(static_cast<size_t>(count) * b.dim_);
  b.phases_.resize(static_cast<size_t>(count) * b.dim_);
  for (int idx = 0; idx < count; ++idx) {
    const CMatrix& e = b.elements_[idx];
    for (int c = 0; c < b.dim_; ++c) {
      for (int r = 0; r < b.dim_; ++r) {
        if (std::abs(e(r, c)) > 0.5) {
          b.rows_[idx * b.dim_ + c] = r;
          b.phases_[idx * b.dim_ + c] = e(r, c);
        }
      }
    }
  }
  return b;
}

std::string OperatorBasis::label(int i) const {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (int q = 0; q < n_qubits_; ++q) s += kLetters[(i >> (2 * (n_qubits_ - 1 - q))) & 3];
  return s;
}

int OperatorBasis::index_of(const std::string& label) const {
  if (static_cast<int>(label.size()) != n_qubits_) {
    throw Error(ErrorCode::kInvalidArgument, "Pauli label '" + label + "' has wrong length");
  }
  int idx = 0;
  for (char ch : label) {
    int digit = 0;
    switch (ch) {
      case 'I': digit = 0; break;
      case 'X': digit = 1; break;
      case 'Y': digit = 2; break;
      case 'Z': digit = 3; break;
      default: throw Error(ErrorCode::kInvalidArgument, "bad Pauli label '" + label + "'");
    }
    idx = idx * 4 + digit;
  }
  return idx;
}

Superoperator unitary_to_superop(const Unitary& u) {
  require_square(u.data, "unitary_to_superop");
  return {log2_exact(u.data.rows()), kron(u.data.conjugate(), u.data)};
}

Superoperator kraus_to_superop(const KrausSet& kraus) {
  if (kraus.ops.empty()) throw Error(ErrorCode::kInvalidKraus, "empty Kraus set");
  for (const auto& k : kraus.ops) {
    require_square(k, "kraus_to_superop");
    if (k.rows() != kraus.ops.front().rows()) {
      throw Error(ErrorCode::kInvalidDimension, "Kraus operators differ in dimension");
    }
  }
  if (!kraus_is_complete(kraus, 1e-9)) {
    throw Error(ErrorCode::kInvalidKraus, "Kraus completeness sum K^dag K = I violated");
  }
  const Eigen::Index d = kraus.ops.front().rows();
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus.ops) s += kron(k.conjugate(), k);
  return {log2_exact(d), std::move(s)};
}

ChoiState superop_to_choi(const Superoperator& s) {
  require_square(s.data, "superop_to_choi");
  const Eigen::Index dd = s.data.rows();
  const Eigen::Index d = Eigen::Index{1} << (log2_exact(dd) / 2);
  if (d * d != dd) throw Error(ErrorCode::kInvalidDimension, "superoperator dimension is not 4^n");
  CMatrix c(dd, dd);
  const double inv = 1.0 / static_cast<double>(d);
  for (Eigen::Index mu = 0; mu < d; ++mu)
    for (Eigen::Index nu = 0; nu < d; ++nu)
      for (Eigen::Index b = 0; b < d; ++b)
        for (Eigen::Index a = 0; a < d; ++a) c(mu * d + a, nu * d + b) = inv * s.data(a + d * b, mu + d * nu);
  return {log2_exact(d), std::move(c)};
}

Superoperator choi_to_superop(const ChoiState& c) {
  require_square(c.data, "choi_to_superop");
  const Eigen::Index dd = c.data.rows();
  const Eigen::Index d = Eigen::Index{1} << (log2_exact(dd) / 2);
  if (d * d != dd) throw Error(ErrorCode::kInvalidDimension, "Choi dimension is not 4^n");
  CMatrix s(dd, dd);
  const double scale = static_cast<double>(d);
  for (Eigen::Index mu = 0; mu < d; ++mu)
    for (Eigen::Index nu = 0; nu < d; ++nu)
      for (Eigen::Index b = 0; b < d; ++b)
        for (Eigen::Index a = 0; a < d; ++a) s(a + d * b, mu + d * nu) = scale * c.data(mu * d + a, nu * d + b);
  return {log2_exact(d), std::move(s)};
}

namespace detail {

void chi_to_superop_into(const CMatrix& chi, const OperatorBasis& basis, CMatrix& out) {
  const int d = basis.dim();
  const int count = basis.size();
  if (chi.rows() != count || chi.cols() != count) {
    throw Error(ErrorCode::kInvalidDimension, "chi matrix does not match operator basis size");
  }
  const double s2 = basis.scale() * basis.scale();
  out.setZero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int p = 0; p < count; ++p) {
    for (int r = 0; r < count; ++r) {
      const Complex coeff = chi(p, r) * s2;
      if (coeff == Complex(0.0, 0.0)) continue;
      for (int a2 = 0; a2 < d; ++a2) {
        const Complex left = coeff * std::conj(basis.phase(p, a2));
        const int row_hi = basis.row(p, a2) * d;
        const int col_hi = a2 * d;
        for (int b2 = 0; b2 < d; ++b2) {
          out(row_hi + basis.row(r, b2), col_hi + b2) += left * basis.phase(r, b2);
        }
      }
    }
  }
}

PairLayout pair_layout(QubitPair pair, int n_qubits) {
  validate_pair(pair, n_qubits);
  const int n = n_qubits;
  // Bit order of the two-qubit vec index w = i2 + 4*j2 with i2 = 2*i_k + i_l.
  const std::array<int, 4> pos = {n - pair.l, n - pair.k, 2 * n - pair.l, 2 * n - pair.k};
  PairLayout layout;
  Eigen::Index mask = 0;
  for (int b : pos) mask |= Eigen::Index{1} << b;
  for (int w = 0; w < 16; ++w) {
    Eigen::Index off = 0;
    for (int bit = 0; bit < 4; ++bit) {
      if ((w >> bit) & 1) off |= Eigen::Index{1} << pos[bit];
    }
    layout.offsets[w] = off;
  }
  const Eigen::Index dim = Eigen::Index{1} << (2 * n);
  layout.bases.reserve(static_cast<size_t>(dim / 16));
  for (Eigen::Index v = 0; v < dim; ++v) {
    if ((v & mask) == 0) layout.bases.push_back(v);
  }
  return layout;
}

void apply_pair_left(const CMatrix& s2, const PairLayout& layout, CMatrix& m) {
  using Block = Eigen::Matrix<Complex, 16, Eigen::Dynamic>;
  const Eigen::Matrix<Complex, 16, 16> op = s2;
  const Eigen::Index cols = m.cols();
  Block g(16, cols);
  Block y(16, cols);
  for (Eigen::Index base : layout.bases) {
    for (int w = 0; w < 16; ++w) g.row(w) = m.row(base + layout.offsets[w]);
    y.noalias() = op * g;
    for (int w = 0; w < 16; ++w) m.row(base + layout.offsets[w]) = y.row(w);
  }
}

void apply_pair_right(const CMatrix& s2, const PairLayout& layout, CMatrix& m) {
  using Block = Eigen::Matrix<Complex, Eigen::Dynamic, 16>;
  const Eigen::Matrix<Complex, 16, 16> op = s2;
  const Eigen::Index rows = m.rows();
  Block g(rows, 16);
  Block y(rows, 16);
  for (Eigen::Index base : layout.bases) {
    for (int w = 0; w < 16; ++w) g.col(w) = m.col(base + layout.offsets[w]);
    y.noalias() = g * op;
    for (int w = 0; w < 16; ++w) m.col(base + layout.offsets[w]) = y.col(w);
  }
}

}  // namespace detail

Superoperator chi_to_superop(const ChiMatrix& chi, const OperatorBasis& basis) {
  Superoperator s;
  s.n_qubits = basis.n_qubits();
  detail::chi_to_superop_into(chi.data, basis, s.data);
  return s;
}

ChiMatrix superop_to_chi(const Superoperator& s, const OperatorBasis& basis) {
  const int d = basis.dim();
  const int count = basis.size();
  if (s.data.rows() != static_cast<Eigen::Index>(d) * d || s.data.cols() != s.data.rows()) {
    throw Error(ErrorCode::kInvalidDimension, "superoperator does not match operator basis");
  }
  const double s2 = basis.scale() * basis.scale();
  ChiMatrix chi{CMatrix::Zero(count, count)};
  for (int p = 0; p < count; ++p) {
    for (int r = 0; r < count; ++r) {
      Complex acc(0.0, 0.0);
      for (int a2 = 0; a2 < d; ++a2) {
        const Complex left = basis.phase(p, a2);  // conj(conj(phase))
        const int row_hi = basis.row(p, a2) * d;
        for (int b2 = 0; b2 < d; ++b2) {
          acc += left * std::conj(basis.phase(r, b2)) * s.data(row_hi + basis.row(r, b2), a2 * d + b2);
        }
      }
      chi.data(p, r) = acc * s2;
    }
  }
  return chi;
}

Superoperator compose(const Superoperator& s1, const Superoperator& s2) {
  if (s1.data.rows() != s2.data.rows() || s1.data.cols() != s2.data.cols()) {
    throw Error(ErrorCode::kInvalidDimension, "compose: superoperator dimensions differ");
  }
  return {s1.n_qubits, s1.data * s2.data};
}

Superoperator embed_pair(const Superoperator& s2, QubitPair pair, int n_qubits) {
  if (s2.data.rows() != 16 || s2.data.cols() != 16) {
    throw Error(ErrorCode::kInvalidDimension, "embed_pair expects a two-qubit superoperator");
  }
  const auto layout = detail::pair_layout(pair, n_qubits);
  Superoperator out = Superoperator::identity(n_qubits);
  detail::apply_pair_left(s2.data, layout, out.data);
  return out;
}

ChoiState partial_trace_choi(const ChoiState& c, QubitPair pair) {
  require_square(c.data, "partial_trace_choi");
  const int n = c.n_qubits;
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "partial_trace_choi needs at least two qubits");
  if (c.data.rows() != (Eigen::Index{1} << (2 * n))) {
    throw Error(ErrorCode::kInvalidDimension, "Choi dimension inconsistent with n_qubits");
  }
  validate_pair(pair, n);
  const ReductionIndexer ix(pair, n);
  const Eigen::Index d = Eigen::Index{1} << n;
  ChoiState out{2, CMatrix::Zero(16, 16)};
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 4; ++a)
      for (int nu = 0; nu < 4; ++nu)
        for (int b = 0; b < 4; ++b) {
          Complex acc(0.0, 0.0);
          for (const auto& x : ix.full)
            for (const auto& y : ix.full) acc += c.data(x[mu] * d + y[a], x[nu] * d + y[b]);
          out.data(mu * 4 + a, nu * 4 + b) = acc;
        }
  return out;
}

ChoiState reduced_choi_from_superop(const Superoperator& s, QubitPair pair) {
  const int n = s.n_qubits;
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "reduction needs at least two qubits");
  if (s.data.rows() != (Eigen::Index{1} << (2 * n)) || s.data.cols() != s.data.rows()) {
    throw Error(ErrorCode::kInvalidDimension, "superoperator dimension inconsistent with n_qubits");
  }
  validate_pair(pair, n);
  const ReductionIndexer ix(pair, n);
  const Eigen::Index d = Eigen::Index{1} << n;
  const double inv = 1.0 / static_cast<double>(d);
  ChoiState out{2, CMatrix::Zero(16, 16)};
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu)
      for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
          Complex acc(0.0, 0.0);
          for (const auto& x : ix.full)
            for (const auto& y : ix.full) acc += s.data(y[a] + d * y[b], x[mu] + d * x[nu]);
          out.data(mu * 4 + a, nu * 4 + b) = acc * inv;
        }
  return out;
}

ChoiState reduced_choi_with_spectators(const Superoperator& s, QubitPair pair,
                                       unsigned long long spectator_state) {
  const int n = s.n_qubits;
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "reduction needs at least two qubits");
  validate_pair(pair, n);
  const ReductionIndexer ix(pair, n);
  if (spectator_state >= ix.full.size()) throw Error(ErrorCode::kOutOfRange, "spectator state out of range");
  const auto& x = ix.full[spectator_state];
  const Eigen::Index d = Eigen::Index{1} << n;
  ChoiState out{2, CMatrix::Zero(16, 16)};
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu)
      for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
          Complex acc(0.0, 0.0);
          for (const auto& y : ix.full) acc += s.data(y[a] + d * y[b], x[mu] + d * x[nu]);
          out.data(mu * 4 + a, nu * 4 + b) = 0.25 * acc;
        }
  return out;
}

CMatrix choi_input_marginal(const ChoiState& c) {
  require_square(c.data, "choi_input_marginal");
  const Eigen::Index d = Eigen::Index{1} << (log2_exact(c.data.rows()) / 2);
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index mu = 0; mu < d; ++mu)
    for (Eigen::Index nu = 0; nu < d; ++nu)
      for (Eigen::Index a = 0; a < d; ++a) m(mu, nu) += c.data(mu * d + a, nu * d + a);
  return m;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kInvalidDimension, "trace_distance: dimension mismatch");
  }
  const CMatrix diff = a - b;
  const CMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const ChoiState& a, const ChoiState& b) { return trace_distance(a.data, b.data); }

double min_eigenvalue(const CMatrix& m) {
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return ((u.adjoint() * u) - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool kraus_is_complete(const KrausSet& k, double tol) {
  if (k.ops.empty()) return false;
  const Eigen::Index d = k.ops.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& op : k.ops) {
    if (op.rows() != d || op.cols() != d) return false;
    sum += op.adjoint() * op;
  }
  return (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

bool is_cptp(const ChoiState& c, double psd_tol, double tp_tol) {
  if (!is_hermitian(c.data, 1e-10)) return false;
  if (min_eigenvalue(c.data) < -psd_tol) return false;
  const CMatrix marginal = choi_input_marginal(c);
  const double d = static_cast<double>(marginal.rows());
  return (marginal - CMatrix::Identity(marginal.rows(), marginal.cols()) / d).cwiseAbs().maxCoeff() <= tp_tol;
}

ChiMatrix project_psd_chi(const ChiMatrix& chi) {
  require_square(chi.data, "project_psd_chi");
  const double target_trace = std::sqrt(static_cast<double>(chi.data.rows()));
  const CMatrix herm = 0.5 * (chi.data + chi.data.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  const RVector& lambda = es.eigenvalues();
  double kept = 0.0;
  CMatrix out = CMatrix::Zero(herm.rows(), herm.cols());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) >= 0.0) {
      kept += lambda(i);
      out += lambda(i) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  if (!(kept > 0.0)) {
    throw Error(ErrorCode::kDegenerateInput, "project_psd_chi: no positive eigenvalue to renormalize");
  }
  out *= target_trace / kept;
  return {0.5 * (out + out.adjoint())};
}

RVector cptp_residuals(const ChiMatrix& chi, const OperatorBasis& basis) {
  const int count = basis.size();
  const int d = basis.dim();
  if (chi.data.rows() != count || chi.data.cols() != count) {
    throw Error(ErrorCode::kInvalidDimension, "cptp_residuals: chi does not match basis");
  }
  RVector res(2 + 2 * d * d);
  res(0) = chi.data.trace().real() - static_cast<double>(d);

  const CMatrix herm = 0.5 * (chi.data + chi.data.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  double negative = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < -kNegativeEigenvalueTol) negative += -es.eigenvalues()(i);
  }
  res(1) = negative;

  // sum_p E_p^dag (sum_r chi(p,r) E_r), with the orthonormal scale folded in.
  const double s2 = basis.scale() * basis.scale();
  CMatrix w = CMatrix::Zero(d, d);
  CMatrix inner(d, d);
  for (int p = 0; p < count; ++p) {
    inner.setZero();
    for (int r = 0; r < count; ++r) {
      const Complex coeff = chi.data(p, r);
      if (coeff == Complex(0.0, 0.0)) continue;
      for (int c = 0; c < d; ++c) inner(basis.row(r, c), c) += coeff * basis.phase(r, c);
    }
    // E_p^dag has entry conj(phase) at (c, row(p,c)).
    for (int c = 0; c < d; ++c) {
      const Complex ph = std::conj(basis.phase(p, c));
      w.row(c) += ph * inner.row(basis.row(p, c));
    }
  }
  w *= s2;
  w -= CMatrix::Identity(d, d);
  int idx = 2;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      res(idx++) = w(i, j).real();
      res(idx++) = w(i, j).imag();
    }
  return res;
}

}  // namespace papa
