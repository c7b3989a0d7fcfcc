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

// Quantum state and channel representations.
//
// Conventions used throughout the library:
//  * Qubit 1 is the most significant tensor factor, so X (x) I acts on qubit 1.
//  * Density matrices are vectorized by column stacking: vec(rho)[i + d*j] =
//    rho(i, j). Under this convention vec(A rho B) = (B^T (x) A) vec(rho).
//  * Choi states carry the 1/2^n prefactor and are ordered input (x) output,
//    rho_E = 2^-n sum_{mu,nu} |mu><nu| (x) E(|mu><nu|).
//  * Chi matrices use the Hilbert-Schmidt orthonormal Pauli basis
//    E_p / sqrt(2^n), so a CPTP chi is PSD with trace 2^n (4 for two qubits).
#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "papa/error.hpp"

namespace papa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Two distinct qubits, 1-based, with k < l.
struct QubitPair {
  int k = 1;
  int l = 2;

  auto operator<=>(const QubitPair&) const = default;
  std::string label() const;
};

/// All N(N-1)/2 pairs in lexicographic order (1,2), (1,3), ..., (N-1,N).
std::vector<QubitPair> all_pairs(int n_qubits);

/// Throws kOutOfRange unless 1 <= k < l <= n_qubits.
void validate_pair(QubitPair pair, int n_qubits);

struct DensityMatrix {
  CMatrix data;
};

struct Unitary {
  CMatrix data;
  int dim() const { return static_cast<int>(data.rows()); }
};

struct KrausSet {
  std::vector<CMatrix> ops;
};

/// Matrix of size 4^n x 4^n acting on column-stacked density matrices.
struct Superoperator {
  int n_qubits = 0;
  CMatrix data;

  static Superoperator identity(int n_qubits);
};

struct ChoiState {
  int n_qubits = 0;
  CMatrix data;
};

/// Process matrix over the two-qubit Pauli-product basis (16 x 16).
struct ChiMatrix {
  CMatrix data;
};

/// Pauli-product operator basis in lexicographic order (II, IX, IY, IZ, XI,
/// ...). Elements are raw Pauli products with Tr(E_i^dag E_j) = 2^n delta_ij.
///
/// Every element is a monomial matrix (one nonzero per column); the chi maps
/// below exploit that structure.
class OperatorBasis {
 public:
  static OperatorBasis pauli(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const CMatrix& element(int i) const { return elements_.at(i); }
  std::string label(int i) const;
  int index_of(const std::string& label) const;

  /// Scale 2^(-n/2) that turns an element into its orthonormal counterpart.
  double scale() const { return scale_; }

  /// Monomial form of element i: column c has its single nonzero in row
  /// row(i, c) with value phase(i, c).
  int row(int i, int c) const { return rows_[i * dim_ + c]; }
  Complex phase(int i, int c) const { return phases_[i * dim_ + c]; }

 private:
  int n_qubits_ = 0;
  int dim_ = 1;
  double scale_ = 1.0;
  std::vector<CMatrix> elements_;
  std::vector<int> rows_;
  std::vector<Complex> phases_;
};

/// Tensor product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// ---------------------------------------------------------------------------
// Representation changes
// ---------------------------------------------------------------------------

Superoperator unitary_to_superop(const Unitary& u);
Superoperator kraus_to_superop(const KrausSet& kraus);
ChoiState superop_to_choi(const Superoperator& s);
Superoperator choi_to_superop(const ChoiState& c);

/// E(rho) = sum_{p,r} chi(p,r) E_r rho E_p^dag over the orthonormal basis.
Superoperator chi_to_superop(const ChiMatrix& chi, const OperatorBasis& basis);
ChiMatrix superop_to_chi(const Superoperator& s, const OperatorBasis& basis);

/// s1 * s2, i.e. s2 is applied first.
Superoperator compose(const Superoperator& s1, const Superoperator& s2);

/// Lifts a two-qubit superoperator onto `pair` of an n-qubit register. The
/// first tensor factor of `s2` acts on pair.k.
Superoperator embed_pair(const Superoperator& s2, QubitPair pair, int n_qubits);

/// Traces every qubit outside `pair` from both the input and the output half
/// of an n-qubit Choi state. Trace is preserved.
ChoiState partial_trace_choi(const ChoiState& c, QubitPair pair);

/// The same reduction computed directly from the superoperator, without
/// materializing the n-qubit Choi state.
ChoiState reduced_choi_from_superop(const Superoperator& s, QubitPair pair);

/// Reduction with the spectators prepared in the computational basis state
/// `spectator_state` instead of the maximally mixed state. Bit t (from the
/// most significant) of `spectator_state` is the t-th spectator in increasing
/// qubit order.
ChoiState reduced_choi_with_spectators(const Superoperator& s, QubitPair pair,
                                       unsigned long long spectator_state);

/// Traces the output half of a Choi state; equals I/2^n for TP channels.
CMatrix choi_input_marginal(const ChoiState& c);

// ---------------------------------------------------------------------------
// Metrics and validity
// ---------------------------------------------------------------------------

/// Half the sum of absolute eigenvalues of the Hermitian difference a - b.
double trace_distance(const CMatrix& a, const CMatrix& b);
double trace_distance(const ChoiState& a, const ChoiState& b);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);

bool is_unitary(const CMatrix& u, double tol = 1e-12);
bool is_hermitian(const CMatrix& m, double tol = 1e-12);
bool kraus_is_complete(const KrausSet& k, double tol = 1e-9);

/// Choi PSD to -psd_tol and input marginal equal to I/2^n within tp_tol.
bool is_cptp(const ChoiState& c, double psd_tol = 1e-10, double tp_tol = 1e-10);

/// Eigenvalue truncation followed by renormalization to trace 4. Throws
/// kDegenerateInput when no eigenvalue is nonnegative.
ChiMatrix project_psd_chi(const ChiMatrix& chi);

/// Eigenvalues below this count as negative in cptp_residuals.
inline constexpr double kNegativeEigenvalueTol = 1e-12;

/// Number of entries produced by cptp_residuals for a two-qubit chi.
inline constexpr int kCptpResidualCount = 2 + 2 * 16;

/// [Tr(chi) - 4, sum of |negative eigenvalues|, Re/Im of each entry of
/// sum_{p,r} chi(p,r) E_p^dag E_r - I (row-major, real part first)].
RVector cptp_residuals(const ChiMatrix& chi, const OperatorBasis& basis);

// ---------------------------------------------------------------------------
// Low-level kernels shared by the model and the solver.
// ---------------------------------------------------------------------------
namespace detail {

/// Row offsets of the 16 two-qubit superoperator indices inside an n-qubit
/// superoperator index space, and the list of base offsets it tiles.
struct PairLayout {
  std::array<Eigen::Index, 16> offsets{};
  std::vector<Eigen::Index> bases;
};

PairLayout pair_layout(QubitPair pair, int n_qubits);

/// m <- embed(s2) * m
void apply_pair_left(const CMatrix& s2, const PairLayout& layout, CMatrix& m);
/// m <- m * embed(s2)
void apply_pair_right(const CMatrix& s2, const PairLayout& layout, CMatrix& m);

/// chi -> two-qubit superoperator, written into `out` (resized as needed).
void chi_to_superop_into(const CMatrix& chi, const OperatorBasis& basis, CMatrix& out);

}  // namespace detail

}  // namespace papa
