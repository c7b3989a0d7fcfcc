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

#include "papa/gate_simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace papa {

namespace {

bool finite(double x) { return std::isfinite(x); }

CMatrix rotation(Pauli axis, double half_angle) {
  // exp(-i half_angle P) = cos I - i sin P
  const Complex i(0.0, 1.0);
  return std::cos(half_angle) * CMatrix::Identity(2, 2) - i * std::sin(half_angle) * pauli_matrix(axis);
}

Superoperator single_qubit_channel_on_all(const KrausSet& k, int n_qubits) {
  Superoperator s = Superoperator::identity(n_qubits);
  for (int q = 1; q <= n_qubits; ++q) {
    KrausSet embedded;
    for (const auto& op : k.ops) embedded.ops.push_back(embed_single(op, q, n_qubits));
    s = compose(kraus_to_superop(embedded), s);
  }
  return s;
}

// Permutation matrix sending qubit j of the input register to perm[j-1].
CMatrix qubit_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix p = CMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = 0;
    for (int j = 1; j <= n; ++j) {
      const Eigen::Index bit = (col >> (n - j)) & 1;
      row |= bit << (n - perm[j - 1]);
    }
    p(row, col) = 1.0;
  }
  return p;
}

}  // namespace

void validate_error_model(const ErrorModel& err) {
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CoherentLocal>) {
          if (!finite(e.phi)) throw Error(ErrorCode::kInvalidArgument, "coherent error angle must be finite");
        } else if constexpr (std::is_same_v<T, Decoherence>) {
          if (!(e.t1 > 0.0) || !(e.t2 > 0.0) || !finite(e.t1) || !finite(e.t2)) {
            throw Error(ErrorCode::kInvalidArgument, "decoherence times must be positive and finite");
          }
          if (e.t2 > 2.0 * e.t1) throw Error(ErrorCode::kInvalidArgument, "decoherence requires t2 <= 2 t1");
          if (!(e.duration >= 0.0) || !finite(e.duration)) {
            throw Error(ErrorCode::kInvalidArgument, "decoherence duration must be nonnegative");
          }
        } else {
          if (!finite(e.beta) || !finite(e.phi_zz)) {
            throw Error(ErrorCode::kInvalidArgument, "cross-resonance error angles must be finite");
          }
        }
      },
      err);
}

std::string error_model_label(const ErrorModel& err) {
  std::ostringstream os;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CoherentLocal>) {
          os << "coherent(phi=" << e.phi << ")";
        } else if constexpr (std::is_same_v<T, Decoherence>) {
          os << "decoherence(t1=" << e.t1 * 1e6 << "us,t2=" << e.t2 * 1e6 << "us,dt=" << e.duration * 1e9 << "ns)";
        } else {
          os << "cr(beta=" << e.beta << ",phi_zz=" << e.phi_zz << ")";
        }
      },
      err);
  return os.str();
}

KrausSet amplitude_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "damping probability must lie in [0, 1]");
  CMatrix k0 = CMatrix::Zero(2, 2);
  CMatrix k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  k1(0, 1) = std::sqrt(p);
  return {{k0, k1}};
}

KrausSet phase_damping(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "dephasing probability must lie in [0, 1]");
  return {{std::sqrt(1.0 - q) * CMatrix::Identity(2, 2), std::sqrt(q) * pauli_matrix(Pauli::Z)}};
}

double damping_probability(const Decoherence& d) { return -std::expm1(-d.duration / d.t1); }

double dephasing_probability(const Decoherence& d) {
  const double rate = 1.0 / d.t2 - 1.0 / (2.0 * d.t1);
  if (rate <= 0.0) return 0.0;
  return -0.5 * std::expm1(-d.duration * rate);
}

Unitary coherent_error_unitary(double phi, int n_qubits) {
  const Complex i(0.0, 1.0);
  CMatrix u = CMatrix::Identity(1, 1);
  for (int q = 1; q <= n_qubits; ++q) {
    const Pauli axis = (q % 2 == 1) ? Pauli::X : Pauli::Y;
    u = kron(u, std::cos(phi) * CMatrix::Identity(2, 2) + i * std::sin(phi) * pauli_matrix(axis));
  }
  return {u};
}

Superoperator error_superop(const ErrorModel& err, int n_qubits) {
  validate_error_model(err);
  if (const auto* c = std::get_if<CoherentLocal>(&err)) {
    return unitary_to_superop(coherent_error_unitary(c->phi, n_qubits));
  }
  if (const auto* d = std::get_if<Decoherence>(&err)) {
    const Superoperator ad = single_qubit_channel_on_all(amplitude_damping(damping_probability(*d)), n_qubits);
    const Superoperator pd = single_qubit_channel_on_all(phase_damping(dephasing_probability(*d)), n_qubits);
    return compose(pd, ad);
  }
  throw Error(ErrorCode::kUnsupported, "cross-resonance error has no gate-independent error channel");
}

NoisyProcess simulate_noisy_process(const GateLayer& gate, const ErrorModel& err) {
  gate.validate();
  validate_error_model(err);
  NoisyProcess p{{}, gate, err};
  if (const auto* cr = std::get_if<CRCoherent>(&err)) {
    if (gate.n_qubits != 3) throw Error(ErrorCode::kUnsupported, "cross-resonance error is defined on three qubits only");
    p.superop = unitary_to_superop(cr_cnot_unitary(cr->beta, cr->phi_zz));
    return p;
  }
  p.superop = compose(error_superop(err, gate.n_qubits), unitary_to_superop(layer_unitary(gate)));
  return p;
}

Unitary cr_unitary(double beta, double phi_zz) {
  const CMatrix zxi = kron(kron(pauli_matrix(Pauli::Z), pauli_matrix(Pauli::X)), pauli_matrix(Pauli::I));
  const CMatrix izz = kron(kron(pauli_matrix(Pauli::I), pauli_matrix(Pauli::Z)), pauli_matrix(Pauli::Z));
  const CMatrix h = (std::numbers::pi / 2.0 + beta) * zxi / 2.0 + phi_zz * izz / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Complex i(0.0, 1.0);
  CVector phases(8);
  for (int j = 0; j < 8; ++j) phases(j) = std::exp(-i * es.eigenvalues()(j));
  return {es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
}

Unitary cr_cnot_unitary(double beta, double phi_zz) {
  const double quarter = std::numbers::pi / 4.0;
  const CMatrix z_minus_90 = embed_single(rotation(Pauli::Z, -quarter), 1, 3);
  const CMatrix x_90 = embed_single(rotation(Pauli::X, -quarter), 2, 3);
  return {z_minus_90 * x_90 * cr_unitary(beta, phi_zz).data};
}

Unitary cr_cnot_unitary_on(double beta, double phi_zz, int control, int target) {
  if (control < 1 || control > 3 || target < 1 || target > 3 || control == target) {
    throw Error(ErrorCode::kOutOfRange, "cross-resonance roles must be distinct qubits of a three-qubit register");
  }
  const int idle = 6 - control - target;
  const CMatrix p = qubit_permutation({control, target, idle});
  return {p * cr_cnot_unitary(beta, phi_zz).data * p.adjoint()};
}

double zz_coupling_hz(double phi_zz, double duration) { return phi_zz / duration; }

ChoiState pairwise_qpt(const NoisyProcess& p, QubitPair pair) {
  return partial_trace_choi(superop_to_choi(p.superop), pair);
}

ChoiState spectator_pairwise_qpt(const NoisyProcess& p, QubitPair pair, std::uint64_t spectator_state) {
  return reduced_choi_with_spectators(p.superop, pair, spectator_state);
}

ChoiState sampled_pairwise_qpt(const NoisyProcess& p, QubitPair pair, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorCode::kInvalidArgument, "sampled_pairwise_qpt needs at least one sample");
  validate_pair(pair, p.superop.n_qubits);
  const std::uint64_t n_states = std::uint64_t{1} << (p.superop.n_qubits - 2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, n_states - 1);
  ChoiState acc{2, CMatrix::Zero(16, 16)};
  for (int s = 0; s < n_samples; ++s) acc.data += spectator_pairwise_qpt(p, pair, dist(rng)).data;
  acc.data /= static_cast<double>(n_samples);
  return acc;
}

TomographyData standard_tomography(const NoisyProcess& p, int n_samples, std::uint64_t seed) {
  TomographyData data;
  data.n_qubits = p.superop.n_qubits;
  std::uint64_t pair_seed = seed;
  for (QubitPair pair : all_pairs(data.n_qubits)) {
    data.sigma[pair] = n_samples > 0 ? sampled_pairwise_qpt(p, pair, n_samples, pair_seed++) : pairwise_qpt(p, pair);
  }
  return data;
}

}  // namespace papa
