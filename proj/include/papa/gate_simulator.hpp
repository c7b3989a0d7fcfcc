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

// Simulated "unknown" processes: an ideal gate layer followed by an error
// model, and the pairwise two-qubit tomography an experiment would supply.
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "papa/channel.hpp"
#include "papa/gates.hpp"
#include "papa/tomography.hpp"

namespace papa {

/// X_phi (x) Y_phi (x) X_phi (x) ... after the gate, with
/// X_phi = cos(phi) I + i sin(phi) X.
struct CoherentLocal {
  double phi = 0.0;
};

/// Independent amplitude damping and pure dephasing on every qubit for
/// `duration` seconds.
struct Decoherence {
  double t1 = 50e-6;
  double t2 = 50e-6;
  double duration = 50e-9;
};

/// Cross-resonance CNOT with over-rotation `beta` on the 1-2 interaction and
/// stray ZZ angle `phi_zz` between qubits 2 and 3. Replaces the whole
/// process; only defined on three qubits.
struct CRCoherent {
  double beta = 0.0;
  double phi_zz = 0.0;
};

using ErrorModel = std::variant<CoherentLocal, Decoherence, CRCoherent>;

void validate_error_model(const ErrorModel& err);
std::string error_model_label(const ErrorModel& err);

struct NoisyProcess {
  Superoperator superop;
  GateLayer gate;
  ErrorModel error;
};

// Single-qubit channels with the conventions used by Decoherence.
KrausSet amplitude_damping(double p);
KrausSet phase_damping(double q);
/// Damping probability 1 - exp(-dt/T1) and dephasing probability
/// (1 - exp(-dt/T_phi))/2 with 1/T_phi = 1/T2 - 1/(2 T1).
double damping_probability(const Decoherence& d);
double dephasing_probability(const Decoherence& d);

Unitary coherent_error_unitary(double phi, int n_qubits);

/// Error channel on n qubits for the gate-independent models. Throws
/// kUnsupported for CRCoherent.
Superoperator error_superop(const ErrorModel& err, int n_qubits);

NoisyProcess simulate_noisy_process(const GateLayer& gate, const ErrorModel& err);

/// exp(-i[(pi/2 + beta) ZXI/2 + phi_zz IZZ/2]) on three qubits.
Unitary cr_unitary(double beta, double phi_zz);

/// Single-qubit corrections R_z(-90) on qubit 1 and an X quarter turn on
/// qubit 2 applied after cr_unitary. At beta = phi_zz = 0 this equals
/// CNOT12 (x) I up to a global phase.
Unitary cr_cnot_unitary(double beta, double phi_zz);

/// cr_cnot_unitary with its qubit roles moved: control -> `control`, target
/// -> `target`, idle -> the remaining qubit of a three-qubit register.
Unitary cr_cnot_unitary_on(double beta, double phi_zz, int control, int target);

/// Stray ZZ coupling in Hz corresponding to phi_zz accumulated over
/// `duration`. Labels only.
double zz_coupling_hz(double phi_zz, double duration = 400e-9);

/// Ideal two-qubit QPT of the effective process on `pair` with every other
/// qubit prepared maximally mixed.
ChoiState pairwise_qpt(const NoisyProcess& p, QubitPair pair);

/// Same, with the spectators prepared in one computational basis state.
ChoiState spectator_pairwise_qpt(const NoisyProcess& p, QubitPair pair, std::uint64_t spectator_state);

/// Averages spectator_pairwise_qpt over `n_samples` spectator states drawn
/// uniformly with a generator seeded by `seed`.
ChoiState sampled_pairwise_qpt(const NoisyProcess& p, QubitPair pair, int n_samples, std::uint64_t seed);

/// pairwise_qpt on every pair, or sampled_pairwise_qpt when n_samples > 0.
TomographyData standard_tomography(const NoisyProcess& p, int n_samples = 0, std::uint64_t seed = 0);

}  // namespace papa
