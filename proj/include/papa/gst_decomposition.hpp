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

// Bootstrapping from characterized two-qubit gate-sets: the ideal reduction of
// an n-qubit gate on each pair is written as a convex mixture of gate-set
// unitaries, and the pair's data is the same mixture of the characterized
// (noisy) gate-set Choi states.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "papa/channel.hpp"
#include "papa/gate_simulator.hpp"
#include "papa/gates.hpp"
#include "papa/tomography.hpp"

namespace papa {

/// Ordered two-qubit ideal gate-set.
struct GateSet {
  std::vector<std::string> labels;
  std::vector<Unitary> gates;

  /// CNOT followed by the 16 Pauli products II, IX, ..., ZZ.
  static GateSet standard();
  int size() const { return static_cast<int>(gates.size()); }
  int index_of(const std::string& label) const;
};

struct ConvexTerm {
  double coefficient = 0.0;
  int gate_index = 0;
};

struct ConvexDecomposition {
  std::vector<ConvexTerm> terms;
  /// Frobenius norm of the Choi-state mismatch left by the fit.
  double residual = 0.0;
};

/// Residual above which a reduction is declared not decomposable.
inline constexpr double kDecompositionResidualTol = 1e-6;

/// Nonnegative least squares on the probability simplex:
/// min ||sum_i c_i Choi(G_i) - target||_F, c >= 0, sum c = 1. Terms with zero
/// weight are dropped. Does not throw on large residuals.
ConvexDecomposition fit_convex_decomposition(const ChoiState& target, const GateSet& gs);

/// Throws kNotDecomposable when the fit residual exceeds
/// kDecompositionResidualTol.
ConvexDecomposition decompose_ideal_reduction(const Unitary& gate, QubitPair pair, const GateSet& gs);
ConvexDecomposition decompose_ideal_reduction(const GateLayer& gate, QubitPair pair, const GateSet& gs);

struct PairCompatibility {
  QubitPair pair;
  double residual = 0.0;
  bool decomposable = false;
};

struct CompatibilityReport {
  bool compatible = false;
  std::vector<PairCompatibility> pairs;

  std::vector<QubitPair> failing_pairs() const;
  std::string summary() const;
};

CompatibilityReport is_papa_gst_compatible(const Unitary& gate, const GateSet& gs);
CompatibilityReport is_papa_gst_compatible(const GateLayer& gate, const GateSet& gs);

/// Simulated characterized gate-set on one pair of an n-qubit register.
struct CharacterizedGateSet {
  QubitPair pair;
  ErrorModel error;
  std::vector<std::string> labels;
  std::map<int, ChoiState> choi;
};

/// Each element is embedded on `pair`, followed by the error model, and
/// reduced back to the pair. Under CRCoherent the Pauli products are perfect
/// and the CNOT runs as the cross-resonance construction with the pair as
/// control and target (n must be 3).
CharacterizedGateSet simulate_gateset(QubitPair pair, int n_qubits, const ErrorModel& err, const GateSet& gs);

/// sum_i c_i sigma_i over the decomposition terms.
ChoiState gst_sigma(const ConvexDecomposition& d, const CharacterizedGateSet& cgs);

/// Pairwise data for `gate` assembled from simulated gate-sets on every pair.
TomographyData gst_tomography(const GateLayer& gate, const ErrorModel& err, const GateSet& gs);

struct ErrorToleranceReport {
  bool tolerable = true;
  std::map<QubitPair, double> trace_distance;
  std::vector<QubitPair> failing_pairs;
  std::string summary() const;
};

/// Compares gst_sigma against the exact reduction of the simulated noisy
/// process on each pair. Pairs differing by more than `tol` in trace distance
/// make the error model unsuitable for gate-set bootstrapping.
ErrorToleranceReport check_gst_error_tolerance(const GateLayer& gate, const ErrorModel& err, const GateSet& gs,
                                               double tol = 1e-6);

}  // namespace papa
