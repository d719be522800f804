// Copyright 2026 The qcsim Authors
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

/**
 * @file
 * Dense single-array state-vector simulator. No compression, no
 * renormalization; used as the correctness oracle for the sliced engine.
 */

#ifndef QCSIM_REFERENCE_HPP
#define QCSIM_REFERENCE_HPP

#include <cstdint>
#include <vector>

#include "qcsim/circuit.hpp"
#include "qcsim/statevec.hpp"

namespace qcsim {

struct DenseState {
    int num_qubits = 0;
    std::vector<Amplitude> amps;
};

/// |basis_index> as a dense state.
DenseState make_dense_basis(int num_qubits, uint64_t basis_index);

/// Applies one lowered gate action in place.
void apply_action_dense(const GateAction &action,
                        std::vector<Amplitude> &amps);

/// Applies all gates in order with direct strided butterflies. Throws
/// CapacityError when num_qubits exceeds `guard_qubits`.
DenseState ref_run(const Circuit &circuit, DenseState initial,
                   int guard_qubits = 24);

/// |amps[basis_index]|^2.
double success_probability(const DenseState &state, uint64_t basis_index);

} // namespace qcsim

#endif // QCSIM_REFERENCE_HPP
