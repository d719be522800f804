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
 * Gate and circuit representation, QFT / Grover builders, and the
 * line-oriented circuit text format.
 *
 * Conventions: qubit 0 is the least-significant bit of a basis index, and
 * CPhase(theta) multiplies the |11> component by exp(i*theta).
 */

#ifndef QCSIM_CIRCUIT_HPP
#define QCSIM_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qcsim/statevec.hpp"

namespace qcsim {

enum class GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    Phase,  // Phase(theta) on one qubit
    CPhase, // controlled Phase(theta)
    CNOT,
    CZ,
    Swap,
    MCZ, // multi-controlled Z: sign flip when every listed qubit is 1
};

struct Gate {
    GateKind kind;
    double theta = 0.0;
    // Kind-specific: {target} for 1-qubit kinds, {control, target} for
    // controlled kinds, {a, b} for Swap, the full qubit list for MCZ.
    std::vector<int> qubits;

    int target() const { return qubits.back(); }
    int control() const { return qubits.front(); }

    static Gate h(int q) { return {GateKind::H, 0.0, {q}}; }
    static Gate x(int q) { return {GateKind::X, 0.0, {q}}; }
    static Gate y(int q) { return {GateKind::Y, 0.0, {q}}; }
    static Gate z(int q) { return {GateKind::Z, 0.0, {q}}; }
    static Gate s(int q) { return {GateKind::S, 0.0, {q}}; }
    static Gate t(int q) { return {GateKind::T, 0.0, {q}}; }
    static Gate phase(double theta, int q) {
        return {GateKind::Phase, theta, {q}};
    }
    static Gate cphase(double theta, int c, int t) {
        return {GateKind::CPhase, theta, {c, t}};
    }
    static Gate cnot(int c, int t) { return {GateKind::CNOT, 0.0, {c, t}}; }
    static Gate cz(int c, int t) { return {GateKind::CZ, 0.0, {c, t}}; }
    static Gate swap(int a, int b) { return {GateKind::Swap, 0.0, {a, b}}; }
    static Gate mcz(std::vector<int> qs) {
        return {GateKind::MCZ, 0.0, std::move(qs)};
    }

    bool operator==(const Gate &other) const = default;
};

struct Circuit {
    int num_qubits = 0;
    std::string name;
    std::vector<Gate> gates;

    size_t gate_count() const { return gates.size(); }
};

/// Checks arities, index ranges and per-gate index distinctness.
void validate_circuit(const Circuit &circuit);

/// Textbook QFT: per qubit (high to low) one H then a CPhase(pi/2^k) ladder
/// from each lower qubit, optionally followed by floor(n/2) reversal swaps.
/// Gate count: n + n(n-1)/2 + (include_swaps ? n/2 : 0).
Circuit build_qft(int num_qubits, bool include_swaps = true);

/// Phase oracle flipping the sign of |marked>: X-conjugated MCZ.
Circuit build_grover_oracle(int num_qubits, uint64_t marked);

/// H on all qubits, then per iteration the phase oracle and the diffusion
/// operator (H X MCZ X H on all qubits).
Circuit build_grover(int num_qubits, uint64_t marked, int iterations);

/// floor((pi/4) * sqrt(2^n)), at least 1.
int grover_optimal_iterations(int num_qubits);

/// Parses the circuit text format; throws ParseError with the line number.
Circuit parse_circuit(const std::string &text);

/// Renders in the same text format; parse_circuit(render_circuit(c))
/// reproduces c's width and gate list.
std::string render_circuit(const Circuit &circuit);

inline size_t gate_count(const Circuit &circuit) {
    return circuit.gate_count();
}

// --- gate algebra shared by the engine and the reference simulator ----------

struct Mat2 {
    Amplitude u00, u01, u10, u11;
};

/// 2x2 matrix of a single-qubit kind (H, X, Y, Z, S, T, Phase).
Mat2 unitary2(GateKind kind, double theta = 0.0);

/// A diagonal gate: multiply amplitude[g] by `factor` iff (g & mask) == mask.
struct DiagonalOp {
    uint64_t mask;
    Amplitude factor;
};

/// A 2x2 butterfly on `target`, restricted to indices where every bit of
/// `control_mask` is set (the mask never includes the target bit).
struct ButterflyOp {
    Mat2 u;
    int target;
    uint64_t control_mask;
};

/// Exchange amplitudes of indices differing in exactly bits a and b.
struct SwapOp {
    int a;
    int b;
};

using GateAction = std::variant<DiagonalOp, ButterflyOp, SwapOp>;

/// Lowers a gate to its index-space action. Both simulation pipelines use
/// this, so phase and bit conventions cannot drift between them.
GateAction gate_action(const Gate &gate);

} // namespace qcsim

#endif // QCSIM_CIRCUIT_HPP
