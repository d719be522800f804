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

#include "qcsim/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcsim/errors.hpp"

namespace qcsim {

namespace {

size_t expected_arity(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::T:
    case GateKind::Phase:
        return 1;
    case GateKind::CPhase:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::Swap:
        return 2;
    case GateKind::MCZ:
        return 0; // variadic, >= 1
    }
    return 0;
}

void validate_gate(const Gate &gate, int num_qubits) {
    size_t arity = expected_arity(gate.kind);
    if (gate.kind == GateKind::MCZ) {
        if (gate.qubits.empty())
            throw std::invalid_argument("mcz needs at least one qubit");
    } else if (gate.qubits.size() != arity) {
        throw std::invalid_argument("wrong qubit count for gate");
    }
    std::set<int> seen;
    for (int q : gate.qubits) {
        if (q < 0 || q >= num_qubits)
            throw std::invalid_argument("qubit index " + std::to_string(q) +
                                        " out of range");
        if (!seen.insert(q).second)
            throw std::invalid_argument("duplicate qubit index in gate");
    }
    if (!std::isfinite(gate.theta))
        throw std::invalid_argument("gate angle must be finite");
}

uint64_t bit(int q) { return uint64_t{1} << q; }

std::string format_angle(double theta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

} // namespace

void validate_circuit(const Circuit &circuit) {
    if (circuit.num_qubits < 1)
        throw std::invalid_argument("circuit needs at least one qubit");
    for (const Gate &gate : circuit.gates)
        validate_gate(gate, circuit.num_qubits);
}

Circuit build_qft(int num_qubits, bool include_swaps) {
    if (num_qubits < 1)
        throw std::invalid_argument("QFT needs at least one qubit");
    Circuit circuit;
    circuit.num_qubits = num_qubits;
    circuit.name = "qft" + std::to_string(num_qubits);
    for (int i = num_qubits - 1; i >= 0; --i) {
        circuit.gates.push_back(Gate::h(i));
        for (int j = i - 1; j >= 0; --j)
            circuit.gates.push_back(Gate::cphase(
                std::numbers::pi / std::ldexp(1.0, i - j), j, i));
    }
    if (include_swaps)
        for (int i = 0; i < num_qubits / 2; ++i)
            circuit.gates.push_back(Gate::swap(i, num_qubits - 1 - i));
    return circuit;
}

Circuit build_grover_oracle(int num_qubits, uint64_t marked) {
    if (num_qubits < 2)
        throw std::invalid_argument("Grover search needs at least two qubits");
    if (marked >= (uint64_t{1} << num_qubits))
        throw std::invalid_argument("marked state out of range");
    Circuit circuit;
    circuit.num_qubits = num_qubits;
    circuit.name = "grover_oracle";
    std::vector<int> all(num_qubits);
    for (int q = 0; q < num_qubits; ++q)
        all[q] = q;
    for (int q = 0; q < num_qubits; ++q)
        if (!(marked & bit(q)))
            circuit.gates.push_back(Gate::x(q));
    circuit.gates.push_back(Gate::mcz(all));
    for (int q = 0; q < num_qubits; ++q)
        if (!(marked & bit(q)))
            circuit.gates.push_back(Gate::x(q));
    return circuit;
}

Circuit build_grover(int num_qubits, uint64_t marked, int iterations) {
    if (num_qubits < 2)
        throw std::invalid_argument("Grover search needs at least two qubits");
    if (marked >= (uint64_t{1} << num_qubits))
        throw std::invalid_argument("marked state out of range");
    if (iterations < 1)
        throw std::invalid_argument("iterations must be at least 1");

    Circuit circuit;
    circuit.num_qubits = num_qubits;
    circuit.name = "grover" + std::to_string(num_qubits);
    std::vector<int> all(num_qubits);
    for (int q = 0; q < num_qubits; ++q)
        all[q] = q;

    for (int q = 0; q < num_qubits; ++q)
        circuit.gates.push_back(Gate::h(q));
    Circuit oracle = build_grover_oracle(num_qubits, marked);
    for (int it = 0; it < iterations; ++it) {
        circuit.gates.insert(circuit.gates.end(), oracle.gates.begin(),
                             oracle.gates.end());
        // Diffusion: inversion about the mean.
        for (int q = 0; q < num_qubits; ++q)
            circuit.gates.push_back(Gate::h(q));
        for (int q = 0; q < num_qubits; ++q)
            circuit.gates.push_back(Gate::x(q));
        circuit.gates.push_back(Gate::mcz(all));
        for (int q = 0; q < num_qubits; ++q)
            circuit.gates.push_back(Gate::x(q));
        for (int q = 0; q < num_qubits; ++q)
            circuit.gates.push_back(Gate::h(q));
    }
    return circuit;
}

int grover_optimal_iterations(int num_qubits) {
    if (num_qubits < 2)
        throw std::invalid_argument("Grover search needs at least two qubits");
    double r = std::floor(std::numbers::pi / 4.0 *
                          std::sqrt(std::ldexp(1.0, num_qubits)));
    return r < 1.0 ? 1 : static_cast<int>(r);
}

namespace {

struct LineParser {
    int line_no;
    std::vector<std::string> fields;

    size_t args() const { return fields.size() - 1; }

    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(line_no, msg);
    }

    void need_args(size_t n) const {
        if (args() != n)
            fail("gate '" + fields[0] + "' expects " + std::to_string(n) +
                 " argument(s), got " + std::to_string(args()));
    }

    int qubit(size_t field, int num_qubits) const {
        const std::string &s = fields[field];
        size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception &) {
            fail("malformed qubit index '" + s + "'");
        }
        if (used != s.size() || v < 0)
            fail("malformed qubit index '" + s + "'");
        if (v >= num_qubits)
            fail("qubit index " + s + " out of range for width " +
                 std::to_string(num_qubits));
        return static_cast<int>(v);
    }

    double angle(size_t field) const {
        const std::string &s = fields[field];
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            fail("malformed angle '" + s + "'");
        }
        if (used != s.size() || !std::isfinite(v))
            fail("malformed angle '" + s + "'");
        return v;
    }
};

} // namespace

Circuit parse_circuit(const std::string &text) {
    Circuit circuit;
    bool have_header = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (size_t hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        LineParser line{line_no, {}};
        std::istringstream fields(raw);
        std::string field;
        while (fields >> field)
            line.fields.push_back(field);
        if (line.fields.empty())
            continue;

        const std::string &op = line.fields[0];
        if (!have_header) {
            if (op != "qubits")
                line.fail("expected 'qubits <n>' header before gates");
            line.need_args(1);
            const std::string &s = line.fields[1];
            size_t used = 0;
            long n = 0;
            try {
                n = std::stol(s, &used);
            } catch (const std::exception &) {
                line.fail("malformed qubit count '" + s + "'");
            }
            if (used != s.size() || n < 1 || n > 62)
                line.fail("qubit count must be in [1, 62]");
            circuit.num_qubits = static_cast<int>(n);
            have_header = true;
            continue;
        }
        if (op == "qubits")
            line.fail("duplicate 'qubits' header");

        int n = circuit.num_qubits;
        Gate gate;
        if (op == "h" || op == "x" || op == "y" || op == "z" || op == "s" ||
            op == "t") {
            line.need_args(1);
            int q = line.qubit(1, n);
            gate = op == "h"   ? Gate::h(q)
                   : op == "x" ? Gate::x(q)
                   : op == "y" ? Gate::y(q)
                   : op == "z" ? Gate::z(q)
                   : op == "s" ? Gate::s(q)
                               : Gate::t(q);
        } else if (op == "p") {
            line.need_args(2);
            gate = Gate::phase(line.angle(1), line.qubit(2, n));
        } else if (op == "cp") {
            line.need_args(3);
            gate = Gate::cphase(line.angle(1), line.qubit(2, n),
                                line.qubit(3, n));
        } else if (op == "cx") {
            line.need_args(2);
            gate = Gate::cnot(line.qubit(1, n), line.qubit(2, n));
        } else if (op == "cz") {
            line.need_args(2);
            gate = Gate::cz(line.qubit(1, n), line.qubit(2, n));
        } else if (op == "swap") {
            line.need_args(2);
            gate = Gate::swap(line.qubit(1, n), line.qubit(2, n));
        } else if (op == "mcz") {
            if (line.args() < 1)
                line.fail("mcz needs at least one qubit");
            std::vector<int> qs;
            for (size_t f = 1; f < line.fields.size(); ++f)
                qs.push_back(line.qubit(f, n));
            gate = Gate::mcz(std::move(qs));
        } else {
            line.fail("unknown gate '" + op + "'");
        }

        try {
            validate_gate(gate, n);
        } catch (const std::invalid_argument &e) {
            line.fail(e.what());
        }
        circuit.gates.push_back(std::move(gate));
    }

    if (!have_header)
        throw ParseError(line_no == 0 ? 1 : line_no,
                         "missing 'qubits <n>' header");
    return circuit;
}

std::string render_circuit(const Circuit &circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.num_qubits << "\n";
    for (const Gate &g : circuit.gates) {
        switch (g.kind) {
        case GateKind::H:
            out << "h " << g.target();
            break;
        case GateKind::X:
            out << "x " << g.target();
            break;
        case GateKind::Y:
            out << "y " << g.target();
            break;
        case GateKind::Z:
            out << "z " << g.target();
            break;
        case GateKind::S:
            out << "s " << g.target();
            break;
        case GateKind::T:
            out << "t " << g.target();
            break;
        case GateKind::Phase:
            out << "p " << format_angle(g.theta) << " " << g.target();
            break;
        case GateKind::CPhase:
            out << "cp " << format_angle(g.theta) << " " << g.control() << " "
                << g.target();
            break;
        case GateKind::CNOT:
            out << "cx " << g.control() << " " << g.target();
            break;
        case GateKind::CZ:
            out << "cz " << g.control() << " " << g.target();
            break;
        case GateKind::Swap:
            out << "swap " << g.qubits[0] << " " << g.qubits[1];
            break;
        case GateKind::MCZ:
            out << "mcz";
            for (int q : g.qubits)
                out << " " << q;
            break;
        }
        out << "\n";
    }
    return out.str();
}

Mat2 unitary2(GateKind kind, double theta) {
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    switch (kind) {
    case GateKind::H:
        return {{inv_sqrt2, 0}, {inv_sqrt2, 0}, {inv_sqrt2, 0},
                {-inv_sqrt2, 0}};
    case GateKind::X:
        return {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    case GateKind::Y:
        return {{0, 0}, {0, -1}, {0, 1}, {0, 0}};
    case GateKind::Z:
        return {{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
    case GateKind::S:
        return {{1, 0}, {0, 0}, {0, 0}, {0, 1}};
    case GateKind::T:
        return {{1, 0}, {0, 0}, {0, 0}, {inv_sqrt2, inv_sqrt2}};
    case GateKind::Phase:
        return {{1, 0},
                {0, 0},
                {0, 0},
                {std::cos(theta), std::sin(theta)}};
    default:
        throw std::invalid_argument("gate kind has no single-qubit matrix");
    }
}

GateAction gate_action(const Gate &gate) {
    switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
        return ButterflyOp{unitary2(gate.kind), gate.target(), 0};
    case GateKind::Z:
        return DiagonalOp{bit(gate.target()), {-1.0, 0.0}};
    case GateKind::S:
        return DiagonalOp{bit(gate.target()), {0.0, 1.0}};
    case GateKind::T:
        return DiagonalOp{bit(gate.target()),
                          {0.7071067811865475244, 0.7071067811865475244}};
    case GateKind::Phase:
        return DiagonalOp{bit(gate.target()),
                          {std::cos(gate.theta), std::sin(gate.theta)}};
    case GateKind::CPhase:
        return DiagonalOp{bit(gate.control()) | bit(gate.target()),
                          {std::cos(gate.theta), std::sin(gate.theta)}};
    case GateKind::CNOT:
        return ButterflyOp{unitary2(GateKind::X), gate.target(),
                           bit(gate.control())};
    case GateKind::CZ:
        return DiagonalOp{bit(gate.control()) | bit(gate.target()),
                          {-1.0, 0.0}};
    case GateKind::Swap:
        return SwapOp{gate.qubits[0], gate.qubits[1]};
    case GateKind::MCZ: {
        uint64_t mask = 0;
        for (int q : gate.qubits)
            mask |= bit(q);
        return DiagonalOp{mask, {-1.0, 0.0}};
    }
    }
    throw std::invalid_argument("unknown gate kind");
}

} // namespace qcsim
