// Copyright 2026 The anyonbraid authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "anyonbraid/errors.hpp"
#include "anyonbraid/pauli.hpp"

namespace anyonbraid {

enum class GateKind { H, S, Sdg, X, Y, Z, CZ, CNOT, MeasurePauli };

/// One circuit operation. Qubit operands are 0-based; MeasurePauli carries a
/// signed Pauli observable (sign must be +1 or -1).
struct Gate {
    GateKind kind;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::optional<PauliString> observable;

    static Gate h(std::uint32_t q) { return {GateKind::H, q, 0, {}}; }
    static Gate s(std::uint32_t q) { return {GateKind::S, q, 0, {}}; }
    static Gate sdg(std::uint32_t q) { return {GateKind::Sdg, q, 0, {}}; }
    static Gate x(std::uint32_t q) { return {GateKind::X, q, 0, {}}; }
    static Gate y(std::uint32_t q) { return {GateKind::Y, q, 0, {}}; }
    static Gate z(std::uint32_t q) { return {GateKind::Z, q, 0, {}}; }
    static Gate cz(std::uint32_t q, std::uint32_t r) { return {GateKind::CZ, q, r, {}}; }
    static Gate cnot(std::uint32_t c, std::uint32_t t) { return {GateKind::CNOT, c, t, {}}; }
    static Gate measure(PauliString p) { return {GateKind::MeasurePauli, 0, 0, std::move(p)}; }

    bool is_measurement() const { return kind == GateKind::MeasurePauli; }
    bool is_two_qubit() const { return kind == GateKind::CZ || kind == GateKind::CNOT; }

    std::string str() const {
        switch (kind) {
            case GateKind::H: return "H " + std::to_string(a + 1);
            case GateKind::S: return "S " + std::to_string(a + 1);
            case GateKind::Sdg: return "SDG " + std::to_string(a + 1);
            case GateKind::X: return "X " + std::to_string(a + 1);
            case GateKind::Y: return "Y " + std::to_string(a + 1);
            case GateKind::Z: return "Z " + std::to_string(a + 1);
            case GateKind::CZ: return "CZ " + std::to_string(a + 1) + " " + std::to_string(b + 1);
            case GateKind::CNOT:
                return "CNOT " + std::to_string(a + 1) + " " + std::to_string(b + 1);
            case GateKind::MeasurePauli: return "MEASURE " + observable->str();
        }
        return {};
    }

    bool operator==(const Gate& o) const {
        return kind == o.kind && a == o.a && b == o.b && observable == o.observable;
    }
};

/// Ordered list of Clifford gates and Pauli measurements on n qubits.
struct Circuit {
    std::size_t n = 0;
    std::vector<Gate> ops;

    void push(Gate g) {
        std::size_t hi = std::max(g.a, g.b) + 1;
        if (g.observable) hi = std::max(hi, g.observable->num_qubits());
        n = std::max(n, hi);
        validate_gate(g, n);
        ops.push_back(std::move(g));
    }

    std::size_t two_qubit_count() const {
        std::size_t c = 0;
        for (const auto& g : ops) c += g.is_two_qubit();
        return c;
    }
    std::size_t measurement_count() const {
        std::size_t c = 0;
        for (const auto& g : ops) c += g.is_measurement();
        return c;
    }

    /// One op per line: `H 3`, `SDG 2`, `CZ 1 2`, `MEASURE +X1*X2*X3`.
    /// Indices are 1-based. The qubit count is the largest index mentioned.
    std::string str() const {
        std::string out;
        for (const auto& g : ops) {
            out += g.str();
            out += '\n';
        }
        return out;
    }

    static Circuit parse(const std::string& text) {
        Circuit c;
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        std::vector<std::pair<std::size_t, std::string>> measures;  // op index, text
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ls(line);
            std::string word;
            if (!(ls >> word)) continue;  // blank line
            if (word == "#") continue;    // comment
            auto bad = [&](const std::string& why) {
                throw input_error("circuit line " + std::to_string(line_no) + ": " + why);
            };
            auto read_qubit = [&]() -> std::uint32_t {
                long long q;
                if (!(ls >> q) || q < 1) bad("expected a 1-based qubit index");
                return static_cast<std::uint32_t>(q - 1);
            };
            if (word == "H" || word == "S" || word == "SDG" || word == "X" || word == "Y" ||
                word == "Z") {
                std::uint32_t q = read_qubit();
                GateKind k = word == "H"   ? GateKind::H
                             : word == "S" ? GateKind::S
                             : word == "SDG" ? GateKind::Sdg
                             : word == "X" ? GateKind::X
                             : word == "Y" ? GateKind::Y
                                           : GateKind::Z;
                c.ops.push_back({k, q, 0, {}});
                c.n = std::max<std::size_t>(c.n, q + 1);
            } else if (word == "CZ" || word == "CNOT") {
                std::uint32_t q = read_qubit(), r = read_qubit();
                if (q == r) bad("two-qubit gate needs distinct operands");
                c.ops.push_back({word == "CZ" ? GateKind::CZ : GateKind::CNOT, q, r, {}});
                c.n = std::max<std::size_t>(c.n, std::max(q, r) + 1);
            } else if (word == "MEASURE") {
                std::string rest;
                std::getline(ls, rest);
                std::size_t s = rest.find_first_not_of(' ');
                if (s == std::string::npos) bad("MEASURE needs an observable");
                rest = rest.substr(s);
                PauliString p = PauliString::parse(rest);  // may throw input_error
                if (!p.hermitian()) bad("measurement sign must be +1 or -1");
                c.n = std::max(c.n, p.num_qubits());
                measures.emplace_back(c.ops.size(), rest);
                c.ops.push_back(Gate::measure(std::move(p)));
            } else {
                bad("unknown op '" + word + "'");
            }
            std::string extra;
            if (ls >> extra) bad("trailing tokens");
        }
        // Re-embed measurement observables on the full register.
        for (auto& [idx, txt] : measures) {
            c.ops[idx].observable = c.ops[idx].observable->embedded(c.n);
        }
        return c;
    }

  private:
    static void validate_gate(const Gate& g, std::size_t n) {
        if (g.a >= n || (g.is_two_qubit() && g.b >= n))
            throw input_error("gate operand out of range");
        if (g.is_two_qubit() && g.a == g.b)
            throw input_error("two-qubit gate needs distinct operands");
        if (g.is_measurement() && !g.observable->hermitian())
            throw input_error("measurement sign must be +1 or -1");
    }
};

}  // namespace anyonbraid
