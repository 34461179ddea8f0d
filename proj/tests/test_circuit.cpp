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

#include <catch_amalgamated.hpp>

#include "anyonbraid/circuit.hpp"
#include "anyonbraid/rng.hpp"

using namespace anyonbraid;

TEST_CASE("circuit text format parses and emits 1-based ops", "[circuit]") {
    const std::string text =
        "H 3\n"
        "S 3\n"
        "SDG 1\n"
        "X 4\n"
        "CZ 1 2\n"
        "CNOT 1 2\n"
        "MEASURE +X1*X2*X3\n";
    Circuit c = Circuit::parse(text);
    REQUIRE(c.ops.size() == 7);
    CHECK(c.n == 4);
    CHECK(c.ops[0] == Gate::h(2));
    CHECK(c.ops[4] == Gate::cz(0, 1));
    CHECK(c.ops[6].is_measurement());
    CHECK(c.ops[6].observable->num_qubits() == 4);
    CHECK(c.str() == text);
    CHECK(c.two_qubit_count() == 2);
    CHECK(c.measurement_count() == 1);
}

TEST_CASE("circuit round-trip preserves the op sequence", "[circuit]") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c;
        std::size_t n = 2 + rng.next() % 6;
        // Pin the register size so the round-trip cannot lose trailing qubits.
        c.push(Gate::h(static_cast<std::uint32_t>(n - 1)));
        for (int k = 0; k < 30; ++k) {
            auto q = static_cast<std::uint32_t>(rng.next() % n);
            auto r = static_cast<std::uint32_t>(rng.next() % n);
            switch (rng.next() % 6) {
                case 0: c.push(Gate::h(q)); break;
                case 1: c.push(Gate::s(q)); break;
                case 2: c.push(Gate::sdg(q)); break;
                case 3: c.push(Gate::x(q)); break;
                case 4:
                    if (q != r) c.push(Gate::cz(q, r));
                    break;
                default: {
                    PauliString p(n);
                    p.set_pauli(q, Pauli::Z);
                    p.set_pauli(r, r == q ? Pauli::Z : Pauli::X);
                    if (rng.next() & 1) p.set_phase_exponent(2);
                    c.push(Gate::measure(p));
                }
            }
        }
        Circuit back = Circuit::parse(c.str());
        REQUIRE(back.n == c.n);
        REQUIRE(back.ops == c.ops);
    }
}

TEST_CASE("circuit parse errors", "[circuit]") {
    CHECK_THROWS_AS(Circuit::parse("FLIP 1\n"), input_error);
    CHECK_THROWS_AS(Circuit::parse("H 0\n"), input_error);
    CHECK_THROWS_AS(Circuit::parse("CZ 1 1\n"), input_error);
    CHECK_THROWS_AS(Circuit::parse("H 1 2\n"), input_error);
    CHECK_THROWS_AS(Circuit::parse("MEASURE\n"), input_error);
    CHECK_THROWS_AS(Circuit::parse("MEASURE +iX1\n"), input_error);
    CHECK_THROWS_AS(Circuit::parse("CNOT 1\n"), input_error);
}
