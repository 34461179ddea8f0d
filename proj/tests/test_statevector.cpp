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
#include <cmath>
#include <cstdlib>

#include "anyonbraid/statevector.hpp"
#include "anyonbraid/synth.hpp"

using namespace anyonbraid;

namespace {

Circuit random_circuit(std::size_t n, std::size_t len, Rng& rng, bool with_measures) {
    Circuit c;
    c.n = n;
    for (std::size_t k = 0; k < len; ++k) {
        auto q = static_cast<std::uint32_t>(rng.next() % n);
        auto r = static_cast<std::uint32_t>(rng.next() % n);
        if (r == q) r = (r + 1) % static_cast<std::uint32_t>(n);
        switch (rng.next() % (with_measures ? 9 : 8)) {
            case 0: c.push(Gate::h(q)); break;
            case 1: c.push(Gate::s(q)); break;
            case 2: c.push(Gate::sdg(q)); break;
            case 3: c.push(Gate::x(q)); break;
            case 4: c.push(Gate::y(q)); break;
            case 5: c.push(Gate::z(q)); break;
            case 6: if (n > 1) c.push(Gate::cz(q, r)); break;
            case 7: if (n > 1) c.push(Gate::cnot(q, r)); break;
            default: {
                PauliString p(n);
                int weight = 1 + rng.next() % 3;
                for (int w = 0; w < weight; ++w)
                    p.set_pauli(rng.next() % n, static_cast<Pauli>(1 + rng.next() % 3));
                if (rng.next() & 1) p.set_phase_exponent(2);
                if (p.weight() > 0) c.push(Gate::measure(p));
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("hadamard amplitudes and S squared", "[statevector]") {
    StateVector s(1);
    s.apply(Gate::h(0));
    CHECK(std::abs(s.amplitudes()[0] - std::complex<double>(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(s.amplitudes()[1] - std::complex<double>(1 / std::sqrt(2.0), 0)) < 1e-12);
    s.apply(Gate::s(0));
    s.apply(Gate::s(0));
    CHECK(std::abs(s.amplitudes()[1] + std::complex<double>(1 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("qubit 1 is the most significant index bit", "[statevector]") {
    StateVector s(2);
    s.apply(Gate::x(0));  // first qubit
    CHECK(std::abs(s.amplitudes()[2] - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("expectations on basis and plus states", "[statevector]") {
    StateVector zero(1);
    CHECK(zero.expectation(PauliString::parse("+Z1", 1)) == Catch::Approx(1.0));
    StateVector plus(1);
    plus.apply(Gate::h(0));
    CHECK(plus.expectation(PauliString::parse("+Z1", 1)) == Catch::Approx(0.0).margin(1e-12));
    CHECK(plus.expectation(PauliString::parse("+X1", 1)) == Catch::Approx(1.0));
}

TEST_CASE("overlap basics", "[statevector]") {
    StateVector a(2), b(2);
    CHECK(std::abs(sv_overlap(a, a) - std::complex<double>(1, 0)) < 1e-12);
    b.apply(Gate::x(0));
    CHECK(std::abs(sv_overlap(a, b)) < 1e-12);
    CHECK_THROWS_AS(sv_overlap(a, StateVector(3)), input_error);
}

TEST_CASE("norm stays 1 across ten thousand gates", "[statevector]") {
    Rng rng(2);
    StateVector s(10);
    auto c = random_circuit(10, 10000, rng, false);
    for (const auto& g : c.ops) s.apply(g);
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("statevector cap is enforced and env-overridable", "[statevector]") {
    CHECK_THROWS_AS(StateVector(25), input_error);
    setenv("ANYONBRAID_SV_CAP", "8", 1);
    CHECK(StateVector::qubit_cap() == 8);
    CHECK_THROWS_AS(StateVector(9), input_error);
    unsetenv("ANYONBRAID_SV_CAP");
    CHECK(StateVector::qubit_cap() == 20);
}

TEST_CASE("state dump round-trips", "[statevector]") {
    Rng rng(3);
    StateVector s(4);
    auto c = random_circuit(4, 50, rng, false);
    for (const auto& g : c.ops) s.apply(g);
    std::string path = "sv_dump_test.bin";
    s.save(path);
    auto back = StateVector::load(path);
    std::remove(path.c_str());
    REQUIRE(back.num_qubits() == 4);
    CHECK(std::abs(sv_overlap(s, back) - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("measure splits fairly and projects", "[statevector]") {
    Rng rng(5);
    StateVector s(1);
    s.apply(Gate::h(0));
    auto m = s.measure(PauliString::parse("+Z1", 1), rng);
    CHECK_FALSE(m.deterministic);
    CHECK(std::abs(m.prob_plus - 0.5) < 1e-12);
    auto again = s.measure(PauliString::parse("+Z1", 1), rng);
    CHECK(again.deterministic);
    CHECK(again.value == m.value);
}

TEST_CASE("cross_check passes on deterministic and random circuits", "[statevector]") {
    // The 6-qubit ground state prep circuit, then stabilizer measurements.
    std::vector<PauliString> gens = {
        PauliString::parse("+X1*X2*X3", 6),    PauliString::parse("+X3*X4*X5*X6", 6),
        PauliString::parse("+Z1*Z3*Z4", 6),    PauliString::parse("+Z2*Z3*Z5", 6),
        PauliString::parse("+Z4*Z6", 6),       PauliString::parse("+Z5*Z6", 6),
    };
    Circuit c = synthesize_circuit(gens);
    for (const auto& g : gens) c.push(Gate::measure(g));
    auto rep = cross_check(c, {0, 1, 2});
    CHECK(rep.agreed);
    CHECK(rep.measurements == 18);

    Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        auto rc = random_circuit(8, 40, rng, true);
        auto r = cross_check(rc, {rng.next()});
        INFO(r.first_mismatch);
        REQUIRE(r.agreed);
        REQUIRE(r.max_prob_deviation <= 1e-12);
    }
}

TEST_CASE("cross_check rejects circuits beyond the cap", "[statevector]") {
    Circuit c;
    c.push(Gate::h(24));  // 25 qubits
    CHECK_THROWS_AS(cross_check(c, {0}), input_error);
}

TEST_CASE("an injected S-gate sign bug is caught by cross_check", "[statevector]") {
    std::vector<PauliString> gens = {PauliString::parse("+X1*X2", 2),
                                     PauliString::parse("+Z1*Z2", 2)};
    Circuit c = synthesize_circuit(gens);
    c.push(Gate::s(0));
    c.push(Gate::measure(PauliString::parse("+Y1*X2", 2)));
    REQUIRE(cross_check(c, {0}).agreed);
    mutation_hooks().flip_s_phase = true;
    auto rep = cross_check(c, {0});
    mutation_hooks().flip_s_phase = false;
    CHECK_FALSE(rep.agreed);
}
