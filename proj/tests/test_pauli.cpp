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

#include "anyonbraid/pauli.hpp"
#include "anyonbraid/rng.hpp"
#include "dense_oracle.hpp"

using namespace anyonbraid;

namespace {

PauliString random_pauli(std::size_t n, Rng& rng, bool allow_imaginary = false) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q)
        p.set_pauli(q, static_cast<Pauli>(rng.next() & 3));
    p.set_phase_exponent(allow_imaginary ? (rng.next() & 3) : (rng.next() & 1) * 2);
    return p;
}

}  // namespace

TEST_CASE("single-site products follow the XZ = -iY convention", "[pauli]") {
    auto X1 = PauliString::single(1, 0, Pauli::X);
    auto Z1 = PauliString::single(1, 0, Pauli::Z);

    auto sq = X1 * X1;
    CHECK(sq.weight() == 0);
    CHECK(sq.phase_exponent() == 0);

    auto xz = X1 * Z1;
    CHECK(xz.pauli(0) == Pauli::Y);
    CHECK(xz.phase_exponent() == 3);  // -i

    auto zx = Z1 * X1;
    CHECK(zx.pauli(0) == Pauli::Y);
    CHECK(zx.phase_exponent() == 1);  // +i
}

TEST_CASE("six-qubit generator product matches the dense matrix product", "[pauli]") {
    auto a2 = PauliString::parse("+X3*X4*X5*X6", 6);
    auto b1 = PauliString::parse("+Z1*Z3*Z4", 6);
    auto prod = a2 * b1;
    // Two X.Z collisions contribute (-i)^2 = -1.
    CHECK(prod.phase_exponent() == 2);
    CHECK(prod.pauli(2) == Pauli::Y);
    CHECK(prod.pauli(3) == Pauli::Y);
    CHECK(prod.pauli(0) == Pauli::Z);

    auto lhs = oracle::mat_mul(oracle::pauli_matrix(a2), oracle::pauli_matrix(b1), oracle::dim(6));
    CHECK(oracle::approx_equal(lhs, oracle::pauli_matrix(prod)));
}

TEST_CASE("products and commutation agree with dense matrices on random pairs", "[pauli]") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.next() % 4;
        auto a = random_pauli(n, rng, true);
        auto b = random_pauli(n, rng, true);
        auto prod = a * b;
        auto d = oracle::dim(n);
        auto ma = oracle::pauli_matrix(a);
        auto mb = oracle::pauli_matrix(b);
        REQUIRE(oracle::approx_equal(oracle::mat_mul(ma, mb, d), oracle::pauli_matrix(prod)));
        auto ab = oracle::mat_mul(ma, mb, d);
        auto ba = oracle::mat_mul(mb, ma, d);
        bool mat_commute = oracle::approx_equal(ab, ba);
        REQUIRE(commutes(a, b) == mat_commute);
    }
}

TEST_CASE("commutation basics", "[pauli]") {
    auto a1 = PauliString::parse("+X1*X2*X3", 6);
    auto b1 = PauliString::parse("+Z1*Z3*Z4", 6);
    CHECK(commutes(a1, b1));  // two shared sites, even overlap
    CHECK_FALSE(commutes(PauliString::single(1, 0, Pauli::X), PauliString::single(1, 0, Pauli::Z)));
    CHECK_THROWS_AS(commutes(PauliString(2), PauliString(3)), input_error);
}

TEST_CASE("multiplication is associative with exact phases", "[pauli]") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next() % 5;
        auto a = random_pauli(n, rng, true);
        auto b = random_pauli(n, rng, true);
        auto c = random_pauli(n, rng, true);
        REQUIRE(((a * b) * c) == (a * (b * c)));
    }
}

TEST_CASE("text form round-trips", "[pauli]") {
    CHECK(PauliString::parse("+X1*X2*X3", 6).str() == "+X1*X2*X3");
    CHECK(PauliString::parse("-Z2", 4).str() == "-Z2");
    CHECK(PauliString::parse("+I", 3).str() == "+I");
    CHECK(PauliString::parse("-i Y2").str() == "-iY2");
    CHECK(PauliString::parse("-iY2").num_qubits() == 2);

    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next() % 6;
        auto p = random_pauli(n, rng, true);
        auto q = PauliString::parse(p.str(), n);
        REQUIRE(p == q);
    }
}

TEST_CASE("parse rejects malformed text", "[pauli]") {
    CHECK_THROWS_AS(PauliString::parse("+Q1"), input_error);
    CHECK_THROWS_AS(PauliString::parse("+X0"), input_error);
    CHECK_THROWS_AS(PauliString::parse("+X1*"), input_error);
    CHECK_THROWS_AS(PauliString::parse("+X1*X1"), input_error);
    CHECK_THROWS_AS(PauliString::parse("+X9", 4), input_error);
}

TEST_CASE("support and word range", "[pauli]") {
    auto p = PauliString::parse("+X1*Z70", 128);
    CHECK(p.support() == std::vector<std::size_t>{0, 69});
    auto [lo, hi] = p.word_range();
    CHECK(lo == 0);
    CHECK(hi == 2);
    CHECK(p.weight() == 2);
}
