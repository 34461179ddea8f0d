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

#include "anyonbraid/protocols.hpp"

using namespace anyonbraid;

namespace {

int value_of(const Syndrome& s, const std::string& name) {
    for (const auto& [k, v] : s)
        if (k == name) return v;
    FAIL("no generator named " + name);
    return 0;
}

/// A torus ground state: independent generator subset completed by the two
/// non-contractible Z cycles.
Tableau torus_ground_state(const PlanarCode& code, std::size_t rows, std::size_t cols) {
    std::vector<PauliString> gens;
    for (std::size_t v = 0; v + 1 < code.vertices.size(); ++v)
        gens.push_back(star_operator(code, v));
    for (std::size_t f = 0; f + 1 < code.faces.size(); ++f)
        gens.push_back(boundary_operator(code, f));
    PauliString hz(code.n_edges), vz(code.n_edges);
    for (std::size_t j = 0; j < cols; ++j) hz.set_z(j, true);               // h(0, j)
    for (std::size_t i = 0; i < rows; ++i) vz.set_z(rows * cols + i * cols, true);  // v(i, 0)
    gens.push_back(hz);
    gens.push_back(vz);
    return state_from_generators(gens);
}

}  // namespace

TEST_CASE("ground-state preparation satisfies every generator", "[protocols]") {
    for (const auto& code : {six_qubit_code(), nine_qubit_code()}) {
        for (auto engine : {EngineKind::Tableau, EngineKind::Statevector}) {
            auto s = prepare_ground_state(code, engine);
            CHECK(all_plus(syndrome(s, code)));
        }
    }
    CHECK_THROWS_AS(prepare_ground_state(square_lattice(3, 3, Boundary::Torus),
                                         EngineKind::Tableau),
                    protocol_error);
}

TEST_CASE("e_superposition makes the adjacent stars indeterminate", "[protocols]") {
    auto code = six_qubit_code();
    auto s = prepare_ground_state(code, EngineKind::Tableau);
    e_superposition(s, code, 2);  // edge 3
    auto syn = syndrome(s, code);
    CHECK(value_of(syn, "A1") == 0);
    CHECK(value_of(syn, "A2") == 0);
    for (int f = 1; f <= 4; ++f) CHECK(value_of(syn, "B" + std::to_string(f)) == +1);
    CHECK_THROWS_AS(e_superposition(s, code, 6), input_error);
}

TEST_CASE("e_superposition splits amplitude equally between the branches", "[protocols]") {
    auto code = six_qubit_code();
    auto ground = std::get<StateVector>(prepare_ground_state(code, EngineKind::Statevector));
    auto excited = ground;  // Z3 |phi>
    excited.apply(Gate::z(2));

    auto s = prepare_ground_state(code, EngineKind::Statevector);
    e_superposition(s, code, 2);
    const auto& split = std::get<StateVector>(s);
    CHECK(std::abs(std::abs(sv_overlap(ground, split)) - 1 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(std::abs(sv_overlap(excited, split)) - 1 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("create_m_pair lights the two neighboring faces", "[protocols]") {
    auto code = six_qubit_code();
    auto s = prepare_ground_state(code, EngineKind::Tableau);
    create_m_pair(s, code, 3);  // edge 4 -> B1 and B3
    auto syn = syndrome(s, code);
    CHECK(value_of(syn, "B1") == -1);
    CHECK(value_of(syn, "B3") == -1);
    CHECK(value_of(syn, "B2") == +1);
    CHECK(value_of(syn, "B4") == +1);
    CHECK(value_of(syn, "A1") == +1);
    CHECK(value_of(syn, "A2") == +1);

    create_m_pair(s, code, 3);  // X squared: everything back
    CHECK(all_plus(syndrome(s, code)));
}

TEST_CASE("on a torus an X flips exactly two faces", "[protocols]") {
    auto code = square_lattice(5, 5, Boundary::Torus);
    SimState s = torus_ground_state(code, 5, 5);
    CHECK(all_plus(syndrome(s, code)));
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t e = rng.next() % code.n_edges;
        create_m_pair(s, code, e);
        int lit = 0, a_lit = 0;
        for (const auto& [name, v] : syndrome(s, code)) {
            if (v == -1) (name[0] == 'B' ? lit : a_lit) += 1;
        }
        CHECK(lit == 2);
        CHECK(a_lit == 0);
        create_m_pair(s, code, e);  // undo
    }
}

TEST_CASE("an empty loop leaves the state unchanged", "[protocols]") {
    auto code = six_qubit_code();
    auto s = prepare_ground_state(code, EngineKind::Tableau);
    braid(s, code, Loop{{}, LoopKind::M});
    CHECK(all_plus(syndrome(s, code)));
}

TEST_CASE("the braided six-qubit run returns to the ground state", "[protocols]") {
    auto code = six_qubit_code();
    auto s = prepare_ground_state(code, EngineKind::Tableau);
    e_superposition(s, code, 2);
    create_m_pair(s, code, 3);
    braid(s, code, Loop{{5, 4, 2, 3}, LoopKind::M});
    fuse(s, code, 2, 3);
    CHECK(all_plus(syndrome(s, code)));
}

TEST_CASE("the unbraided control run lands in the excited state", "[protocols]") {
    auto code = six_qubit_code();
    auto s = prepare_ground_state(code, EngineKind::Tableau);
    e_superposition(s, code, 2);
    create_m_pair(s, code, 3);
    fuse(s, code, 2, 3);
    auto syn = syndrome(s, code);
    CHECK(value_of(syn, "A1") == -1);
    CHECK(value_of(syn, "A2") == -1);
    for (int f = 1; f <= 4; ++f) CHECK(value_of(syn, "B" + std::to_string(f)) == +1);
}

TEST_CASE("the braided run has unit overlap with the ground state", "[protocols]") {
    auto code = six_qubit_code();
    auto ground = std::get<StateVector>(prepare_ground_state(code, EngineKind::Statevector));
    auto s = prepare_ground_state(code, EngineKind::Statevector);
    e_superposition(s, code, 2);
    create_m_pair(s, code, 3);
    braid(s, code, Loop{{5, 4, 2, 3}, LoopKind::M});
    fuse(s, code, 2, 3);
    CHECK(std::abs(std::abs(sv_overlap(ground, std::get<StateVector>(s))) - 1.0) < 1e-10);
}

TEST_CASE("braiding flips the relative sign of the excited branch", "[protocols]") {
    auto code = six_qubit_code();
    auto ground = std::get<StateVector>(prepare_ground_state(code, EngineKind::Statevector));
    auto excited = ground;
    excited.apply(Gate::z(2));

    auto s = prepare_ground_state(code, EngineKind::Statevector);
    e_superposition(s, code, 2);
    auto before = std::get<StateVector>(s);
    // Create, drag around the loop, annihilate: the net braiding operator.
    create_m_pair(s, code, 3);
    braid(s, code, Loop{{5, 4, 2, 3}, LoopKind::M});
    create_m_pair(s, code, 3);
    const auto& after = std::get<StateVector>(s);

    auto g_before = sv_overlap(ground, before), g_after = sv_overlap(ground, after);
    auto e_before = sv_overlap(excited, before), e_after = sv_overlap(excited, after);
    CHECK(std::abs(g_after - g_before) < 1e-10);   // ground branch untouched
    CHECK(std::abs(e_after + e_before) < 1e-10);   // excited branch: sign flipped
    CHECK(std::abs(std::abs(e_before) - 1 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("ramsey experiments reproduce the braiding phases", "[protocols]") {
    auto six = six_qubit_code();
    auto r1 = ramsey_experiment(six, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M}, EngineKind::Both);
    CHECK(r1.braiding_phase == -1);
    CHECK(all_plus(r1.final_syndrome));
    CHECK(r1.agreement);

    auto control = ramsey_experiment(six, 2, 3, Loop{{}, LoopKind::M}, EngineKind::Both);
    CHECK(control.braiding_phase == +1);
    CHECK(value_of(control.final_syndrome, "A1") == -1);
    CHECK(value_of(control.final_syndrome, "A2") == -1);
    CHECK(control.agreement);

    auto nine = nine_qubit_code();
    auto small_loop = ramsey_experiment(nine, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M},
                                        EngineKind::Both);
    auto big_loop = ramsey_experiment(nine, 2, 3, Loop{{8, 7, 4, 2, 3, 6}, LoopKind::M},
                                      EngineKind::Both);
    auto trivial_loop = ramsey_experiment(nine, 2, 3, Loop{{8, 7, 5, 6}, LoopKind::M},
                                          EngineKind::Both);
    CHECK(small_loop.braiding_phase == -1);
    CHECK(big_loop.braiding_phase == -1);
    CHECK(trivial_loop.braiding_phase == +1);
    CHECK(small_loop.agreement);
    CHECK(big_loop.agreement);
    CHECK(trivial_loop.agreement);
}

TEST_CASE("ramsey rejects protocol misuse", "[protocols]") {
    auto six = six_qubit_code();
    CHECK_THROWS_AS(ramsey_experiment(six, 2, 3, Loop{{5, 4}, LoopKind::M}, EngineKind::Tableau),
                    protocol_error);  // open loop
    CHECK_THROWS_AS(ramsey_experiment(six, 2, 3, Loop{{0, 2, 3}, LoopKind::E}, EngineKind::Tableau),
                    protocol_error);  // wrong species
    CHECK_THROWS_AS(
        ramsey_experiment(square_lattice(2, 2, Boundary::Torus), 0, 1,
                          Loop{{}, LoopKind::M}, EngineKind::Tableau),
        protocol_error);  // degenerate code
    CHECK_THROWS_AS(ramsey_experiment(six, 9, 3, Loop{{}, LoopKind::M}, EngineKind::Tableau),
                    input_error);
}

TEST_CASE("tableau and statevector reports agree on every small protocol", "[protocols]") {
    auto six = six_qubit_code();
    auto nine = nine_qubit_code();
    struct Case {
        PlanarCode code;
        std::size_t e, m;
        Loop loop;
    };
    std::vector<Case> cases = {
        {six, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M}},
        {six, 2, 3, Loop{{}, LoopKind::M}},
        {nine, 2, 3, Loop{{8, 7, 4, 2, 3, 6}, LoopKind::M}},
        {nine, 2, 3, Loop{{8, 7, 5, 6}, LoopKind::M}},
        {square_lattice(2, 2, Boundary::Planar), 2, 5, Loop{{}, LoopKind::M}},
    };
    for (const auto& c : cases) {
        auto tab = ramsey_experiment(c.code, c.e, c.m, c.loop, EngineKind::Tableau, 7);
        auto sv = ramsey_experiment(c.code, c.e, c.m, c.loop, EngineKind::Statevector, 7);
        auto both = ramsey_experiment(c.code, c.e, c.m, c.loop, EngineKind::Both, 7);
        REQUIRE(both.agreement);
        CHECK(tab.braiding_phase == sv.braiding_phase);
        CHECK(tab.final_syndrome == sv.final_syndrome);
        CHECK(tab.prep_check == sv.prep_check);
        // The reports serialize identically apart from the engine list.
        auto ja = tab.to_json(), jb = sv.to_json();
        ja.erase("engines");
        jb.erase("engines");
        CHECK(ja == jb);
    }
}

TEST_CASE("self statistics are bosonic for both species", "[protocols]") {
    auto six = six_qubit_code();
    // e around e with the loop equal to a face boundary.
    auto e_run = self_statistics_experiment(six, Species::E, 2, Loop{{0, 2, 3}, LoopKind::E},
                                            EngineKind::Both);
    CHECK(e_run.braiding_phase == +1);
    CHECK(e_run.agreement);
    // m around m with the loop equal to a star.
    auto m_run = self_statistics_experiment(six, Species::M, 3, Loop{{2, 3, 4, 5}, LoopKind::M},
                                            EngineKind::Both);
    CHECK(m_run.braiding_phase == +1);
    CHECK(m_run.agreement);

    auto planar = square_lattice(4, 4, Boundary::Planar);
    auto m_planar = self_statistics_experiment(planar, Species::M, 0,
                                               Loop{planar.vertices[7], LoopKind::M});
    CHECK(m_planar.braiding_phase == +1);
    auto e_planar = self_statistics_experiment(planar, Species::E, 0,
                                               Loop{planar.faces[5], LoopKind::E});
    CHECK(e_planar.braiding_phase == +1);

    CHECK_THROWS_AS(self_statistics_experiment(six, Species::E, 2, Loop{{0, 2, 3}, LoopKind::M}),
                    protocol_error);
}

TEST_CASE("the interferometer operator identity holds", "[protocols]") {
    // X4 * (X6 X5 X3 X4) * X4 = A2 exactly, sign included.
    auto code = six_qubit_code();
    auto x4 = PauliString::single(6, 3, Pauli::X);
    auto loop_op = loop_product(code, Loop{{5, 4, 2, 3}, LoopKind::M}).op;
    auto net = x4 * loop_op * x4;
    CHECK(net == star_operator(code, 1));
}

TEST_CASE("winding law on a sample of closed loops", "[protocols]") {
    auto code = square_lattice(4, 4, Boundary::Planar);
    Rng rng(31);
    int checked = 0;
    while (checked < 30) {
        PauliString acc(code.n_edges);
        for (std::size_t v = 0; v < code.vertices.size(); ++v)
            if (rng.next() % 8 == 0) acc = acc * star_operator(code, v);
        Loop loop{{}, LoopKind::M};
        for (std::size_t e = 0; e < code.n_edges; ++e)
            if (acc.x(e)) loop.edges.push_back(static_cast<std::uint32_t>(e));
        std::size_t e_edge = rng.next() % code.n_edges;
        auto rep = ramsey_experiment(code, e_edge, loop.edges.empty() ? 0 : loop.edges[0], loop,
                                     EngineKind::Tableau);
        bool odd_at_e = acc.x(e_edge);
        REQUIRE(rep.braiding_phase == (odd_at_e ? -1 : +1));
        // Equivalent statement: the loop product anticommutes with Z on the e edge.
        auto z_e = PauliString::single(code.n_edges, e_edge, Pauli::Z);
        REQUIRE(commutes(acc, z_e) != odd_at_e);
        ++checked;
    }
}

TEST_CASE("the phase depends only on the loop topology", "[protocols]") {
    auto code = square_lattice(5, 5, Boundary::Planar);
    Rng rng(47);
    for (int pair = 0; pair < 100; ++pair) {
        std::size_t e_edge = rng.next() % code.n_edges;
        // First loop: random star sum.
        PauliString acc(code.n_edges);
        for (std::size_t v = 0; v < code.vertices.size(); ++v)
            if (rng.next() % 6 == 0) acc = acc * star_operator(code, v);
        // Second loop: deform by stars whose support avoids the e edge.
        PauliString acc2 = acc;
        for (std::size_t v = 0; v < code.vertices.size(); ++v) {
            if (rng.next() % 4 != 0) continue;
            auto star = star_operator(code, v);
            if (star.x(e_edge)) continue;
            acc2 = acc2 * star;
        }
        auto to_loop = [&](const PauliString& p) {
            Loop loop{{}, LoopKind::M};
            for (std::size_t e = 0; e < code.n_edges; ++e)
                if (p.x(e)) loop.edges.push_back(static_cast<std::uint32_t>(e));
            return loop;
        };
        auto r1 = ramsey_experiment(code, e_edge, 0, to_loop(acc), EngineKind::Tableau);
        auto r2 = ramsey_experiment(code, e_edge, 0, to_loop(acc2), EngineKind::Tableau);
        REQUIRE(r1.braiding_phase == r2.braiding_phase);
    }
}

TEST_CASE("trace records per-step syndromes", "[protocols]") {
    auto code = six_qubit_code();
    auto rep = ramsey_experiment(code, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M}, EngineKind::Tableau,
                                 0, true);
    REQUIRE(rep.trace.size() == 8);  // S, X, four loop steps, X, S
    CHECK(rep.trace[0].op == "S 3");
    // After creating the m pair, its two faces are lit.
    CHECK(value_of(rep.trace[1].syndrome, "B1") == -1);
    CHECK(value_of(rep.trace[1].syndrome, "B3") == -1);
    // Mid-braid the m particle sits elsewhere; at the end all faces are dark.
    CHECK(all_plus(rep.final_syndrome));
    CHECK(rep.gate_log.size() == 8);
}

TEST_CASE("ramsey circuits cross-check between engines", "[protocols]") {
    auto six = six_qubit_code();
    auto c = ramsey_circuit(six, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M});
    auto rep = cross_check(c, {0, 1, 2, 3, 4});
    INFO(rep.first_mismatch);
    CHECK(rep.agreed);
}
