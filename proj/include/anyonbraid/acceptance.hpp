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

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "anyonbraid/cluster.hpp"
#include "anyonbraid/protocols.hpp"

namespace anyonbraid {

struct CriterionResult {
    std::string id;
    std::string name;
    bool passed = false;
    double millis = 0.0;
    std::string detail;
};

struct BenchResult {
    std::size_t lattice = 0;
    std::size_t n_edges = 0;
    double prep_ms = 0.0;
    double ramsey_ms = 0.0;
    double total_ms = 0.0;
    int braiding_phase = 0;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["lattice"] = lattice;
        j["n_edges"] = n_edges;
        j["prep_ms"] = prep_ms;
        j["ramsey_ms"] = ramsey_ms;
        j["total_ms"] = total_ms;
        j["braiding_phase"] = braiding_phase;
        return j;
    }
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
    void note(const std::string& text) {
        if (ok) detail = text;
    }
};

/// All GF(2) sums of the given supports with weight at most max_weight,
/// enumerated by Gray code so each step XORs a single support in.
/// Returns the loops as edge lists (the empty loop included).
inline std::vector<std::vector<std::uint32_t>> span_elements_up_to_weight(
    const std::vector<PauliString>& supports, bool x_part, std::size_t max_weight,
    std::size_t n_edges) {
    std::vector<std::vector<std::uint64_t>> masks;
    std::size_t words = (n_edges + 63) / 64;
    for (const auto& p : supports) {
        std::vector<std::uint64_t> m(words, 0);
        for (std::size_t e = 0; e < n_edges; ++e)
            if (x_part ? p.x(e) : p.z(e)) m[e >> 6] |= 1ULL << (e & 63);
        masks.push_back(std::move(m));
    }
    std::vector<std::uint64_t> acc(words, 0);
    std::vector<std::vector<std::uint32_t>> out;
    auto harvest = [&]() {
        std::size_t w = 0;
        for (auto word : acc) w += std::popcount(word);
        if (w > max_weight) return;
        std::vector<std::uint32_t> edges;
        for (std::size_t e = 0; e < n_edges; ++e)
            if ((acc[e >> 6] >> (e & 63)) & 1ULL) edges.push_back(static_cast<std::uint32_t>(e));
        out.push_back(std::move(edges));
    };
    harvest();
    std::uint64_t count = 1ULL << supports.size();
    for (std::uint64_t g = 1; g < count; ++g) {
        std::size_t flip = std::countr_zero(g);  // Gray code: toggle one support
        for (std::size_t k = 0; k < words; ++k) acc[k] ^= masks[flip][k];
        harvest();
    }
    return out;
}

}  // namespace detail

/// Ground-state synthesis plus one full Ramsey run on the LxL planar code.
inline BenchResult run_bench(std::size_t lattice, std::uint64_t seed = 0) {
    if (lattice == 0) throw input_error("bench needs a lattice size >= 2");
    (void)seed;  // the protocol is deterministic; kept for interface symmetry
    auto code = square_lattice(lattice, lattice, Boundary::Planar);
    BenchResult res;
    res.lattice = lattice;
    res.n_edges = code.n_edges;

    auto t0 = std::chrono::steady_clock::now();
    auto state = prepare_ground_state(code, EngineKind::Tableau);
    res.prep_ms = detail::ms_since(t0);

    // Braid around the center vertex with the e edge on the loop: phase -1.
    std::size_t center = (lattice / 2) * (lattice + 1) + lattice / 2;
    Loop loop{code.vertices[center], LoopKind::M};
    std::size_t e_edge = loop.edges[0], m_edge = loop.edges[1];
    auto t1 = std::chrono::steady_clock::now();
    auto rep = ramsey_experiment(code, e_edge, m_edge, loop, EngineKind::Tableau, seed);
    res.ramsey_ms = detail::ms_since(t1);
    res.total_ms = detail::ms_since(t0);
    res.braiding_phase = rep.braiding_phase;
    return res;
}

namespace detail {

inline CriterionResult c1_six_qubit_braiding() {
    Check c;
    auto code = six_qubit_code();
    Loop loop{{5, 4, 2, 3}, LoopKind::M};
    double best = 1e12;
    ProtocolReport rep;
    for (int k = 0; k < 3; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        rep = ramsey_experiment(code, 2, 3, loop, EngineKind::Tableau);
        best = std::min(best, ms_since(t0));
    }
    c.expect(rep.braiding_phase == -1, "braided run must report phase -1");
    c.expect(all_plus(rep.final_syndrome), "braided run must end in the ground state");
    auto control = ramsey_experiment(code, 2, 3, Loop{{}, LoopKind::M}, EngineKind::Tableau);
    c.expect(control.braiding_phase == +1, "control run must report phase +1");
    for (const auto& [name, v] : control.final_syndrome) {
        bool lit = name == "A1" || name == "A2";
        c.expect(v == (lit ? -1 : +1), "control run must end in the e-pair state (" + name + ")");
    }
    c.expect(best < 1.0, "runtime budget 1 ms exceeded");
    c.note("phase -1 braided, +1 control; best run " + std::to_string(best) + " ms");
    return {"c1", "six-qubit braiding phase", c.ok, best, c.detail};
}

inline CriterionResult c2_nine_qubit_topology() {
    Check c;
    auto code = nine_qubit_code();
    struct Case {
        Loop loop;
        int want;
    };
    std::vector<Case> cases = {{Loop{{5, 4, 2, 3}, LoopKind::M}, -1},
                               {Loop{{8, 7, 4, 2, 3, 6}, LoopKind::M}, -1},
                               {Loop{{8, 7, 5, 6}, LoopKind::M}, +1}};
    double worst = 0;
    for (const auto& k : cases) {
        double best = 1e12;
        ProtocolReport rep;
        for (int t = 0; t < 3; ++t) {
            auto t0 = std::chrono::steady_clock::now();
            rep = ramsey_experiment(code, 2, 3, k.loop, EngineKind::Tableau);
            best = std::min(best, ms_since(t0));
        }
        worst = std::max(worst, best);
        c.expect(rep.braiding_phase == k.want,
                 "loop of length " + std::to_string(k.loop.edges.size()) + " must give " +
                     std::to_string(k.want));
        c.expect(best < 1.0, "runtime budget 1 ms exceeded");
    }
    c.note("phases depend only on whether the loop encloses the e particle");
    return {"c2", "nine-qubit loop topology", c.ok, worst, c.detail};
}

inline CriterionResult c3_ground_state_certification() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<PlanarCode> codes = {six_qubit_code(), nine_qubit_code()};
    for (std::size_t l = 2; l <= 10; ++l) codes.push_back(square_lattice(l, l, Boundary::Planar));
    std::size_t states = 0;
    for (const auto& code : codes) {
        auto s = prepare_ground_state(code, EngineKind::Tableau);
        c.expect(all_plus(syndrome(s, code)),
                 "some generator of '" + code.name + "' is not +1 after preparation");
        ++states;
    }
    double ms = ms_since(t0);
    c.expect(ms < 1000.0, "runtime budget 1 s exceeded");
    c.note(std::to_string(states) + " codes certified, every A_v and B_f at +1");
    return {"c3", "ground-state certification", c.ok, ms, c.detail};
}

inline CriterionResult c4_cluster_route() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t dim : {2, 3}) {
        auto pat = build_cluster_pattern(dim, dim);
        auto gens = code_generators(pat.code);
        std::vector<PauliString> reference;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto prep = prepare_via_cluster(pat, seed);
            for (const auto& g : gens)
                c.expect(prep.state.expectation(g) == +1,
                         "cluster-prepared state has a non-+1 generator (seed " +
                             std::to_string(seed) + ")");
            auto canon = canonical_stabilizers(prep.state);
            if (seed == 0) reference = canon;
            else c.expect(canon == reference,
                          "corrected states differ across seeds (seed " + std::to_string(seed) +
                              ")");
        }
    }
    double ms = ms_since(t0);
    c.expect(ms < 5000.0, "runtime budget 5 s exceeded");
    c.note("2x2 and 3x3 patterns, 100 seeds each: all +1 and outcome-independent");
    return {"c4", "cluster-state preparation route", c.ok, ms, c.detail};
}

/// Closed m-loops are exactly the star span, and closed e-loops the boundary
/// span, when the generator counts saturate the commutation constraints.
/// Verified by rank, then the span is enumerated.
inline bool loop_spaces_saturate(const PlanarCode& code, Check& c) {
    gf2::BitMatrix mx(code.vertices.size(), code.n_edges);
    for (std::size_t v = 0; v < code.vertices.size(); ++v)
        for (auto e : code.vertices[v]) mx.set(v, e, !mx.get(v, e));
    gf2::BitMatrix mz(code.faces.size(), code.n_edges);
    for (std::size_t f = 0; f < code.faces.size(); ++f)
        for (auto e : code.faces[f]) mz.set(f, e, !mz.get(f, e));
    std::size_t rx = mx.rank(), rz = mz.rank();
    bool ok = rx == code.vertices.size() && rz == code.faces.size() &&
              rx + rz == code.n_edges;
    c.expect(ok, "loop-space dimensions do not saturate on '" + code.name + "'");
    return ok;
}

inline CriterionResult c5_bosonic_self_statistics() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    std::size_t runs = 0;
    for (const auto& code : {six_qubit_code(), square_lattice(4, 4, Boundary::Planar)}) {
        if (!loop_spaces_saturate(code, c)) break;
        std::vector<PauliString> stars, bounds;
        for (std::size_t v = 0; v < code.vertices.size(); ++v)
            stars.push_back(star_operator(code, v));
        for (std::size_t f = 0; f < code.faces.size(); ++f)
            bounds.push_back(boundary_operator(code, f));
        auto m_loops = span_elements_up_to_weight(stars, true, 6, code.n_edges);
        auto e_loops = span_elements_up_to_weight(bounds, false, 6, code.n_edges);
        for (const auto& edges : m_loops) {
            std::size_t pair_edge = edges.empty() ? 0 : edges[0];
            auto rep = self_statistics_experiment(code, Species::M, pair_edge,
                                                  Loop{edges, LoopKind::M});
            c.expect(rep.braiding_phase == +1, "m-around-m must be bosonic on " + code.name);
            ++runs;
        }
        for (const auto& edges : e_loops) {
            std::size_t pair_edge = edges.empty() ? 0 : edges[0];
            auto rep = self_statistics_experiment(code, Species::E, pair_edge,
                                                  Loop{edges, LoopKind::E});
            c.expect(rep.braiding_phase == +1, "e-around-e must be bosonic on " + code.name);
            ++runs;
        }
    }
    double ms = ms_since(t0);
    c.expect(ms < 5000.0, "runtime budget 5 s exceeded");
    c.note(std::to_string(runs) + " closed loops of length <= 6, all phases +1");
    return {"c5", "bosonic self-statistics", c.ok, ms, c.detail};
}

inline CriterionResult c6_winding_law() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    auto code = square_lattice(4, 4, Boundary::Planar);
    std::size_t runs = 0;
    if (loop_spaces_saturate(code, c)) {
        std::vector<PauliString> stars;
        for (std::size_t v = 0; v < code.vertices.size(); ++v)
            stars.push_back(star_operator(code, v));
        auto loops = span_elements_up_to_weight(stars, true, 8, code.n_edges);
        for (const auto& edges : loops) {
            std::vector<bool> on(code.n_edges, false);
            for (auto e : edges) on[e] = true;
            std::size_t m_edge = edges.empty() ? 0 : edges[0];
            for (std::size_t e_edge = 0; e_edge < code.n_edges; ++e_edge) {
                auto rep = ramsey_experiment(code, e_edge, m_edge, Loop{edges, LoopKind::M},
                                             EngineKind::Tableau);
                int want = on[e_edge] ? -1 : +1;
                c.expect(rep.braiding_phase == want, "winding parity violated");
                // Equivalent parity statement via the loop product.
                auto lp = loop_product(code, Loop{edges, LoopKind::M});
                bool anti = !commutes(lp.op, PauliString::single(code.n_edges, e_edge, Pauli::Z));
                c.expect(anti == on[e_edge], "loop product commutation mismatch");
                ++runs;
                if (!c.ok) break;
            }
            if (!c.ok) break;
        }
    }
    double ms = ms_since(t0);
    c.expect(ms < 30000.0, "runtime budget 30 s exceeded");
    c.note(std::to_string(runs) + " (loop, e-edge) pairs follow the odd-crossing rule");
    return {"c6", "winding law", c.ok, ms, c.detail};
}

inline CriterionResult c7_oracle_equivalence() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    std::size_t circuits = 0;
    double max_dev = 0.0;
    auto run_case = [&](const Circuit& circ, const std::vector<std::uint64_t>& seeds) {
        auto rep = cross_check(circ, seeds);
        circuits += rep.circuits;
        max_dev = std::max(max_dev, rep.max_prob_deviation);
        c.expect(rep.agreed, "engines disagree: " + rep.first_mismatch);
    };

    auto six = six_qubit_code();
    auto nine = nine_qubit_code();
    auto small = square_lattice(2, 2, Boundary::Planar);
    run_case(ramsey_circuit(six, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M}), {0, 1});
    run_case(ramsey_circuit(six, 2, 3, Loop{{}, LoopKind::M}), {0, 1});
    run_case(ramsey_circuit(nine, 2, 3, Loop{{8, 7, 4, 2, 3, 6}, LoopKind::M}), {0, 1});
    run_case(ramsey_circuit(nine, 2, 3, Loop{{8, 7, 5, 6}, LoopKind::M}), {0, 1});
    run_case(ramsey_circuit(small, 2, 5, Loop{small.vertices[4], LoopKind::M}), {0, 1});
    // Protocol runs on both engines must produce identical reports.
    for (const auto& code : {six, nine}) {
        auto rep = ramsey_experiment(code, 2, 3, Loop{{5, 4, 2, 3}, LoopKind::M},
                                     EngineKind::Both);
        c.expect(rep.agreement, "tableau and statevector reports differ on " + code.name);
    }
    // The cluster patterns exceed 16 qubits and are exempt by the size bound.

    Rng rng(1234);
    for (int k = 0; k < 100; ++k) {
        Circuit circ;
        circ.n = 8;
        for (int op = 0; op < 60; ++op) {
            auto q = static_cast<std::uint32_t>(rng.next() % 8);
            auto r = static_cast<std::uint32_t>(rng.next() % 8);
            if (r == q) r = (r + 1) % 8;
            switch (rng.next() % 9) {
                case 0: circ.push(Gate::h(q)); break;
                case 1: circ.push(Gate::s(q)); break;
                case 2: circ.push(Gate::sdg(q)); break;
                case 3: circ.push(Gate::x(q)); break;
                case 4: circ.push(Gate::y(q)); break;
                case 5: circ.push(Gate::z(q)); break;
                case 6: circ.push(Gate::cz(q, r)); break;
                case 7: circ.push(Gate::cnot(q, r)); break;
                default: {
                    PauliString p(8);
                    int weight = 1 + rng.next() % 3;
                    for (int w = 0; w < weight; ++w)
                        p.set_pauli(rng.next() % 8, static_cast<Pauli>(1 + rng.next() % 3));
                    if (rng.next() & 1) p.set_phase_exponent(2);
                    circ.push(Gate::measure(p));
                }
            }
        }
        run_case(circ, {rng.next()});
    }
    double ms = ms_since(t0);
    c.expect(max_dev <= 1e-12, "indeterminate Born probability drifted from 1/2");
    c.expect(ms < 60000.0, "runtime budget 60 s exceeded");
    c.note(std::to_string(circuits) + " circuits cross-checked, max |p - 1/2| = " +
           std::to_string(max_dev));
    return {"c7", "tableau vs statevector oracle equivalence", c.ok, ms, c.detail};
}

inline CriterionResult c8_performance() {
    Check c;
    auto res = run_bench(50);
    c.expect(res.braiding_phase == -1, "bench ramsey must braid");
    c.expect(res.total_ms < 10000.0, "runtime budget 10 s exceeded");
    std::ostringstream os;
    os << res.n_edges << " edge qubits: prep " << res.prep_ms << " ms, ramsey " << res.ramsey_ms
       << " ms";
    c.note(os.str());
    return {"c8", "50x50 lattice performance", c.ok, res.total_ms, c.detail};
}

inline CriterionResult c9_amplitude_interference() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    auto code = six_qubit_code();
    auto ground = std::get<StateVector>(prepare_ground_state(code, EngineKind::Statevector));
    auto excited = ground;
    excited.apply(Gate::z(2));

    auto s = prepare_ground_state(code, EngineKind::Statevector);
    e_superposition(s, code, 2);
    const auto& split = std::get<StateVector>(s);
    double a = std::abs(sv_overlap(ground, split));
    double b = std::abs(sv_overlap(excited, split));
    c.expect(std::abs(a - 1 / std::sqrt(2.0)) <= 1e-10, "ground-branch overlap is not 1/sqrt(2)");
    c.expect(std::abs(b - 1 / std::sqrt(2.0)) <= 1e-10, "excited-branch overlap is not 1/sqrt(2)");

    create_m_pair(s, code, 3);
    braid(s, code, Loop{{5, 4, 2, 3}, LoopKind::M});
    fuse(s, code, 2, 3);
    double fidelity = std::abs(sv_overlap(ground, std::get<StateVector>(s)));
    c.expect(std::abs(fidelity - 1.0) <= 1e-10, "braided run does not return to |phi>");

    double ms = ms_since(t0);
    c.expect(ms < 1000.0, "runtime budget 1 s exceeded");
    std::ostringstream os;
    os << "overlaps " << a << ", " << b << "; final fidelity " << fidelity;
    c.note(os.str());
    return {"c9", "amplitude-level interference", c.ok, ms, c.detail};
}

}  // namespace detail

/// Runs the acceptance criteria whose id or name contains `filter`
/// ("", "all" and "primary" select everything).
inline std::vector<CriterionResult> run_acceptance(const std::string& filter = "") {
    struct Entry {
        const char* id;
        const char* name;
        CriterionResult (*fn)();
    };
    static const Entry all[] = {
        {"c1", "six-qubit braiding phase", detail::c1_six_qubit_braiding},
        {"c2", "nine-qubit loop topology", detail::c2_nine_qubit_topology},
        {"c3", "ground-state certification", detail::c3_ground_state_certification},
        {"c4", "cluster-state preparation route", detail::c4_cluster_route},
        {"c5", "bosonic self-statistics", detail::c5_bosonic_self_statistics},
        {"c6", "winding law", detail::c6_winding_law},
        {"c7", "tableau vs statevector oracle equivalence", detail::c7_oracle_equivalence},
        {"c8", "50x50 lattice performance", detail::c8_performance},
        {"c9", "amplitude-level interference", detail::c9_amplitude_interference},
    };
    std::vector<CriterionResult> out;
    for (const auto& entry : all) {
        bool selected = filter.empty() || filter == "all" || filter == "primary" ||
                        std::string(entry.id).find(filter) != std::string::npos ||
                        std::string(entry.name).find(filter) != std::string::npos;
        if (selected) out.push_back(entry.fn());
    }
    return out;
}

}  // namespace anyonbraid
