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

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "anyonbraid/errors.hpp"
#include "anyonbraid/lattice.hpp"
#include "anyonbraid/statevector.hpp"
#include "anyonbraid/synth.hpp"
#include "anyonbraid/tableau.hpp"

namespace anyonbraid {

enum class EngineKind { Tableau, Statevector, Both };
enum class Species { E, M };

inline EngineKind parse_engine(const std::string& s) {
    if (s == "tableau") return EngineKind::Tableau;
    if (s == "statevector") return EngineKind::Statevector;
    if (s == "both") return EngineKind::Both;
    throw input_error("engine must be tableau, statevector or both");
}

/// A state on one engine. Protocol steps drive either engine through the
/// same gate sequence; observables are read non-destructively.
using SimState = std::variant<Tableau, StateVector>;

inline void state_apply(SimState& s, const Gate& g) {
    std::visit([&](auto& v) { v.apply(g); }, s);
}

/// Generator expectations are exactly -1, 0 or +1 on stabilizer states; the
/// statevector readout is rounded with a tight tolerance.
inline int state_expectation(const SimState& s, const PauliString& p) {
    if (const auto* t = std::get_if<Tableau>(&s)) return t->expectation(p);
    double v = std::get<StateVector>(s).expectation(p);
    if (std::abs(v - 1.0) < 1e-9) return +1;
    if (std::abs(v + 1.0) < 1e-9) return -1;
    if (std::abs(v) < 1e-9) return 0;
    throw protocol_error("statevector expectation " + std::to_string(v) +
                         " is not a stabilizer value");
}

/// Generator name -> eigenvalue (+1/-1, or 0 when indeterminate), vertices
/// then faces, in code order. Non-destructive.
using Syndrome = std::vector<std::pair<std::string, int>>;

inline Syndrome syndrome(const SimState& s, const PlanarCode& code) {
    std::size_t n = std::visit([](const auto& v) { return v.num_qubits(); }, s);
    if (n != code.n_edges) throw input_error("state size does not match the code");
    Syndrome out;
    out.reserve(code.num_generators());
    for (std::size_t v = 0; v < code.vertices.size(); ++v)
        out.emplace_back(code.vertex_label(v), state_expectation(s, star_operator(code, v)));
    for (std::size_t f = 0; f < code.faces.size(); ++f)
        out.emplace_back(code.face_label(f), state_expectation(s, boundary_operator(code, f)));
    return out;
}

inline bool all_plus(const Syndrome& s) {
    for (const auto& [name, v] : s)
        if (v != +1) return false;
    return true;
}

namespace detail {

inline void require_unique_ground_state(const PlanarCode& code) {
    auto rep = validate(code);
    if (!rep.valid())
        throw protocol_error("code '" + code.name + "' fails validation");
    if (rep.logical_qubits != 0 || rep.redundancies != 0)
        throw protocol_error("degenerate code: " + std::to_string(rep.logical_qubits) +
                             " logical qubits, " + std::to_string(rep.redundancies) +
                             " redundant generators; the ground state is not unique");
}

inline void check_edge(const PlanarCode& code, std::size_t e) {
    if (e >= code.n_edges) throw input_error("edge index out of range");
}

}  // namespace detail

/// Ground state of a code with a unique stabilizer state. The tableau engine
/// installs the generators directly; the statevector engine replays the
/// synthesized preparation circuit.
inline SimState prepare_ground_state(const PlanarCode& code, EngineKind engine) {
    detail::require_unique_ground_state(code);
    auto gens = code_generators(code);
    if (engine == EngineKind::Tableau) return state_from_generators(gens);
    if (engine == EngineKind::Statevector) {
        StateVector sv(code.n_edges);
        Circuit prep = synthesize_circuit(gens);
        for (const auto& g : prep.ops) sv.apply(g);
        return sv;
    }
    throw input_error("prepare_ground_state needs a single engine");
}

/// sqrt(Z) on an edge qubit: splits the ground state into an equal
/// superposition with the two-e-particle excited state on that edge.
inline void e_superposition(SimState& s, const PlanarCode& code, std::size_t edge) {
    detail::check_edge(code, edge);
    state_apply(s, Gate::s(static_cast<std::uint32_t>(edge)));
}

/// X on an edge qubit: creates an m-particle pair on the adjacent faces.
inline void create_m_pair(SimState& s, const PlanarCode& code, std::size_t edge) {
    detail::check_edge(code, edge);
    state_apply(s, Gate::x(static_cast<std::uint32_t>(edge)));
}

/// Transports a quasiparticle along the loop: X per edge for m-loops, Z per
/// edge for e-loops, in loop order.
inline void braid(SimState& s, const PlanarCode& code, const Loop& loop) {
    for (auto e : loop.edges) {
        detail::check_edge(code, e);
        state_apply(s, loop.kind == LoopKind::M ? Gate::x(e) : Gate::z(e));
    }
}

/// Annihilates the m-pair (X) and closes the interferometer (sqrt(Z)).
inline void fuse(SimState& s, const PlanarCode& code, std::size_t e_edge, std::size_t m_edge) {
    detail::check_edge(code, e_edge);
    detail::check_edge(code, m_edge);
    state_apply(s, Gate::x(static_cast<std::uint32_t>(m_edge)));
    state_apply(s, Gate::s(static_cast<std::uint32_t>(e_edge)));
}

struct TraceStep {
    std::string op;
    Syndrome syndrome;
};

struct ProtocolReport {
    std::string experiment;  // "ramsey" or "self_statistics"
    std::string code_name;
    std::size_t e_edge = 0, m_edge = 0;  // 0-based; serialized 1-based
    std::vector<std::uint32_t> loop_edges;
    std::string loop_kind = "m";
    std::vector<std::string> engines;
    std::uint64_t seed = 0;
    Syndrome prep_check;
    Syndrome final_syndrome;
    int braiding_phase = 0;
    std::vector<std::string> gate_log;
    bool agreement = true;
    std::vector<TraceStep> trace;

    nlohmann::ordered_json to_json(bool include_trace = false) const {
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["code"] = code_name;
        j["e_edge"] = e_edge + 1;
        j["m_edge"] = m_edge + 1;
        nlohmann::ordered_json loop = nlohmann::ordered_json::array();
        for (auto e : loop_edges) loop.push_back(e + 1);
        j["loop"] = loop;
        j["loop_kind"] = loop_kind;
        j["engines"] = engines;
        j["seed"] = seed;
        j["braiding_phase"] = braiding_phase;
        auto syn = [](const Syndrome& s) {
            nlohmann::ordered_json o;
            for (const auto& [name, v] : s) o[name] = v;
            return o;
        };
        j["prep_check"] = syn(prep_check);
        j["final_syndrome"] = syn(final_syndrome);
        j["gate_log"] = gate_log;
        j["agreement"] = agreement;
        if (include_trace) {
            nlohmann::ordered_json tr = nlohmann::ordered_json::array();
            for (const auto& step : trace) {
                nlohmann::ordered_json one;
                one["op"] = step.op;
                one["syndrome"] = syn(step.syndrome);
                tr.push_back(one);
            }
            j["trace"] = tr;
        }
        return j;
    }
};

namespace detail {

/// The expected final syndrome when the interferometer ends in the excited
/// branch: -1 exactly on the generators that anticommute with the branch
/// creation operator (Z on the pair edge for e, X for m).
inline Syndrome pair_pattern(const PlanarCode& code, std::size_t pair_edge, Species species) {
    Syndrome out;
    for (std::size_t v = 0; v < code.vertices.size(); ++v) {
        bool hit = species == Species::E &&
                   std::count(code.vertices[v].begin(), code.vertices[v].end(), pair_edge);
        out.emplace_back(code.vertex_label(v), hit ? -1 : +1);
    }
    for (std::size_t f = 0; f < code.faces.size(); ++f) {
        bool hit = species == Species::M &&
                   std::count(code.faces[f].begin(), code.faces[f].end(), pair_edge);
        out.emplace_back(code.face_label(f), hit ? -1 : +1);
    }
    return out;
}

struct SingleRun {
    Syndrome prep_check;
    Syndrome final_syndrome;
    std::vector<TraceStep> trace;
};

template <typename StepFn>
SingleRun run_protocol(const PlanarCode& code, EngineKind engine, bool want_trace,
                       StepFn&& steps) {
    SimState s = prepare_ground_state(code, engine);
    SingleRun run;
    run.prep_check = syndrome(s, code);
    auto record = [&](const Gate& g) {
        state_apply(s, g);
        if (want_trace) run.trace.push_back({g.str(), syndrome(s, code)});
    };
    steps(record);
    run.final_syndrome = syndrome(s, code);
    return run;
}

}  // namespace detail

/// The Ramsey interferometer: prepare, split with sqrt(Z) on the e edge,
/// create an m pair, drag one m particle around the loop, fuse everything,
/// and read the stabilizers. Final state |phi> (all +1) means the braiding
/// imprinted the pi phase: braiding_phase -1. Final state |phi_e> (exactly
/// the e pair lit) means no net phase: +1. Anything else is protocol misuse.
inline ProtocolReport ramsey_experiment(const PlanarCode& code, std::size_t e_edge,
                                        std::size_t m_edge, const Loop& loop, EngineKind engine,
                                        std::uint64_t seed = 0, bool want_trace = false) {
    detail::require_unique_ground_state(code);
    detail::check_edge(code, e_edge);
    detail::check_edge(code, m_edge);
    if (loop.kind != LoopKind::M)
        throw protocol_error("the ramsey braiding loop must be an m-loop");
    if (!loop_product(code, loop).closed)
        throw protocol_error("unclosed loop: the braiding path must commute with every generator");

    ProtocolReport rep;
    rep.experiment = "ramsey";
    rep.code_name = code.name;
    rep.e_edge = e_edge;
    rep.m_edge = m_edge;
    rep.loop_edges = loop.edges;
    rep.loop_kind = "m";
    rep.seed = seed;

    auto steps = [&](auto&& record) {
        record(Gate::s(static_cast<std::uint32_t>(e_edge)));
        record(Gate::x(static_cast<std::uint32_t>(m_edge)));
        for (auto e : loop.edges) record(Gate::x(e));
        record(Gate::x(static_cast<std::uint32_t>(m_edge)));
        record(Gate::s(static_cast<std::uint32_t>(e_edge)));
    };

    auto classify = [&](const detail::SingleRun& run) {
        if (all_plus(run.final_syndrome)) return -1;
        if (run.final_syndrome == detail::pair_pattern(code, e_edge, Species::E)) return +1;
        throw protocol_error("unexpected final syndrome: neither the ground state nor the "
                             "e-pair state; the protocol inputs are inconsistent");
    };

    bool tableau = engine != EngineKind::Statevector;
    bool sv = engine != EngineKind::Tableau;
    detail::SingleRun primary;
    if (tableau) {
        primary = detail::run_protocol(code, EngineKind::Tableau, want_trace, steps);
        rep.engines.push_back("tableau");
    }
    if (sv) {
        auto svrun = detail::run_protocol(code, EngineKind::Statevector, want_trace, steps);
        rep.engines.push_back("statevector");
        if (tableau) {
            rep.agreement = svrun.prep_check == primary.prep_check &&
                            svrun.final_syndrome == primary.final_syndrome;
        } else {
            primary = std::move(svrun);
        }
    }
    rep.prep_check = std::move(primary.prep_check);
    rep.final_syndrome = std::move(primary.final_syndrome);
    rep.trace = std::move(primary.trace);
    rep.braiding_phase = classify({rep.prep_check, rep.final_syndrome, {}});
    rep.gate_log.push_back(Gate::s(static_cast<std::uint32_t>(e_edge)).str());
    rep.gate_log.push_back(Gate::x(static_cast<std::uint32_t>(m_edge)).str());
    for (auto e : loop.edges) rep.gate_log.push_back(Gate::x(e).str());
    rep.gate_log.push_back(Gate::x(static_cast<std::uint32_t>(m_edge)).str());
    rep.gate_log.push_back(Gate::s(static_cast<std::uint32_t>(e_edge)).str());
    return rep;
}

/// Same interferometer with both the pair and the loop of a single species.
/// e and m particles are bosons among themselves, so the loop never imprints
/// a phase and the result is always +1.
inline ProtocolReport self_statistics_experiment(const PlanarCode& code, Species species,
                                                 std::size_t pair_edge, const Loop& loop,
                                                 EngineKind engine = EngineKind::Tableau,
                                                 std::uint64_t seed = 0, bool want_trace = false) {
    detail::require_unique_ground_state(code);
    detail::check_edge(code, pair_edge);
    if ((species == Species::M) != (loop.kind == LoopKind::M))
        throw protocol_error("the loop species must match the pair species");
    if (!loop_product(code, loop).closed)
        throw protocol_error("unclosed loop: the braiding path must commute with every generator");

    ProtocolReport rep;
    rep.experiment = "self_statistics";
    rep.code_name = code.name;
    rep.e_edge = pair_edge;
    rep.m_edge = pair_edge;
    rep.loop_edges = loop.edges;
    rep.loop_kind = species == Species::M ? "m" : "e";
    rep.seed = seed;

    auto half_rotation = [&](auto&& record) {
        auto p = static_cast<std::uint32_t>(pair_edge);
        if (species == Species::E) {
            record(Gate::s(p));
        } else {  // sqrt(X) = H S H
            record(Gate::h(p));
            record(Gate::s(p));
            record(Gate::h(p));
        }
    };
    auto steps = [&](auto&& record) {
        half_rotation(record);
        for (auto e : loop.edges)
            record(loop.kind == LoopKind::M ? Gate::x(e) : Gate::z(e));
        half_rotation(record);
    };

    bool tableau = engine != EngineKind::Statevector;
    bool sv = engine != EngineKind::Tableau;
    detail::SingleRun primary;
    if (tableau) {
        primary = detail::run_protocol(code, EngineKind::Tableau, want_trace, steps);
        rep.engines.push_back("tableau");
    }
    if (sv) {
        auto svrun = detail::run_protocol(code, EngineKind::Statevector, want_trace, steps);
        rep.engines.push_back("statevector");
        if (tableau) {
            rep.agreement = svrun.prep_check == primary.prep_check &&
                            svrun.final_syndrome == primary.final_syndrome;
        } else {
            primary = std::move(svrun);
        }
    }
    rep.prep_check = std::move(primary.prep_check);
    rep.final_syndrome = std::move(primary.final_syndrome);
    rep.trace = std::move(primary.trace);
    if (all_plus(rep.final_syndrome)) {
        rep.braiding_phase = -1;  // would signal anyonic self-statistics
    } else if (rep.final_syndrome == detail::pair_pattern(code, pair_edge, species)) {
        rep.braiding_phase = +1;
    } else {
        throw protocol_error("unexpected final syndrome in the self-statistics run");
    }
    return rep;
}

/// The full Ramsey run as one circuit (preparation included), with the final
/// stabilizer readout as measurements. Used for engine cross-checks.
inline Circuit ramsey_circuit(const PlanarCode& code, std::size_t e_edge, std::size_t m_edge,
                              const Loop& loop) {
    detail::require_unique_ground_state(code);
    Circuit c = synthesize_circuit(code_generators(code));
    c.push(Gate::s(static_cast<std::uint32_t>(e_edge)));
    c.push(Gate::x(static_cast<std::uint32_t>(m_edge)));
    for (auto e : loop.edges) c.push(Gate::x(e));
    c.push(Gate::x(static_cast<std::uint32_t>(m_edge)));
    c.push(Gate::s(static_cast<std::uint32_t>(e_edge)));
    for (const auto& g : code_generators(code)) c.push(Gate::measure(g));
    return c;
}

}  // namespace anyonbraid
