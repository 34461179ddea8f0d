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

#include <algorithm>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anyonbraid/errors.hpp"
#include "anyonbraid/gf2.hpp"
#include "anyonbraid/pauli.hpp"

namespace anyonbraid {

/// Planar-code model: one qubit per edge, an X-type star operator per vertex
/// and a Z-type boundary operator per face. Indices are 0-based in the API
/// and 1-based in every text interface (JSON files, reports, CLI).
///
/// Values are immutable after construction and safe to share across threads.
struct PlanarCode {
    std::string name;
    std::size_t n_edges = 0;
    std::vector<std::vector<std::uint32_t>> vertices;  // star(v): edge indices
    std::vector<std::vector<std::uint32_t>> faces;     // boundary(f): edge indices
    std::vector<std::string> vertex_labels;            // defaults A1..Av
    std::vector<std::string> face_labels;              // defaults B1..Bf

    std::size_t num_generators() const { return vertices.size() + faces.size(); }

    std::string vertex_label(std::size_t v) const {
        return v < vertex_labels.size() ? vertex_labels[v] : "A" + std::to_string(v + 1);
    }
    std::string face_label(std::size_t f) const {
        return f < face_labels.size() ? face_labels[f] : "B" + std::to_string(f + 1);
    }
};

enum class Boundary { Planar, Torus };

enum class LoopKind { E, M };

/// Ordered edge walk. An m-loop transports an m-particle face to face (X on
/// each edge crossed); an e-loop transports an e-particle vertex to vertex
/// (Z on each edge walked). Repeated edges cancel in the product.
struct Loop {
    std::vector<std::uint32_t> edges;
    LoopKind kind = LoopKind::M;
};

inline PauliString star_operator(const PlanarCode& code, std::size_t v) {
    if (v >= code.vertices.size()) throw input_error("unknown vertex id");
    PauliString p(code.n_edges);
    for (auto e : code.vertices[v]) p.set_x(e, true);
    return p;
}

inline PauliString boundary_operator(const PlanarCode& code, std::size_t f) {
    if (f >= code.faces.size()) throw input_error("unknown face id");
    PauliString p(code.n_edges);
    for (auto e : code.faces[f]) p.set_z(e, true);
    return p;
}

/// All generators, vertices first: [A_1..A_V, B_1..B_F], signs +1.
inline std::vector<PauliString> code_generators(const PlanarCode& code) {
    std::vector<PauliString> gens;
    gens.reserve(code.num_generators());
    for (std::size_t v = 0; v < code.vertices.size(); ++v) gens.push_back(star_operator(code, v));
    for (std::size_t f = 0; f < code.faces.size(); ++f) gens.push_back(boundary_operator(code, f));
    return gens;
}

struct ValidationReport {
    std::size_t n_edges = 0, n_vertices = 0, n_faces = 0;
    bool structure_ok = true;   // non-empty sets, in-range indices, weight >= 2
    bool commuting = true;
    std::size_t rank = 0;
    std::size_t logical_qubits = 0;
    std::size_t redundancies = 0;  // generator count - rank
    std::size_t min_generator_weight = 0;
    std::vector<std::string> violations;

    bool independent() const { return redundancies == 0; }
    bool valid() const { return structure_ok && commuting; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n_edges"] = n_edges;
        j["n_vertices"] = n_vertices;
        j["n_faces"] = n_faces;
        j["valid"] = valid();
        j["commuting"] = commuting;
        j["independent"] = independent();
        j["rank"] = rank;
        j["logical_qubits"] = logical_qubits;
        j["redundancies"] = redundancies;
        j["min_generator_weight"] = min_generator_weight;
        j["violations"] = violations;
        return j;
    }
};

/// Checks the commutation facts and computes the GF(2) rank of the generator
/// set. Failures are reported, not thrown.
inline ValidationReport validate(const PlanarCode& code) {
    ValidationReport rep;
    rep.n_edges = code.n_edges;
    rep.n_vertices = code.vertices.size();
    rep.n_faces = code.faces.size();

    std::size_t min_w = code.n_edges + 1;
    auto check_sets = [&](const std::vector<std::vector<std::uint32_t>>& sets, const char* kind) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (sets[i].empty()) {
                rep.structure_ok = false;
                rep.violations.push_back(std::string(kind) + " " + std::to_string(i + 1) +
                                         " is empty");
                continue;
            }
            min_w = std::min(min_w, sets[i].size());
            for (auto e : sets[i]) {
                if (e >= code.n_edges) {
                    rep.structure_ok = false;
                    rep.violations.push_back(std::string(kind) + " " + std::to_string(i + 1) +
                                             " references edge " + std::to_string(e + 1) +
                                             " beyond n_edges");
                }
            }
        }
    };
    check_sets(code.vertices, "vertex");
    check_sets(code.faces, "face");
    rep.min_generator_weight = min_w > code.n_edges ? 0 : min_w;
    if (!rep.structure_ok) {
        rep.commuting = false;
        return rep;
    }

    // A_v vs B_f commute iff |star(v) & boundary(f)| is even. X-type pairs and
    // Z-type pairs commute trivially.
    for (std::size_t v = 0; v < code.vertices.size(); ++v) {
        for (std::size_t f = 0; f < code.faces.size(); ++f) {
            std::size_t overlap = 0;
            for (auto e : code.vertices[v])
                overlap += std::count(code.faces[f].begin(), code.faces[f].end(), e);
            if (overlap & 1) {
                rep.commuting = false;
                rep.violations.push_back(code.vertex_label(v) + " anticommutes with " +
                                         code.face_label(f) + " (odd overlap)");
            }
        }
    }

    // X-block and Z-block ranks add: the blocks live on disjoint coordinates.
    gf2::BitMatrix mx(code.vertices.size(), code.n_edges);
    for (std::size_t v = 0; v < code.vertices.size(); ++v)
        for (auto e : code.vertices[v]) mx.set(v, e, !mx.get(v, e));
    gf2::BitMatrix mz(code.faces.size(), code.n_edges);
    for (std::size_t f = 0; f < code.faces.size(); ++f)
        for (auto e : code.faces[f]) mz.set(f, e, !mz.get(f, e));
    rep.rank = mx.rank() + mz.rank();
    rep.logical_qubits = code.n_edges - rep.rank;
    rep.redundancies = code.num_generators() - rep.rank;
    return rep;
}

/// rows x cols plaquettes. On a torus: rows*cols vertices, rows*cols faces,
/// 2*rows*cols edges, every star and boundary of weight 4, and the two global
/// redundancies (product of all stars = product of all boundaries = I).
///
/// On a planar patch the grid keeps all (rows+1)*(cols+1) vertices with
/// truncated boundary stars, all rows*cols plaquettes, plus one dangling
/// spoke edge at the top-left corner (last edge index). The spoke removes
/// the global star redundancy, so the generators are independent and
/// |vertices| + |faces| = n_edges: a unique ground state.
inline PlanarCode square_lattice(std::size_t rows, std::size_t cols, Boundary boundary) {
    if (rows < 2 || cols < 2)
        throw input_error("square lattice needs rows >= 2 and cols >= 2");
    PlanarCode code;
    if (boundary == Boundary::Torus) {
        code.name = "square:" + std::to_string(rows) + "x" + std::to_string(cols) + ":torus";
        code.n_edges = 2 * rows * cols;
        auto h = [&](std::size_t i, std::size_t j) {
            return static_cast<std::uint32_t>(i * cols + j);
        };
        auto vv = [&](std::size_t i, std::size_t j) {
            return static_cast<std::uint32_t>(rows * cols + i * cols + j);
        };
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                code.vertices.push_back(
                    {h(i, j), h(i, (j + cols - 1) % cols), vv(i, j), vv((i + rows - 1) % rows, j)});
                code.faces.push_back({h(i, j), h((i + 1) % rows, j), vv(i, j), vv(i, (j + 1) % cols)});
            }
        }
        return code;
    }

    code.name = "square:" + std::to_string(rows) + "x" + std::to_string(cols) + ":planar";
    std::size_t n_h = (rows + 1) * cols, n_v = rows * (cols + 1);
    code.n_edges = n_h + n_v + 1;
    auto h = [&](std::size_t i, std::size_t j) { return static_cast<std::uint32_t>(i * cols + j); };
    auto vv = [&](std::size_t i, std::size_t j) {
        return static_cast<std::uint32_t>(n_h + i * (cols + 1) + j);
    };
    std::uint32_t spoke = static_cast<std::uint32_t>(n_h + n_v);
    for (std::size_t i = 0; i <= rows; ++i) {
        for (std::size_t j = 0; j <= cols; ++j) {
            std::vector<std::uint32_t> star;
            if (j > 0) star.push_back(h(i, j - 1));
            if (j < cols) star.push_back(h(i, j));
            if (i > 0) star.push_back(vv(i - 1, j));
            if (i < rows) star.push_back(vv(i, j));
            if (i == 0 && j == 0) star.push_back(spoke);
            if (star.size() < 2) throw input_error("degenerate star generator");
            code.vertices.push_back(std::move(star));
        }
    }
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            code.faces.push_back({h(i, j), h(i + 1, j), vv(i, j), vv(i, j + 1)});
    return code;
}

/// The minimal braiding instance: two stars and four faces on six edges.
/// A1 = X1 X2 X3, A2 = X3 X4 X5 X6, B1 = Z1 Z3 Z4, B2 = Z2 Z3 Z5,
/// B3 = Z4 Z6, B4 = Z5 Z6 (1-based edges).
inline PlanarCode six_qubit_code() {
    PlanarCode code;
    code.name = "six";
    code.n_edges = 6;
    code.vertices = {{0, 1, 2}, {2, 3, 4, 5}};
    code.faces = {{0, 2, 3}, {1, 2, 4}, {3, 5}, {4, 5}};
    return code;
}

/// Nine-edge extension of the six-qubit instance by one more vertex
/// (A3 = X6 X7 X8 X9) and the faces B3..B6; admits braiding loops of
/// different shapes around the middle vertex.
inline PlanarCode nine_qubit_code() {
    PlanarCode code;
    code.name = "nine";
    code.n_edges = 9;
    code.vertices = {{0, 1, 2}, {2, 3, 4, 5}, {5, 6, 7, 8}};
    code.faces = {{0, 2, 3}, {1, 2, 4}, {3, 5, 6}, {4, 5, 7}, {6, 8}, {7, 8}};
    return code;
}

struct LoopProduct {
    PauliString op;
    bool closed = false;
    /// Generator decomposition when one exists: vertex ids for m-loops, face
    /// ids for e-loops (the lex-min subset, preferring low ids out).
    std::optional<std::vector<std::size_t>> decomposition;
};

/// Product of X (m-loop) or Z (e-loop) over the loop's edges, its closure
/// flag, and its GF(2) decomposition into generators when closed and
/// decomposable. Closure means commuting with every generator of the code.
inline LoopProduct loop_product(const PlanarCode& code, const Loop& loop) {
    LoopProduct out{PauliString(code.n_edges), false, std::nullopt};
    for (auto e : loop.edges) {
        if (e >= code.n_edges) throw input_error("loop references an invalid edge index");
        if (loop.kind == LoopKind::M)
            out.op.set_x(e, !out.op.x(e));
        else
            out.op.set_z(e, !out.op.z(e));
    }
    out.closed = true;
    for (std::size_t v = 0; v < code.vertices.size() && out.closed; ++v)
        if (!out.op.commutes_with(star_operator(code, v))) out.closed = false;
    for (std::size_t f = 0; f < code.faces.size() && out.closed; ++f)
        if (!out.op.commutes_with(boundary_operator(code, f))) out.closed = false;
    if (!out.closed) return out;

    // Solve for the loop as a sum of same-type generator supports.
    const auto& sets = loop.kind == LoopKind::M ? code.vertices : code.faces;
    gf2::BitMatrix m(code.n_edges, sets.size());
    for (std::size_t g = 0; g < sets.size(); ++g)
        for (auto e : sets[g]) m.set(e, g, !m.get(e, g));
    std::vector<std::uint8_t> b(code.n_edges, 0);
    for (std::size_t e = 0; e < code.n_edges; ++e)
        b[e] = loop.kind == LoopKind::M ? out.op.x(e) : out.op.z(e);
    if (auto x = m.solve(b)) {
        std::vector<std::size_t> ids;
        for (std::size_t g = 0; g < x->size(); ++g)
            if ((*x)[g]) ids.push_back(g);
        out.decomposition = std::move(ids);
    }
    return out;
}

inline nlohmann::ordered_json code_to_json(const PlanarCode& code) {
    nlohmann::ordered_json j;
    j["n_edges"] = code.n_edges;
    auto lift = [](const std::vector<std::vector<std::uint32_t>>& sets) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& s : sets) {
            nlohmann::ordered_json one = nlohmann::ordered_json::array();
            for (auto e : s) one.push_back(e + 1);
            arr.push_back(one);
        }
        return arr;
    };
    j["vertices"] = lift(code.vertices);
    j["faces"] = lift(code.faces);
    if (!code.vertex_labels.empty() || !code.face_labels.empty()) {
        nlohmann::ordered_json labels;
        if (!code.vertex_labels.empty()) labels["vertices"] = code.vertex_labels;
        if (!code.face_labels.empty()) labels["faces"] = code.face_labels;
        j["labels"] = labels;
    }
    return j;
}

inline PlanarCode code_from_json(const nlohmann::json& j) {
    PlanarCode code;
    try {
        code.n_edges = j.at("n_edges").get<std::size_t>();
        auto lower = [&](const nlohmann::json& arr) {
            std::vector<std::vector<std::uint32_t>> sets;
            for (const auto& one : arr) {
                std::vector<std::uint32_t> s;
                for (const auto& e : one) {
                    long long v = e.get<long long>();
                    if (v < 1 || static_cast<std::size_t>(v) > code.n_edges)
                        throw input_error("edge index " + std::to_string(v) +
                                          " out of range (1-based)");
                    s.push_back(static_cast<std::uint32_t>(v - 1));
                }
                sets.push_back(std::move(s));
            }
            return sets;
        };
        code.vertices = lower(j.at("vertices"));
        code.faces = lower(j.at("faces"));
        if (j.contains("labels")) {
            const auto& labels = j.at("labels");
            if (labels.contains("vertices"))
                code.vertex_labels = labels.at("vertices").get<std::vector<std::string>>();
            if (labels.contains("faces"))
                code.face_labels = labels.at("faces").get<std::vector<std::string>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad lattice spec: ") + e.what());
    }
    return code;
}

/// Builtin names ("six", "nine", "square:RxC:planar|torus") or a JSON file.
inline PlanarCode parse_code_spec(const std::string& spec);

namespace detail {

inline PlanarCode parse_square_spec(const std::string& spec) {
    // square:RxC:planar|torus
    std::size_t p1 = spec.find(':'), p2 = spec.rfind(':');
    if (p1 == std::string::npos || p2 == p1)
        throw input_error("square spec must look like square:3x3:planar");
    std::string dims = spec.substr(p1 + 1, p2 - p1 - 1);
    std::string kind = spec.substr(p2 + 1);
    std::size_t x = dims.find('x');
    if (x == std::string::npos) throw input_error("square spec must look like square:3x3:planar");
    long long rows = std::strtoll(dims.substr(0, x).c_str(), nullptr, 10);
    long long cols = std::strtoll(dims.substr(x + 1).c_str(), nullptr, 10);
    if (rows < 1 || cols < 1) throw input_error("bad square lattice dimensions");
    Boundary b;
    if (kind == "planar") b = Boundary::Planar;
    else if (kind == "torus") b = Boundary::Torus;
    else throw input_error("square boundary must be 'planar' or 'torus'");
    return square_lattice(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), b);
}

}  // namespace detail

inline PlanarCode parse_code_spec(const std::string& spec) {
    if (spec == "six") return six_qubit_code();
    if (spec == "nine") return nine_qubit_code();
    if (spec.rfind("square:", 0) == 0) return detail::parse_square_spec(spec);
    std::ifstream in(spec);
    if (!in) throw input_error("no builtin code and no readable file named '" + spec + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("cannot parse '" + spec + "' as JSON: " + e.what());
    }
    PlanarCode code = code_from_json(j);
    code.name = spec;
    return code;
}

}  // namespace anyonbraid
