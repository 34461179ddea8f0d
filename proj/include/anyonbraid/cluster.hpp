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

#include <cstdint>
#include <vector>

#include "anyonbraid/errors.hpp"
#include "anyonbraid/gf2.hpp"
#include "anyonbraid/lattice.hpp"
#include "anyonbraid/rng.hpp"
#include "anyonbraid/synth.hpp"
#include "anyonbraid/tableau.hpp"

namespace anyonbraid {

enum class SiteClass : std::uint8_t { Vertex, Face, Edge };

/// Measurement pattern that turns a 2D cluster state into the planar-code
/// ground state. Cluster sites live on the half-integer refinement of the
/// code lattice: code vertices at even-even coordinates, face centers at
/// odd-odd, edge midpoints in between (plus one site for the spoke edge).
/// Edge sites are kept; vertex and face sites are measured out.
///
/// The cluster stabilizers are S_i = X_i (x) Z_N(i). Measuring face sites in
/// X turns S_f directly into +/-B_f on the kept ring; measuring vertex sites
/// in Z frees the star products (x)_{e in star(v)} S_e to become +/-A_v. The
/// leftover signs depend on the outcomes and are cleared by a Pauli fixup.
struct ClusterPattern {
    std::size_t rows = 0, cols = 0;
    PlanarCode code;  // the target: square_lattice(rows, cols, planar)
    std::size_t n_sites = 0;
    std::vector<SiteClass> site_class;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cz_edges;
    std::vector<std::int64_t> edge_of_site;   // -1 on measured sites
    std::vector<std::uint32_t> site_of_edge;  // code edge -> kept site

    std::size_t count(SiteClass c) const {
        std::size_t k = 0;
        for (auto s : site_class) k += (s == c);
        return k;
    }
};

inline ClusterPattern build_cluster_pattern(std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 2)
        throw input_error("cluster pattern needs rows >= 2 and cols >= 2");
    ClusterPattern pat;
    pat.rows = rows;
    pat.cols = cols;
    pat.code = square_lattice(rows, cols, Boundary::Planar);

    const std::size_t fine_rows = 2 * rows + 1, fine_cols = 2 * cols + 1;
    const std::size_t spoke_site = fine_rows * fine_cols;
    pat.n_sites = spoke_site + 1;
    auto site = [&](std::size_t a, std::size_t b) {
        return static_cast<std::uint32_t>(a * fine_cols + b);
    };

    pat.site_class.assign(pat.n_sites, SiteClass::Edge);
    pat.edge_of_site.assign(pat.n_sites, -1);
    pat.site_of_edge.assign(pat.code.n_edges, 0);
    const std::size_t n_h = (rows + 1) * cols;
    for (std::size_t a = 0; a < fine_rows; ++a) {
        for (std::size_t b = 0; b < fine_cols; ++b) {
            bool ea = (a % 2) == 0, eb = (b % 2) == 0;
            std::size_t s = site(a, b);
            if (ea && eb) {
                pat.site_class[s] = SiteClass::Vertex;
            } else if (!ea && !eb) {
                pat.site_class[s] = SiteClass::Face;
            } else {
                std::size_t edge = ea ? (a / 2) * cols + (b - 1) / 2                    // horizontal
                                      : n_h + ((a - 1) / 2) * (cols + 1) + b / 2;      // vertical
                pat.edge_of_site[s] = static_cast<std::int64_t>(edge);
                pat.site_of_edge[edge] = static_cast<std::uint32_t>(s);
            }
            if (a + 1 < fine_rows) pat.cz_edges.emplace_back(s, site(a + 1, b));
            if (b + 1 < fine_cols) pat.cz_edges.emplace_back(s, site(a, b + 1));
        }
    }
    // The spoke edge hangs off the top-left corner vertex.
    pat.edge_of_site[spoke_site] = static_cast<std::int64_t>(pat.code.n_edges - 1);
    pat.site_of_edge[pat.code.n_edges - 1] = static_cast<std::uint32_t>(spoke_site);
    pat.cz_edges.emplace_back(static_cast<std::uint32_t>(spoke_site), site(0, 0));
    return pat;
}

struct ClusterPrep {
    Tableau state;             // on the code's edges, in edge order
    PauliString fixup;         // the byproduct correction, on code edges
    std::vector<int> outcomes; // per site: +1/-1 for measured sites, 0 for kept
};

/// Builds the cluster state (H everywhere, CZ on every cluster edge),
/// measures vertex sites in Z and face sites in X, solves for a Pauli fixup
/// on the kept qubits that returns every A_v and B_f to +1, applies it, and
/// restricts to the kept qubits.
inline ClusterPrep prepare_via_cluster(const ClusterPattern& pat, BitSource& bits) {
    const std::size_t n = pat.n_sites;
    Tableau t(n);
    for (std::size_t s = 0; s < n; ++s) t.apply_h(s);
    for (auto [a, b] : pat.cz_edges) t.apply_cz(a, b);

    std::vector<int> outcomes(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (pat.site_class[s] == SiteClass::Edge) continue;
        Pauli basis = pat.site_class[s] == SiteClass::Vertex ? Pauli::Z : Pauli::X;
        outcomes[s] = t.measure(PauliString::single(n, s, basis), bits).value;
    }

    // Generator expectations on the kept sites; each must now be forced.
    auto gens = code_generators(pat.code);
    std::vector<PauliString> embedded;
    embedded.reserve(gens.size());
    for (const auto& g : gens) {
        PauliString h(n);
        for (std::size_t e = 0; e < pat.code.n_edges; ++e)
            h.set_pauli(pat.site_of_edge[e], g.pauli(e));
        embedded.push_back(std::move(h));
    }
    const std::size_t n_edges = pat.code.n_edges;
    gf2::BitMatrix m(gens.size(), 2 * n_edges);
    std::vector<std::uint8_t> rhs(gens.size(), 0);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int e = t.expectation(embedded[i]);
        if (e == 0)
            throw protocol_error("cluster fixup unsolvable: generator " + std::to_string(i + 1) +
                                 " is indeterminate after the measurement pattern");
        rhs[i] = e < 0;
        for (std::size_t q = 0; q < n_edges; ++q) {
            if (gens[i].x(q)) m.set(i, q, true);              // Z fixup flips X support
            if (gens[i].z(q)) m.set(i, n_edges + q, true);    // X fixup flips Z support
        }
    }
    auto sol = m.solve(rhs);
    if (!sol)
        throw protocol_error("cluster fixup unsolvable: no Pauli correction exists");

    PauliString fixup(n_edges);
    for (std::size_t q = 0; q < n_edges; ++q) {
        bool zf = (*sol)[q], xf = (*sol)[n_edges + q];
        if (zf) t.apply_z(pat.site_of_edge[q]);
        if (xf) t.apply_x(pat.site_of_edge[q]);
        fixup.set_z(q, zf);
        fixup.set_x(q, xf);
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (t.expectation(embedded[i]) != +1)
            throw protocol_error("cluster fixup failed to restore generator " +
                                 std::to_string(i + 1));
    }

    std::vector<std::size_t> kept(pat.site_of_edge.begin(), pat.site_of_edge.end());
    std::vector<std::pair<std::size_t, char>> dropped;
    for (std::size_t s = 0; s < n; ++s) {
        if (pat.site_class[s] == SiteClass::Vertex) dropped.emplace_back(s, 'Z');
        else if (pat.site_class[s] == SiteClass::Face) dropped.emplace_back(s, 'X');
    }
    return {extract_subsystem(t, kept, dropped), std::move(fixup), std::move(outcomes)};
}

inline ClusterPrep prepare_via_cluster(const ClusterPattern& pat, std::uint64_t seed) {
    Rng rng(seed);
    return prepare_via_cluster(pat, rng);
}

}  // namespace anyonbraid
