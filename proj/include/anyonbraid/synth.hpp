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
#include <string>
#include <vector>

#include "anyonbraid/circuit.hpp"
#include "anyonbraid/errors.hpp"
#include "anyonbraid/pauli.hpp"
#include "anyonbraid/tableau.hpp"

namespace anyonbraid {

/// Conjugates p in place by a Clifford gate: p -> g p g^dagger, sign exact.
inline void conjugate(PauliString& p, const Gate& g) {
    auto q = g.a, t = g.b;
    bool xq = p.x(q), zq = p.z(q);
    switch (g.kind) {
        case GateKind::H:
            if (xq && zq) p.mul_phase(2);
            p.set_x(q, zq);
            p.set_z(q, xq);
            break;
        case GateKind::S:  // X -> Y -> -X
            if (xq && zq) p.mul_phase(2);
            p.set_z(q, zq ^ xq);
            break;
        case GateKind::Sdg:  // X -> -Y, Y -> X
            if (xq && !zq) p.mul_phase(2);
            p.set_z(q, zq ^ xq);
            break;
        case GateKind::X:
            if (zq) p.mul_phase(2);
            break;
        case GateKind::Y:
            if (xq != zq) p.mul_phase(2);
            break;
        case GateKind::Z:
            if (xq) p.mul_phase(2);
            break;
        case GateKind::CZ: {
            bool xt = p.x(t), zt = p.z(t);
            if (xq && xt && (zq != zt)) p.mul_phase(2);
            p.set_z(q, zq ^ xt);
            p.set_z(t, zt ^ xq);
            break;
        }
        case GateKind::CNOT: {
            bool xt = p.x(t), zt = p.z(t);
            if (xq && zt && (xt == zq)) p.mul_phase(2);
            p.set_x(t, xt ^ xq);
            p.set_z(q, zq ^ zt);
            break;
        }
        case GateKind::MeasurePauli:
            throw input_error("cannot conjugate by a measurement");
    }
}

namespace detail {

inline void check_generator_set(const std::vector<PauliString>& gens) {
    if (gens.empty()) throw input_error("empty generator list");
    std::size_t n = gens[0].num_qubits();
    for (const auto& g : gens) {
        if (g.num_qubits() != n) throw input_error("generator size mismatch");
        if (!g.hermitian()) throw input_error("generator sign must be +1 or -1");
    }
    if (gens.size() != n)
        throw input_error("need exactly n independent generators for a unique state (got " +
                          std::to_string(gens.size()) + " on " + std::to_string(n) + " qubits)");
    // Pairwise commutation; support ranges skip far-apart pairs so sparse
    // banded sets (big lattices) validate in near-linear time.
    std::vector<std::pair<std::size_t, std::size_t>> ranges(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) ranges[i] = gens[i].word_range();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            if (ranges[i].second <= ranges[j].first || ranges[j].second <= ranges[i].first)
                continue;
            if (!gens[i].commutes_with(gens[j]))
                throw input_error("generators " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " anticommute");
        }
    }
}

}  // namespace detail

namespace detail {

/// Anticommutation with cached word ranges; disjoint supports commute.
struct RangedPauli {
    PauliString p;
    std::size_t lo, hi;

    explicit RangedPauli(PauliString v) : p(std::move(v)) {
        auto r = p.word_range();
        lo = r.first;
        hi = r.second;
    }
    void mul_by(const RangedPauli& o) {
        p = p * o.p;
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
    }
    bool anticommutes(const RangedPauli& o) const {
        std::size_t a = std::max(lo, o.lo), b = std::min(hi, o.hi);
        if (a >= b) return false;
        unsigned parity = 0;
        for (std::size_t k = a; k < b; ++k) {
            parity ^= std::popcount(p.x_words()[k] & o.p.z_words()[k]);
            parity ^= std::popcount(p.z_words()[k] & o.p.x_words()[k]);
        }
        return parity & 1;
    }
};

}  // namespace detail

/// Unique joint eigenstate of n independent commuting signed Paulis on n
/// qubits. The generators become the stabilizer rows (signs exact, up to
/// in-group row multiplications); destabilizer partners come from symplectic
/// Gram-Schmidt over the single-qubit Paulis. Throws input_error on
/// anticommuting pairs, dependent sets, or a count other than n.
inline Tableau state_from_generators(const std::vector<PauliString>& gens) {
    detail::check_generator_set(gens);
    std::size_t n = gens[0].num_qubits();

    std::vector<detail::RangedPauli> stabs;
    stabs.reserve(n);
    for (const auto& g : gens) stabs.emplace_back(g);

    std::vector<detail::RangedPauli> pool;
    pool.reserve(2 * n);
    for (std::size_t q = 0; q < n; ++q)
        pool.emplace_back(PauliString::single(n, q, Pauli::X));
    for (std::size_t q = 0; q < n; ++q)
        pool.emplace_back(PauliString::single(n, q, Pauli::Z));

    std::vector<PauliString> destabs(n, PauliString(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t partner = pool.size();
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (pool[j].anticommutes(stabs[i])) {
                partner = j;
                break;
            }
        }
        if (partner == pool.size())
            throw input_error("generator " + std::to_string(i + 1) +
                              " is dependent on the previous ones");
        detail::RangedPauli d = std::move(pool[partner]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(partner));
        // Make everything left commute with both members of the new pair.
        for (auto& q : pool) {
            if (q.anticommutes(stabs[i])) q.mul_by(d);
            if (q.anticommutes(d)) q.mul_by(stabs[i]);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (stabs[j].anticommutes(d)) stabs[j].mul_by(stabs[i]);
        }
        d.p.set_phase_exponent(0);
        destabs[i] = std::move(d.p);
    }

    std::vector<PauliString> rows;
    rows.reserve(n);
    for (auto& s : stabs) rows.push_back(std::move(s.p));
    return Tableau::from_rows(destabs, rows);
}

/// Reduced row echelon form of a signed Pauli list under a fixed column
/// order, multiplying rows with exact signs. Rows left in echelon order.
/// `cols` lists (qubit, which-part) pairs; part 'x' or 'z'.
inline std::vector<PauliString> pauli_rref(std::vector<PauliString> rows,
                                           const std::vector<std::pair<std::size_t, char>>& cols) {
    std::size_t rank = 0;
    for (const auto& [q, part] : cols) {
        auto bit = [&](const PauliString& p) { return part == 'x' ? p.x(q) : p.z(q); };
        std::size_t pivot = rank;
        while (pivot < rows.size() && !bit(rows[pivot])) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && bit(rows[r])) rows[r] = rows[r] * rows[rank];
        }
        ++rank;
    }
    return rows;
}

inline std::vector<std::pair<std::size_t, char>> default_column_order(std::size_t n) {
    std::vector<std::pair<std::size_t, char>> cols;
    cols.reserve(2 * n);
    for (std::size_t q = 0; q < n; ++q) cols.emplace_back(q, 'x');
    for (std::size_t q = 0; q < n; ++q) cols.emplace_back(q, 'z');
    return cols;
}

/// Canonical generating set of the state's stabilizer group (RREF over the
/// x block then the z block). Equal lists <=> equal groups with equal signs.
inline std::vector<PauliString> canonical_stabilizers(const Tableau& t) {
    return pauli_rref(t.stabilizers(), default_column_order(t.num_qubits()));
}

inline bool same_stabilizer_group(const Tableau& a, const Tableau& b) {
    if (a.num_qubits() != b.num_qubits()) return false;
    return canonical_stabilizers(a) == canonical_stabilizers(b);
}

/// Clifford circuit over {H, S, SDG, CZ, CNOT, X} mapping |0...0> to the
/// joint +1 eigenstate of the given generators. Independent of
/// state_from_generators, so replaying one against the other is a real check.
/// Gate count is not optimized.
inline Circuit synthesize_circuit(const std::vector<PauliString>& gens) {
    detail::check_generator_set(gens);
    std::size_t n = gens[0].num_qubits();
    std::vector<PauliString> rows = gens;
    std::vector<Gate> forward;  // conjugations applied to the rows, in order

    auto emit = [&](Gate g) {
        for (auto& r : rows) conjugate(r, g);
        forward.push_back(std::move(g));
    };

    for (std::size_t q = 0; q < n; ++q) {
        // A row that is already +/-Z_q needs no gates: move it into place and
        // sweep the column with row multiplications.
        std::size_t diag = rows.size();
        for (std::size_t r = q; r < rows.size() && diag == rows.size(); ++r)
            if (rows[r].z(q) && !rows[r].x(q) && rows[r].weight() == 1) diag = r;
        if (diag != rows.size()) {
            std::swap(rows[diag], rows[q]);
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (r != q && rows[r].z(q)) rows[r] = rows[r] * rows[q];
            continue;
        }
        // Bring an X to column q on some row >= q.
        std::size_t pivot = rows.size();
        for (std::size_t r = q; r < rows.size() && pivot == rows.size(); ++r)
            if (rows[r].x(q)) pivot = r;
        if (pivot == rows.size()) {
            for (std::size_t r = q; r < rows.size() && pivot == rows.size(); ++r)
                if (rows[r].z(q)) pivot = r;
            if (pivot != rows.size()) emit(Gate::h(q));
        }
        if (pivot == rows.size()) {
            // Column q is untouched by the remaining rows; steal support from
            // a later column via a SWAP (three CNOTs).
            std::size_t src_col = n, src_row = rows.size();
            for (std::size_t c = q + 1; c < n && src_col == n; ++c) {
                for (std::size_t r = q; r < rows.size(); ++r) {
                    if (rows[r].x(c) || rows[r].z(c)) {
                        src_col = c;
                        src_row = r;
                        break;
                    }
                }
            }
            if (src_col == n)
                throw input_error("generator " + std::to_string(q + 1) +
                                  " is dependent on the previous ones");
            if (!rows[src_row].x(src_col)) emit(Gate::h(src_col));
            emit(Gate::cnot(q, src_col));
            emit(Gate::cnot(src_col, q));
            emit(Gate::cnot(q, src_col));
            pivot = src_row;
        }
        std::swap(rows[pivot], rows[q]);
        // Clear the rest of row q's X support, then its Z support.
        for (std::size_t c = 0; c < n; ++c)
            if (c != q && rows[q].x(c)) emit(Gate::cnot(q, c));
        if (rows[q].z(q)) emit(Gate::s(q));
        for (std::size_t c = 0; c < n; ++c)
            if (c != q && rows[q].z(c)) emit(Gate::cz(q, c));
        // Row q is now +/-X_q; every other row must commute with it, so after
        // H(q) any stray Z_q in later rows is removed by row multiplication.
        emit(Gate::h(q));
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != q && rows[r].z(q)) rows[r] = rows[r] * rows[q];
    }

    Circuit out;
    out.n = n;
    for (std::size_t q = 0; q < n; ++q)
        if (rows[q].phase_exponent() == 2) out.push(Gate::x(q));
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::S) g.kind = GateKind::Sdg;
        else if (g.kind == GateKind::Sdg) g.kind = GateKind::S;
        out.push(g);
    }
    return out;
}

/// State of a subset of qubits, for states where every dropped qubit is in a
/// basis product state (stabilizer contains +/-X_q or +/-Z_q). `dropped`
/// lists (qubit, basis) with basis 'X' or 'Z'. Kept qubits are reindexed in
/// the order given.
inline Tableau extract_subsystem(const Tableau& t, const std::vector<std::size_t>& kept,
                                 const std::vector<std::pair<std::size_t, char>>& dropped) {
    std::size_t n = t.num_qubits();
    if (kept.size() + dropped.size() != n) throw input_error("subsystem partition mismatch");
    std::vector<std::pair<std::size_t, char>> cols;
    for (auto& [q, basis] : dropped) cols.emplace_back(q, basis == 'X' ? 'x' : 'z');
    for (auto q : kept) cols.emplace_back(q, 'x');
    for (auto q : kept) cols.emplace_back(q, 'z');
    for (auto& [q, basis] : dropped) cols.emplace_back(q, basis == 'X' ? 'z' : 'x');
    auto rows = pauli_rref(t.stabilizers(), cols);

    std::vector<PauliString> sub;
    for (const auto& row : rows) {
        bool touches_dropped = false;
        for (auto& [q, basis] : dropped) {
            if (row.x(q) || row.z(q)) {
                touches_dropped = true;
                // Must be exactly the single-qubit basis stabilizer.
                if (row.weight() != 1)
                    throw input_error("dropped qubit " + std::to_string(q + 1) +
                                      " is entangled with the kept block");
                break;
            }
        }
        if (touches_dropped) continue;
        PauliString p(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) p.set_pauli(i, row.pauli(kept[i]));
        p.set_phase_exponent(row.phase_exponent());
        sub.push_back(std::move(p));
    }
    if (sub.size() != kept.size())
        throw input_error("kept block is not in a pure stabilizer state");
    return state_from_generators(sub);
}

}  // namespace anyonbraid
