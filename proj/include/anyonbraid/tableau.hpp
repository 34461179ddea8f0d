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

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "anyonbraid/circuit.hpp"
#include "anyonbraid/errors.hpp"
#include "anyonbraid/pauli.hpp"
#include "anyonbraid/rng.hpp"

namespace anyonbraid {

struct MeasureResult {
    int value;           // +1 or -1
    bool deterministic;  // true: forced by the stabilizer group, state unchanged
};

/// Destabilizer/stabilizer tableau of an n-qubit stabilizer state, rows packed
/// into 64-bit words (x block, then z block, per row). Rows 0..n-1 are the
/// destabilizers, rows n..2n-1 the stabilizers. Row signs are +1/-1 only.
///
/// Row multiplications and anticommutation scans run in O(n/64) words, which
/// is what keeps measurement at O(n^2/w) and makes 50x50-lattice protocol
/// runs cheap. Single-writer: mutating calls must not race; copies are cheap
/// and values can move across threads freely.
class Tableau {
  public:
    /// |0...0>: stabilizers Z_j, destabilizers X_j.
    explicit Tableau(std::size_t n)
        : n_(n), words_((n + 63) / 64), bits_(2 * n * 2 * words_, 0), sign_(2 * n, 0) {
        if (n == 0) throw input_error("tableau needs at least one qubit");
        for (std::size_t i = 0; i < n; ++i) {
            xw(i)[i >> 6] |= 1ULL << (i & 63);          // destabilizer X_i
            zw(n + i)[i >> 6] |= 1ULL << (i & 63);      // stabilizer Z_i
        }
    }

    std::size_t num_qubits() const { return n_; }

    PauliString stabilizer(std::size_t i) const { return row_pauli(n_ + i); }
    PauliString destabilizer(std::size_t i) const { return row_pauli(i); }

    std::vector<PauliString> stabilizers() const {
        std::vector<PauliString> out;
        out.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) out.push_back(stabilizer(i));
        return out;
    }

    void apply(const Gate& g) {
        switch (g.kind) {
            case GateKind::H: apply_h(g.a); break;
            case GateKind::S: apply_s(g.a); break;
            case GateKind::Sdg: apply_sdg(g.a); break;
            case GateKind::X: apply_x(g.a); break;
            case GateKind::Y: apply_y(g.a); break;
            case GateKind::Z: apply_z(g.a); break;
            case GateKind::CZ: apply_cz(g.a, g.b); break;
            case GateKind::CNOT: apply_cnot(g.a, g.b); break;
            case GateKind::MeasurePauli:
                throw input_error("measurement needs a bit source; use measure()");
        }
    }

    void apply_h(std::size_t q) {
        check_q(q);
        std::size_t w = q >> 6;
        std::uint64_t m = 1ULL << (q & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            std::uint64_t& xr = xw(r)[w];
            std::uint64_t& zr = zw(r)[w];
            sign_[r] ^= ((xr & zr & m) != 0);
            std::uint64_t xb = xr & m, zb = zr & m;
            xr = (xr & ~m) | zb;
            zr = (zr & ~m) | xb;
        }
    }

    void apply_s(std::size_t q) {  // sqrt(Z): X -> Y -> -X, Z -> Z
        check_q(q);
        std::size_t w = q >> 6;
        std::uint64_t m = 1ULL << (q & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            std::uint64_t x = xw(r)[w] & m, z = zw(r)[w] & m;
            sign_[r] ^= ((x & z) != 0);
            zw(r)[w] ^= x;
        }
    }

    void apply_sdg(std::size_t q) {
        check_q(q);
        std::size_t w = q >> 6;
        std::uint64_t m = 1ULL << (q & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            std::uint64_t x = xw(r)[w] & m, z = zw(r)[w] & m;
            sign_[r] ^= ((x & ~z & m) != 0);
            zw(r)[w] ^= x;
        }
    }

    void apply_x(std::size_t q) {
        check_q(q);
        std::size_t w = q >> 6;
        std::uint64_t m = 1ULL << (q & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) sign_[r] ^= ((zw(r)[w] & m) != 0);
    }

    void apply_y(std::size_t q) {
        check_q(q);
        std::size_t w = q >> 6;
        std::uint64_t m = 1ULL << (q & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r)
            sign_[r] ^= (((xw(r)[w] ^ zw(r)[w]) & m) != 0);
    }

    void apply_z(std::size_t q) {
        check_q(q);
        std::size_t w = q >> 6;
        std::uint64_t m = 1ULL << (q & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) sign_[r] ^= ((xw(r)[w] & m) != 0);
    }

    void apply_cz(std::size_t q, std::size_t t) {
        check_q(q);
        check_q(t);
        if (q == t) throw input_error("CZ needs distinct operands");
        std::size_t wq = q >> 6, wt = t >> 6;
        std::uint64_t mq = 1ULL << (q & 63), mt = 1ULL << (t & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            bool xq = xw(r)[wq] & mq, zq = zw(r)[wq] & mq;
            bool xt = xw(r)[wt] & mt, zt = zw(r)[wt] & mt;
            sign_[r] ^= (xq & xt & (zq ^ zt));
            if (xt) zw(r)[wq] ^= mq;
            if (xq) zw(r)[wt] ^= mt;
        }
    }

    void apply_cnot(std::size_t c, std::size_t t) {
        check_q(c);
        check_q(t);
        if (c == t) throw input_error("CNOT needs distinct operands");
        std::size_t wc = c >> 6, wt = t >> 6;
        std::uint64_t mc = 1ULL << (c & 63), mt = 1ULL << (t & 63);
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            bool xc = xw(r)[wc] & mc, zc = zw(r)[wc] & mc;
            bool xt = xw(r)[wt] & mt, zt = zw(r)[wt] & mt;
            sign_[r] ^= (xc & zt & !(xt ^ zc));
            if (xc) xw(r)[wt] ^= mt;
            if (zt) zw(r)[wc] ^= mc;
        }
    }

    /// Measures a signed Pauli product. If +/-p is in the stabilizer group the
    /// outcome is forced, deterministic=true, and the state is unchanged.
    /// Otherwise a fair coin from `bits` picks the outcome and the state is
    /// projected accordingly.
    MeasureResult measure(const PauliString& p, BitSource& bits) {
        check_obs(p);
        std::size_t pivot = find_anticommuting_stabilizer(p);
        if (pivot == 2 * n_) return {deterministic_value(p), true};
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            if (r == pivot) continue;
            if (row_anticommutes(r, p)) row_mult(r, pivot);
        }
        copy_row(pivot - n_, pivot);
        int value = bits.bit() ? -1 : +1;
        // The post-measurement stabilizer is value * p.
        set_row(pivot, p, (p.phase_exponent() == 2) != (value < 0));
        return {value, false};
    }

    /// +1/-1 when +/-p is in the stabilizer group, else 0. Never mutates.
    int expectation(const PauliString& p) const {
        check_obs(p);
        if (find_anticommuting_stabilizer(p) != 2 * n_) return 0;
        return deterministic_value(p);
    }

    /// Assembles a tableau from explicit destabilizer/stabilizer rows. The
    /// caller is responsible for the symplectic pairing; check_invariants()
    /// verifies it.
    static Tableau from_rows(const std::vector<PauliString>& destabs,
                             const std::vector<PauliString>& stabs) {
        std::size_t n = stabs.size();
        if (n == 0 || destabs.size() != n) throw input_error("row count mismatch");
        Tableau t(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (destabs[i].num_qubits() != n || stabs[i].num_qubits() != n)
                throw input_error("row size mismatch");
            if (!destabs[i].hermitian() || !stabs[i].hermitian())
                throw input_error("row sign must be +1 or -1");
            t.set_row(i, destabs[i], destabs[i].phase_exponent() == 2);
            t.set_row(n + i, stabs[i], stabs[i].phase_exponent() == 2);
        }
        return t;
    }

    /// Structural self-check used by property tests: symplectic pairing of
    /// destabilizers against stabilizers and pairwise commutation.
    bool check_invariants() const {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                bool anti_ds = rows_anticommute(i, n_ + j);
                if (anti_ds != (i == j)) return false;
                if (j > i && rows_anticommute(n_ + i, n_ + j)) return false;
                if (j > i && rows_anticommute(i, j)) return false;
            }
        }
        return true;
    }

  private:
    std::uint64_t* xw(std::size_t r) { return bits_.data() + r * 2 * words_; }
    std::uint64_t* zw(std::size_t r) { return bits_.data() + r * 2 * words_ + words_; }
    const std::uint64_t* xw(std::size_t r) const { return bits_.data() + r * 2 * words_; }
    const std::uint64_t* zw(std::size_t r) const { return bits_.data() + r * 2 * words_ + words_; }

    void check_q(std::size_t q) const {
        if (q >= n_) throw input_error("qubit index out of range");
    }
    void check_obs(const PauliString& p) const {
        if (p.num_qubits() != n_) throw input_error("observable size mismatch");
        if (!p.hermitian()) throw input_error("observable sign must be +1 or -1");
    }

    PauliString row_pauli(std::size_t r) const {
        PauliString p(n_);
        for (std::size_t q = 0; q < n_; ++q) {
            if ((xw(r)[q >> 6] >> (q & 63)) & 1ULL) p.set_x(q, true);
            if ((zw(r)[q >> 6] >> (q & 63)) & 1ULL) p.set_z(q, true);
        }
        p.set_phase_exponent(sign_[r] ? 2 : 0);
        return p;
    }

    bool row_anticommutes(std::size_t r, const PauliString& p) const {
        auto [lo, hi] = p.word_range();
        const std::uint64_t* px = p.x_words();
        const std::uint64_t* pz = p.z_words();
        unsigned parity = 0;
        for (std::size_t k = lo; k < hi; ++k) {
            parity ^= std::popcount(xw(r)[k] & pz[k]);
            parity ^= std::popcount(zw(r)[k] & px[k]);
        }
        return parity & 1;
    }

    bool rows_anticommute(std::size_t r, std::size_t s) const {
        unsigned parity = 0;
        for (std::size_t k = 0; k < words_; ++k) {
            parity ^= std::popcount(xw(r)[k] & zw(s)[k]);
            parity ^= std::popcount(zw(r)[k] & xw(s)[k]);
        }
        return parity & 1;
    }

    std::size_t find_anticommuting_stabilizer(const PauliString& p) const {
        for (std::size_t r = n_; r < 2 * n_; ++r)
            if (row_anticommutes(r, p)) return r;
        return 2 * n_;
    }

    /// dst := dst * src (rows must commute; phases tracked exactly).
    void row_mult(std::size_t dst, std::size_t src) {
        unsigned w = 2u * sign_[dst] + 2u * sign_[src];
        std::uint64_t* xd = xw(dst);
        std::uint64_t* zd = zw(dst);
        const std::uint64_t* xs = xw(src);
        const std::uint64_t* zs = zw(src);
        for (std::size_t k = 0; k < words_; ++k) {
            w += std::popcount(xd[k] & zd[k]);
            w += std::popcount(xs[k] & zs[k]);
            w += 2 * std::popcount(zd[k] & xs[k]);
            xd[k] ^= xs[k];
            zd[k] ^= zs[k];
            w += 3u * std::popcount(xd[k] & zd[k]);
        }
        assert((w & 1) == 0);
        sign_[dst] = (w >> 1) & 1;
    }

    void copy_row(std::size_t dst, std::size_t src) {
        std::copy(xw(src), xw(src) + 2 * words_, xw(dst));
        sign_[dst] = sign_[src];
    }

    void set_row(std::size_t r, const PauliString& p, bool negative) {
        std::copy(p.x_words(), p.x_words() + words_, xw(r));
        std::copy(p.z_words(), p.z_words() + words_, zw(r));
        sign_[r] = negative ? 1 : 0;
    }

    /// Sign of the group element with p's letters; call only when no
    /// stabilizer anticommutes with p. The element is the product of the
    /// stabilizer rows picked out by anticommuting destabilizers.
    int deterministic_value(const PauliString& p) const {
        std::vector<std::uint64_t> acc(2 * words_, 0);
        unsigned w = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!row_anticommutes(i, p)) continue;
            const std::uint64_t* xs = xw(n_ + i);
            const std::uint64_t* zs = zw(n_ + i);
            w += 2u * sign_[n_ + i];
            for (std::size_t k = 0; k < words_; ++k) {
                w += std::popcount(acc[k] & acc[words_ + k]);
                w += std::popcount(xs[k] & zs[k]);
                w += 2 * std::popcount(acc[words_ + k] & xs[k]);
                acc[k] ^= xs[k];
                acc[words_ + k] ^= zs[k];
                w += 3u * std::popcount(acc[k] & acc[words_ + k]);
            }
        }
        // acc must now carry exactly p's letters.
        for (std::size_t k = 0; k < words_; ++k) {
            assert(acc[k] == p.x_words()[k] && acc[words_ + k] == p.z_words()[k]);
        }
        unsigned mine = w & 3;
        unsigned theirs = p.phase_exponent();
        assert(((mine - theirs) & 1) == 0);
        return mine == theirs ? +1 : -1;
    }

    std::size_t n_, words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint8_t> sign_;
};

/// Runs a circuit in place; measurement outcomes in op order.
inline std::vector<MeasureResult> run(Tableau& t, const Circuit& c, BitSource& bits) {
    if (c.n > t.num_qubits()) throw input_error("circuit wider than state");
    std::vector<MeasureResult> out;
    for (const auto& g : c.ops) {
        if (g.is_measurement()) {
            out.push_back(t.measure(g.observable->embedded(t.num_qubits()), bits));
        } else {
            t.apply(g);
        }
    }
    return out;
}

inline Tableau new_tableau(std::size_t n) { return Tableau(n); }

inline MeasureResult measure_pauli(Tableau& t, const PauliString& p, BitSource& bits) {
    return t.measure(p, bits);
}

inline int expectation(const Tableau& t, const PauliString& p) { return t.expectation(p); }

}  // namespace anyonbraid
