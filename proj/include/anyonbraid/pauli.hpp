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
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "anyonbraid/errors.hpp"

namespace anyonbraid {

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

/// Signed n-qubit Pauli operator. Qubit j carries X iff x(j) and not z(j),
/// Z iff z(j) and not x(j), Y iff both. The stored phase exponent k means a
/// global factor i^k in front of the I/X/Y/Z letters.
///
/// Sign convention, fixed once for the whole library: XZ = -iY, equivalently
/// Y = iXZ and ZX = +iY. Multiplication tracks phases exactly; tableau rows
/// only ever hold k in {0, 2}, i.e. signs +1/-1.
class PauliString {
  public:
    PauliString() : n_(0), words_(0) {}

    explicit PauliString(std::size_t n)
        : n_(n), words_((n + 63) / 64), bits_(2 * words_, 0) {}

    static PauliString identity(std::size_t n) { return PauliString(n); }

    /// Single-site operator, e.g. single(6, 2, Pauli::X) is X on qubit 2
    /// (0-based) of a 6-qubit register.
    static PauliString single(std::size_t n, std::size_t q, Pauli p, bool negative = false) {
        PauliString out(n);
        out.set_pauli(q, p);
        if (negative) out.phase_ = 2;
        return out;
    }

    std::size_t num_qubits() const { return n_; }
    std::size_t num_words() const { return words_; }

    bool x(std::size_t q) const { return (bits_[q >> 6] >> (q & 63)) & 1ULL; }
    bool z(std::size_t q) const { return (bits_[words_ + (q >> 6)] >> (q & 63)) & 1ULL; }

    void set_x(std::size_t q, bool v) { set_bit(bits_[q >> 6], q, v); }
    void set_z(std::size_t q, bool v) { set_bit(bits_[words_ + (q >> 6)], q, v); }

    Pauli pauli(std::size_t q) const {
        return static_cast<Pauli>((x(q) ? 1 : 0) | (z(q) ? 2 : 0));
    }
    void set_pauli(std::size_t q, Pauli p) {
        set_x(q, static_cast<std::uint8_t>(p) & 1);
        set_z(q, static_cast<std::uint8_t>(p) & 2);
    }

    /// Global phase as a power of i (0: +1, 1: +i, 2: -1, 3: -i).
    std::uint8_t phase_exponent() const { return phase_; }
    void set_phase_exponent(std::uint8_t k) { phase_ = k & 3; }
    void mul_phase(std::uint8_t k) { phase_ = (phase_ + k) & 3; }

    bool hermitian() const { return (phase_ & 1) == 0; }
    /// +1 or -1; only meaningful when hermitian().
    int sign() const { return phase_ == 0 ? +1 : -1; }

    const std::uint64_t* x_words() const { return bits_.data(); }
    const std::uint64_t* z_words() const { return bits_.data() + words_; }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t k = 0; k < words_; ++k)
            w += std::popcount(bits_[k] | bits_[words_ + k]);
        return w;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t q = 0; q < n_; ++q)
            if (x(q) || z(q)) s.push_back(q);
        return s;
    }

    /// [lo, hi) range of 64-bit words carrying any support; empty when identity.
    std::pair<std::size_t, std::size_t> word_range() const {
        std::size_t lo = words_, hi = 0;
        for (std::size_t k = 0; k < words_; ++k) {
            if (bits_[k] | bits_[words_ + k]) {
                lo = std::min(lo, k);
                hi = k + 1;
            }
        }
        if (hi <= lo) return {0, 0};
        return {lo, hi};
    }

    bool commutes_with(const PauliString& o) const {
        require_same_size(o);
        std::uint64_t parity = 0;
        for (std::size_t k = 0; k < words_; ++k) {
            parity ^= std::popcount(bits_[k] & o.bits_[words_ + k]);
            parity ^= std::popcount(bits_[words_ + k] & o.bits_[k]);
        }
        return (parity & 1) == 0;
    }

    friend PauliString operator*(const PauliString& a, const PauliString& b) {
        a.require_same_size(b);
        PauliString out(a.n_);
        // Work in the i^w X^x Z^z form: w = phase + #Y. Moving b's X block past
        // a's Z block costs (-1)^|za & xb|.
        unsigned w = a.phase_ + b.phase_;
        for (std::size_t k = 0; k < a.words_; ++k) {
            std::uint64_t xa = a.bits_[k], za = a.bits_[a.words_ + k];
            std::uint64_t xb = b.bits_[k], zb = b.bits_[b.words_ + k];
            w += std::popcount(xa & za);       // #Y in a
            w += std::popcount(xb & zb);       // #Y in b
            w += 2 * std::popcount(za & xb);   // reordering sign
            std::uint64_t xc = xa ^ xb, zc = za ^ zb;
            // back to letter form: subtract #Y of the product (mod 4)
            w += 3u * std::popcount(xc & zc);
            out.bits_[k] = xc;
            out.bits_[a.words_ + k] = zc;
        }
        out.phase_ = static_cast<std::uint8_t>(w & 3);
        return out;
    }

    /// Same operator on a wider register (qubit indices unchanged).
    PauliString embedded(std::size_t new_n) const {
        if (new_n < n_) throw input_error("cannot shrink a pauli");
        PauliString out(new_n);
        out.phase_ = phase_;
        for (std::size_t q = 0; q < n_; ++q) out.set_pauli(q, pauli(q));
        return out;
    }

    bool same_letters(const PauliString& o) const {
        return n_ == o.n_ && bits_ == o.bits_;
    }
    bool operator==(const PauliString& o) const {
        return same_letters(o) && phase_ == o.phase_;
    }

    /// Text form like "-X1*Z3" or "+i Y2"; qubit indices are 1-based in text.
    std::string str() const {
        static const char* kPhase[] = {"+", "+i", "-", "-i"};
        std::string out = kPhase[phase_];
        bool any = false;
        for (std::size_t q = 0; q < n_; ++q) {
            Pauli p = pauli(q);
            if (p == Pauli::I) continue;
            if (any) out += '*';
            out += "IXZY"[static_cast<int>(p)];
            out += std::to_string(q + 1);
            any = true;
        }
        if (!any) out += 'I';
        return out;
    }

    /// Parses the text form. When n == 0 the qubit count is the largest index
    /// mentioned; indices in text are 1-based.
    static PauliString parse(const std::string& text, std::size_t n = 0) {
        std::size_t pos = 0;
        auto fail = [&](const std::string& why) -> PauliString {
            throw input_error("bad pauli '" + text + "': " + why);
        };
        std::uint8_t phase = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') phase = 2;
            ++pos;
            if (pos < text.size() && text[pos] == 'i') {
                phase = (phase + 1) & 3;
                ++pos;
            }
        }
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::vector<std::pair<std::size_t, Pauli>> terms;
        std::size_t max_q = 0;
        if (text.substr(pos) != "I") {
            while (pos < text.size()) {
                char c = text[pos];
                Pauli p;
                if (c == 'X') p = Pauli::X;
                else if (c == 'Y') p = Pauli::Y;
                else if (c == 'Z') p = Pauli::Z;
                else return fail("expected X, Y or Z");
                ++pos;
                std::size_t start = pos;
                while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
                if (pos == start) return fail("missing qubit index");
                std::size_t q = std::strtoull(text.substr(start, pos - start).c_str(), nullptr, 10);
                if (q == 0) return fail("indices are 1-based");
                terms.emplace_back(q - 1, p);
                max_q = std::max(max_q, q);
                if (pos < text.size()) {
                    if (text[pos] != '*') return fail("expected '*'");
                    ++pos;
                    if (pos == text.size()) return fail("trailing '*'");
                }
            }
        }
        if (n == 0) n = max_q;
        if (max_q > n) throw input_error("bad pauli '" + text + "': index beyond register");
        PauliString out(n);
        out.phase_ = phase;
        for (auto& [q, p] : terms) {
            if (out.pauli(q) != Pauli::I) return fail("duplicate qubit");
            out.set_pauli(q, p);
        }
        return out;
    }

  private:
    static void set_bit(std::uint64_t& w, std::size_t q, bool v) {
        std::uint64_t m = 1ULL << (q & 63);
        w = v ? (w | m) : (w & ~m);
    }

    void require_same_size(const PauliString& o) const {
        if (n_ != o.n_) throw input_error("pauli size mismatch");
    }

    std::size_t n_, words_;
    std::vector<std::uint64_t> bits_;  // x block then z block
    std::uint8_t phase_ = 0;
};

inline PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

inline bool commutes(const PauliString& a, const PauliString& b) { return a.commutes_with(b); }

}  // namespace anyonbraid
