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
#include <optional>
#include <vector>

#include "anyonbraid/errors.hpp"

namespace anyonbraid::gf2 {

/// Dense bit matrix over GF(2), rows packed into 64-bit words. Backs the
/// rank/membership machinery: generator independence, loop decomposition,
/// cluster fixup solves.
class BitMatrix {
  public:
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + (c >> 6)] >> (c & 63)) & 1ULL;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = 1ULL << (c & 63);
        auto& w = data_[r * words_ + (c >> 6)];
        w = v ? (w | m) : (w & ~m);
    }

    void xor_row(std::size_t dst, std::size_t src) {
        auto* d = &data_[dst * words_];
        const auto* s = &data_[src * words_];
        for (std::size_t k = 0; k < words_; ++k) d[k] ^= s[k];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < words_; ++k)
            std::swap(data_[a * words_ + k], data_[b * words_ + k]);
    }

    bool row_empty(std::size_t r) const {
        for (std::size_t k = 0; k < words_; ++k)
            if (data_[r * words_ + k]) return false;
        return true;
    }

    /// In-place reduced row echelon form. Returns the pivot column of each
    /// echelon row, in order (size = rank).
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
            std::size_t p = row;
            while (p < rows_ && !get(p, c)) ++p;
            if (p == rows_) continue;
            swap_rows(p, row);
            for (std::size_t r = 0; r < rows_; ++r)
                if (r != row && get(r, c)) xor_row(r, row);
            pivots.push_back(c);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        BitMatrix copy = *this;
        return copy.rref().size();
    }

    /// Solves A x = b. Returns the lexicographically smallest solution under
    /// the order that prefers excluding low-index variables, or nullopt when
    /// inconsistent. Deterministic, so decompositions are reproducible.
    std::optional<std::vector<std::uint8_t>> solve(const std::vector<std::uint8_t>& b) const {
        BitMatrix aug(rows_, cols_ + 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < words_; ++k) aug.data_[r * aug.words_ + k] = data_[r * words_ + k];
            // clear stray bits beyond cols_, then append b
            if (cols_ & 63) {
                std::uint64_t mask = (1ULL << (cols_ & 63)) - 1;
                aug.data_[r * aug.words_ + (cols_ >> 6)] &= mask;
            }
            aug.set(r, cols_, b[r] != 0);
        }
        auto pivots = aug.rref();
        std::vector<std::uint8_t> x(cols_, 0);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (pivots[i] == cols_) return std::nullopt;  // 0 = 1 row
        }
        // Back-substitution with free variables at 0: for each pivot row the
        // pivot variable equals the augmented bit. This is the lex-min
        // solution; see minimize() for coset reduction against a nullspace.
        std::size_t row = 0;
        for (std::size_t c : pivots) {
            x[c] = aug.get(row, cols_) ? 1 : 0;
            ++row;
        }
        // Free variables are zero, but pivot-variable values above already
        // account only for free vars = 0; rref guarantees consistency.
        // The result is not yet lex-minimal in general; reduce by nullspace.
        auto ns = nullspace();
        minimize(x, ns);
        return x;
    }

    /// Basis of the right nullspace, each vector length cols().
    std::vector<std::vector<std::uint8_t>> nullspace() const {
        BitMatrix copy = *this;
        auto pivots = copy.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<std::uint8_t>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<std::uint8_t> v(cols_, 0);
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                if (copy.get(i, f)) v[pivots[i]] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }

  private:
    /// Reduces x to the lex-min member of x + span(basis), preferring 0 at
    /// low indices.
    static void minimize(std::vector<std::uint8_t>& x,
                         std::vector<std::vector<std::uint8_t>> basis) {
        std::size_t cols = x.size();
        // Bring the basis to row echelon form over column order 0..cols-1.
        std::size_t row = 0;
        for (std::size_t c = 0; c < cols && row < basis.size(); ++c) {
            std::size_t p = row;
            while (p < basis.size() && !basis[p][c]) ++p;
            if (p == basis.size()) continue;
            std::swap(basis[p], basis[row]);
            for (std::size_t r = 0; r < basis.size(); ++r) {
                if (r == row || !basis[r][c]) continue;
                for (std::size_t k = 0; k < cols; ++k) basis[r][k] ^= basis[row][k];
            }
            if (x[c]) {
                for (std::size_t k = 0; k < cols; ++k) x[k] ^= basis[row][k];
            }
            ++row;
        }
    }

    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

}  // namespace anyonbraid::gf2
