/*
   Copyright 2026 The forma authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FORMA_LINALG_HPP
#define FORMA_LINALG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "forma/scalar.hpp"

namespace forma {

// ---------------------------------------------------------------------------
// Exact dense linear algebra over any Scalar field. Row-major.
// ---------------------------------------------------------------------------

using ScalarVec = std::vector<Scalar>;
using ScalarMat = std::vector<ScalarVec>;

inline size_t scalar_rank(ScalarMat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        Scalar inv = m[rank][col].inverse();
        for (size_t j = col; j < cols; ++j) m[rank][j] = m[rank][j] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (size_t j = col; j < cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Solves A x = b for one solution (A given by columns). Returns nullopt when
/// inconsistent; free coordinates are set to zero.
inline std::optional<ScalarVec> solve_columns(const std::vector<ScalarVec>& columns,
                                              const ScalarVec& target, const FieldSpec& field) {
    size_t rows = target.size(), cols = columns.size();
    ScalarMat m(rows, ScalarVec(cols + 1, Scalar::zero(field)));
    for (size_t c = 0; c < cols; ++c)
        for (size_t r = 0; r < rows; ++r) m[r][c] = columns[c][r];
    for (size_t r = 0; r < rows; ++r) m[r][cols] = target[r];

    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        Scalar inv = m[rank][col].inverse();
        for (size_t j = col; j <= cols; ++j) m[rank][j] = m[rank][j] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (size_t j = col; j <= cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!m[r][cols].is_zero()) return std::nullopt;
    ScalarVec x(cols, Scalar::zero(field));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m[i][cols];
    return x;
}

/// Dense coefficient vectors over GF(p), p < 2^16, as uint32 residues; the
/// bit-packed and modular search kernels build on this layout.
using FpVec = std::vector<uint32_t>;

}  // namespace forma

#endif
