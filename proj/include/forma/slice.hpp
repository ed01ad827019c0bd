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

#ifndef FORMA_SLICE_HPP
#define FORMA_SLICE_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "forma/strength.hpp"

namespace forma {

namespace detail {

/// Enumerates r x n matrices in reduced row-echelon form of full rank r over
/// GF(p): pivot column sets in lexicographic order, free entries as an
/// ascending base-p counter (row-major, earliest slot most significant).
/// Calls fn with the matrix; stops when fn returns true.
inline bool enumerate_rref(size_t n, size_t r, uint32_t p,
                           const std::function<bool(const std::vector<FpVec>&)>& fn) {
    std::vector<size_t> pivots(r);
    for (size_t i = 0; i < r; ++i) pivots[i] = i;

    auto next_combination = [&]() {
        size_t i = r;
        while (i-- > 0) {
            if (pivots[i] + (r - i) <= n - 1 + 0u) {
                ++pivots[i];
                for (size_t j = i + 1; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<FpVec> m(r, FpVec(n, 0));
    do {
        // free slots: (i, j) with j > pivots[i] and j not a pivot column
        std::vector<std::pair<size_t, size_t>> free_slots;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = pivots[i] + 1; j < n; ++j) {
                bool is_pivot = false;
                for (size_t k = 0; k < r; ++k)
                    if (pivots[k] == j) is_pivot = true;
                if (!is_pivot) free_slots.emplace_back(i, j);
            }
        std::vector<uint32_t> counter(free_slots.size(), 0);
        for (;;) {
            for (auto& row : m) std::fill(row.begin(), row.end(), 0);
            for (size_t i = 0; i < r; ++i) m[i][pivots[i]] = 1;
            for (size_t s = 0; s < free_slots.size(); ++s)
                m[free_slots[s].first][free_slots[s].second] = counter[s];
            if (fn(m)) return true;
            // increment, last slot fastest
            size_t s = free_slots.size();
            while (s-- > 0) {
                if (++counter[s] < p) break;
                counter[s] = 0;
            }
            bool wrapped = true;
            for (size_t t = 0; t < free_slots.size(); ++t)
                if (counter[t]) wrapped = false;
            if (wrapped || free_slots.empty()) break;
        }
    } while (next_combination());
    return false;
}

}  // namespace detail

struct SliceOptions {
    uint64_t node_budget = 0;
};

/// Searches codimension-r subspaces of the coordinate space on which f
/// vanishes identically, via row-echelon representatives. Vanishing is
/// checked by substituting the subspace parametrization into f.
inline std::optional<SubspaceCertificate> slice_rank_upper(const Poly& f, long r,
                                                           const SliceOptions& opt = {},
                                                           uint64_t* nodes_out = nullptr) {
    detail::require_standard_graded(f.ring());
    if (!f.ring()->field().is_finite())
        throw Error(ErrorKind::InfiniteFieldExhaustion,
                    "subspace enumeration requires a finite field");
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "slice rank of the zero form");
    if (!weighted_degree(f).homogeneous)
        throw Error(ErrorKind::NotHomogeneous, "input must be homogeneous");
    const RingPtr& ring = f.ring();
    size_t n = ring->var_count();
    if (r < 1 || r > static_cast<long>(n))
        throw Error(ErrorKind::InvalidInput, "codimension out of range");
    uint32_t p = ring->field().characteristic();
    const FieldSpec field = ring->field();

    // parameter ring for the subspace coordinates
    std::vector<VarDecl> svars;
    for (size_t j = 0; j < n - r; ++j) svars.push_back({"s" + std::to_string(j + 1), 1});
    RingPtr sring = WeightedRing::make(field, svars);

    uint64_t nodes = 0;
    std::optional<SubspaceCertificate> found;
    detail::enumerate_rref(n, static_cast<size_t>(r), p, [&](const std::vector<FpVec>& m) {
        ++nodes;
        if (opt.node_budget && nodes > opt.node_budget)
            throw Error(ErrorKind::InvalidInput, "search node budget exceeded");
        // pivot columns of m
        std::vector<long> pivot_of(n, -1);
        std::vector<size_t> pivots;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < n; ++j)
                if (m[i][j] == 1) {
                    bool earlier = false;
                    for (size_t jj = 0; jj < j; ++jj)
                        if (m[i][jj]) earlier = true;
                    if (!earlier) {
                        pivot_of[j] = static_cast<long>(i);
                        pivots.push_back(j);
                        break;
                    }
                }
        // parametrization: free column j -> s_j; pivot column -> -sum m[i][j] s_j
        std::map<std::string, Poly> img;
        size_t sidx = 0;
        std::vector<size_t> free_to_s(n, 0);
        for (size_t j = 0; j < n; ++j)
            if (pivot_of[j] < 0) free_to_s[j] = sidx++;
        for (size_t j = 0; j < n; ++j) {
            if (pivot_of[j] < 0) {
                img.emplace(ring->vars()[j].name, Poly::variable(sring, free_to_s[j]));
            } else {
                Poly image = Poly::zero(sring);
                size_t i = static_cast<size_t>(pivot_of[j]);
                for (size_t jj = 0; jj < n; ++jj) {
                    if (pivot_of[jj] >= 0 || !m[i][jj]) continue;
                    image = image - Poly::variable(sring, free_to_s[jj])
                                        .scaled(Scalar::of_int(field, m[i][jj]));
                }
                img.emplace(ring->vars()[j].name, image);
            }
        }
        if (!substitute(f, sring, img).is_zero()) return false;
        SubspaceCertificate cert{ring, {}};
        for (size_t i = 0; i < m.size(); ++i) {
            Poly form = Poly::zero(ring);
            for (size_t j = 0; j < n; ++j)
                if (m[i][j]) form = form + Poly::variable(ring, j).scaled(Scalar::of_int(field, m[i][j]));
            cert.cutting_forms.push_back(form);
        }
        found = std::move(cert);
        return true;
    });
    if (nodes_out) *nodes_out += nodes;
    return found;
}

/// Smallest r admitting a SubspaceCertificate. Always terminates: the origin
/// (r = n) works for every homogeneous form.
inline SearchReport slice_rank_exact(const Poly& f, const SliceOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    if (f.is_zero()) {
        report.mode = SearchReport::Mode::Exact;
        report.value = 0;
        return report;
    }
    size_t n = f.ring()->var_count();
    for (long r = 1; r <= static_cast<long>(n); ++r) {
        auto cert = slice_rank_upper(f, r, opt, &report.nodes);
        if (cert) {
            report.mode = SearchReport::Mode::Exact;
            report.value = r;
            report.subspace = std::move(cert);
            break;
        }
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// Converts a subspace certificate into a strength decomposition: f vanishes
/// on the subspace cut out by the forms, so f lies in the ideal they
/// generate and the cofactors solve sum l_i h_i = f.
inline std::optional<Decomposition> slice_certificate_decomposition(
    const Poly& f, const SubspaceCertificate& cert) {
    auto hs = cofactor_solve(f, cert.cutting_forms);
    if (!hs) return std::nullopt;
    Decomposition D{f.ring(), weighted_degree(f).degree, {}};
    for (size_t i = 0; i < cert.cutting_forms.size(); ++i) {
        if ((*hs)[i].is_zero()) continue;
        D.pairs.push_back({cert.cutting_forms[i], (*hs)[i]});
    }
    return D;
}

}  // namespace forma

#endif
