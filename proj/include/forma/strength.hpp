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

#ifndef FORMA_STRENGTH_HPP
#define FORMA_STRENGTH_HPP

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

#include "forma/groebner.hpp"
#include "forma/linalg.hpp"
#include "forma/poly.hpp"

namespace forma {

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

struct DecompositionPair {
    Poly g;
    Poly h;
};

/// A decomposition f = sum g_i * h_i with homogeneous factors whose degrees
/// sit strictly between 0 and deg(f).
struct Decomposition {
    RingPtr ring;
    long degree = 0;
    std::vector<DecompositionPair> pairs;

    long length() const { return static_cast<long>(pairs.size()); }
};

/// Checks the factor-degree constraints (throwing MalformedDecomposition on
/// violation) and returns whether the pairs sum to f exactly.
inline bool verify_decomposition(const Poly& f, const Decomposition& D) {
    if (!same_ring(f.ring(), D.ring))
        throw Error(ErrorKind::RingMismatch, "decomposition targets a different ring");
    long d = D.degree;
    for (size_t i = 0; i < D.pairs.size(); ++i) {
        const auto& pr = D.pairs[i];
        auto bad = [&](const std::string& why) {
            throw Error(ErrorKind::MalformedDecomposition,
                        "pair " + std::to_string(i + 1) + ": " + why);
        };
        if (pr.g.is_zero() || pr.h.is_zero()) bad("zero factor");
        auto dg = weighted_degree(pr.g), dh = weighted_degree(pr.h);
        if (!dg.homogeneous) bad("left factor is not homogeneous");
        if (!dh.homogeneous) bad("right factor is not homogeneous");
        if (dg.degree < 1 || dg.degree > d - 1)
            bad("left degree " + std::to_string(dg.degree) + " outside [1, " +
                std::to_string(d - 1) + "]");
        if (dh.degree < 1 || dh.degree > d - 1)
            bad("right degree " + std::to_string(dh.degree) + " outside [1, " +
                std::to_string(d - 1) + "]");
        if (dg.degree + dh.degree != d) bad("factor degrees do not sum to the target degree");
    }
    Poly sum = Poly::zero(f.ring());
    for (const auto& pr : D.pairs) sum = sum + pr.g * pr.h;
    return sum == f;
}

// ---------------------------------------------------------------------------
// Degree-split shapes
// ---------------------------------------------------------------------------

/// Multiset of factor-degree pairs (e, d-e), 1 <= e <= d-e, one per summand.
/// Stored as the sorted list of the low degrees e.
struct DegreeSplitShape {
    long degree = 0;
    std::vector<long> lows;

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < lows.size(); ++i) {
            if (i) s += "+";
            s += "(" + std::to_string(lows[i]) + "," + std::to_string(degree - lows[i]) + ")";
        }
        return s;
    }
};

/// All shapes for decompositions of length r in degree d, in lexicographic
/// order of the low-degree lists.
inline std::vector<DegreeSplitShape> enumerate_shapes(long d, long r) {
    std::vector<DegreeSplitShape> out;
    std::vector<long> cur;
    long emax = d / 2;
    auto rec = [&](auto&& self, long low) -> void {
        if (static_cast<long>(cur.size()) == r) {
            out.push_back(DegreeSplitShape{d, cur});
            return;
        }
        for (long e = low; e <= emax; ++e) {
            cur.push_back(e);
            self(self, e);
            cur.pop_back();
        }
    };
    if (d >= 2 && r >= 1) rec(rec, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Subspace certificates (slice rank)
// ---------------------------------------------------------------------------

/// A codimension-r linear subspace on which f vanishes, cut out by
/// row-reduced linear forms.
struct SubspaceCertificate {
    RingPtr ring;
    std::vector<Poly> cutting_forms;

    long codimension() const { return static_cast<long>(cutting_forms.size()); }
};

// ---------------------------------------------------------------------------
// Search reports
// ---------------------------------------------------------------------------

struct ShapeTrace {
    long r = 0;
    DegreeSplitShape shape;
    uint64_t tuples = 0;
    bool completed = false;
};

struct SearchReport {
    enum class Mode { Exact, UpperOnly, ExhaustedBelow };
    Mode mode = Mode::ExhaustedBelow;
    /// Exact: the strength. UpperOnly: the certified upper bound.
    /// ExhaustedBelow: the largest length whose search space was exhausted
    /// (so the value is strictly larger).
    long value = 0;
    std::optional<Decomposition> certificate;
    std::optional<SubspaceCertificate> subspace;
    std::vector<ShapeTrace> shapes;
    uint64_t nodes = 0;
    double elapsed_ms = 0;
    int workers = 1;

    std::string mode_name() const {
        switch (mode) {
            case Mode::Exact: return "exact";
            case Mode::UpperOnly: return "upper-only";
            case Mode::ExhaustedBelow: return "exhausted-below";
        }
        return "?";
    }
};

struct SearchOptions {
    long r_max = 4;
    int workers = 1;
    uint64_t node_budget = 0;  // 0 = unlimited
};

// ---------------------------------------------------------------------------
// Cofactor solving: sum g_i h_i = f is linear in the h_i once the g_i are
// fixed. Field-generic dense path.
// ---------------------------------------------------------------------------

inline std::optional<std::vector<Poly>> cofactor_solve(const Poly& f,
                                                       const std::vector<Poly>& fixed) {
    auto df = weighted_degree(f);
    if (!df.homogeneous) throw Error(ErrorKind::NotHomogeneous, "target must be homogeneous");
    long d = df.degree;
    const RingPtr& ring = f.ring();
    const FieldSpec& field = ring->field();

    auto basis_d = basis_of_degree(ring, d);
    std::unordered_map<Monomial, int, MonomialHash> index;
    for (size_t i = 0; i < basis_d.size(); ++i) index.emplace(basis_d[i], static_cast<int>(i));

    std::vector<ScalarVec> columns;
    std::vector<std::pair<long, std::vector<Monomial>>> blocks;  // cofactor degree + basis
    for (const auto& g : fixed) {
        f.require_same(g);
        auto dg = weighted_degree(g);
        if (!dg.homogeneous || dg.degree < 1 || dg.degree > d - 1)
            throw Error(ErrorKind::DegreeMismatch,
                        "fixed factors must be homogeneous of degree in [1, d-1]");
        long e = d - dg.degree;
        auto basis_e = basis_of_degree(ring, e);
        for (const auto& m : basis_e) {
            ScalarVec col(basis_d.size(), Scalar::zero(field));
            for (const auto& t : g.terms()) {
                auto it = index.find(t.first * m);
                col[it->second] = col[it->second] + t.second;
            }
            columns.push_back(std::move(col));
        }
        blocks.emplace_back(e, std::move(basis_e));
    }

    ScalarVec target(basis_d.size(), Scalar::zero(field));
    for (const auto& t : f.terms()) target[index.at(t.first)] = t.second;

    auto x = solve_columns(columns, target, field);
    if (!x) return std::nullopt;

    std::vector<Poly> hs;
    size_t at = 0;
    for (const auto& [e, basis_e] : blocks) {
        std::vector<Poly::Term> terms;
        for (const auto& m : basis_e) {
            if (!(*x)[at].is_zero()) terms.emplace_back(m, (*x)[at]);
            ++at;
        }
        hs.push_back(Poly::from_terms(ring, std::move(terms)));
    }
    return hs;
}

// ---------------------------------------------------------------------------
// Exhaustive strength search over GF(p)
// ---------------------------------------------------------------------------

namespace detail {

struct SearchTables {
    RingPtr ring;
    long d = 0;
    std::map<long, std::vector<Monomial>> basis;
    std::unordered_map<Monomial, int, MonomialHash> index_d;
    // mul[e][i][j]: index in basis[d] of basis[e][i] * basis[d-e][j]
    std::map<long, std::vector<std::vector<int>>> mul;

    static SearchTables build(const RingPtr& ring, long d) {
        SearchTables t;
        t.ring = ring;
        t.d = d;
        for (long e = 1; e < d; ++e) t.basis[e] = basis_of_degree(ring, e);
        t.basis[d] = basis_of_degree(ring, d);
        const auto& bd = t.basis[d];
        for (size_t i = 0; i < bd.size(); ++i) t.index_d.emplace(bd[i], static_cast<int>(i));
        for (long e = 1; e < d; ++e) {
            const auto& be = t.basis[e];
            const auto& bc = t.basis[d - e];
            std::vector<std::vector<int>> table(be.size(), std::vector<int>(bc.size(), -1));
            for (size_t i = 0; i < be.size(); ++i)
                for (size_t j = 0; j < bc.size(); ++j)
                    table[i][j] = t.index_d.at(be[i] * bc[j]);
            t.mul[e] = std::move(table);
        }
        return t;
    }

    FpVec dense(const Poly& f) const {
        FpVec v(basis.at(d).size(), 0);
        for (const auto& t : f.terms()) v[index_d.at(t.first)] = t.second.residue();
        return v;
    }
};

/// Deterministic enumeration of projectively-normalized coefficient vectors:
/// the first nonzero coordinate (in basis order) is 1. Ordered by that lead
/// position, then by the remaining coordinates as an ascending base-p
/// counter with the earliest coordinate most significant.
struct MonicEnum {
    uint32_t p = 2;
    int k = 0;
    std::vector<uint64_t> block;  // block[L] = p^(k-1-L), saturated
    uint64_t count = 0;

    static uint64_t sat_mul(uint64_t a, uint64_t b) {
        if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
        return a * b;
    }

    static MonicEnum make(uint32_t p, int k) {
        MonicEnum e;
        e.p = p;
        e.k = k;
        e.block.resize(k);
        for (int L = k - 1; L >= 0; --L) {
            uint64_t b = 1;
            for (int i = L + 1; i < k; ++i) b = sat_mul(b, p);
            e.block[L] = b;
            uint64_t nc = e.count + b;
            e.count = nc < e.count ? UINT64_MAX : nc;
        }
        return e;
    }

    void decode(uint64_t idx, FpVec& out) const {
        std::fill(out.begin(), out.end(), 0);
        int L = 0;
        while (idx >= block[L]) {
            idx -= block[L];
            ++L;
        }
        out[L] = 1;
        for (int i = k - 1; i > L; --i) {
            out[i] = static_cast<uint32_t>(idx % p);
            idx /= p;
        }
    }
};

/// Bit-packed incremental echelon over GF(2) with rollback; rows are only
/// ever added, so undo clears the recorded pivots.
struct Gf2Kernel {
    int dim = 0;
    int words = 0;
    std::vector<uint64_t> rows;    // dim * words
    std::vector<uint64_t> filled;  // bitmask
    std::vector<int> undo;
    std::vector<uint64_t> tmp;

    void init(int dimension) {
        dim = dimension;
        words = (dimension + 63) / 64;
        rows.assign(static_cast<size_t>(dim) * words, 0);
        filled.assign((dim + 63) / 64, 0);
        tmp.assign(words, 0);
    }

    bool filled_at(int b) const { return (filled[b >> 6] >> (b & 63)) & 1; }

    int top(const uint64_t* v) const {
        for (int i = words - 1; i >= 0; --i)
            if (v[i]) return (i << 6) + 63 - __builtin_clzll(v[i]);
        return -1;
    }

    void insert(const uint64_t* col) {
        std::copy(col, col + words, tmp.begin());
        for (;;) {
            int b = top(tmp.data());
            if (b < 0) return;
            if (!filled_at(b)) {
                std::copy(tmp.begin(), tmp.end(), rows.begin() + static_cast<size_t>(b) * words);
                filled[b >> 6] |= uint64_t(1) << (b & 63);
                undo.push_back(b);
                return;
            }
            const uint64_t* row = rows.data() + static_cast<size_t>(b) * words;
            for (int i = 0; i < words; ++i) tmp[i] ^= row[i];
        }
    }

    bool contains(const uint64_t* v) {
        wbuf.assign(v, v + words);
        for (;;) {
            int b = top(wbuf.data());
            if (b < 0) return true;
            if (!filled_at(b)) return false;
            const uint64_t* row = rows.data() + static_cast<size_t>(b) * words;
            for (int i = 0; i < words; ++i) wbuf[i] ^= row[i];
        }
    }

    size_t mark() const { return undo.size(); }
    void rollback(size_t m) {
        while (undo.size() > m) {
            int b = undo.back();
            undo.pop_back();
            filled[b >> 6] &= ~(uint64_t(1) << (b & 63));
            std::fill_n(rows.begin() + static_cast<size_t>(b) * words, words, 0);
        }
    }

    std::vector<uint64_t> wbuf;
};

/// Dense incremental echelon over GF(p) with rollback; pivot = first nonzero
/// coordinate, rows normalized monic at their pivot.
struct FpKernel {
    int dim = 0;
    uint32_t p = 2;
    std::vector<uint32_t> rows;  // dim * dim
    std::vector<uint8_t> filled;
    std::vector<int> undo;
    std::vector<uint32_t> tmp;

    void init(int dimension, uint32_t prime) {
        dim = dimension;
        p = prime;
        rows.assign(static_cast<size_t>(dim) * dim, 0);
        filled.assign(dim, 0);
        tmp.assign(dim, 0);
    }

    int pivot(const uint32_t* v) const {
        for (int i = 0; i < dim; ++i)
            if (v[i]) return i;
        return -1;
    }

    void reduce_inplace(uint32_t* v, int b) const {
        const uint32_t* row = rows.data() + static_cast<size_t>(b) * dim;
        uint64_t f = v[b];
        for (int i = b; i < dim; ++i)
            v[i] = static_cast<uint32_t>((v[i] + (p - row[i]) * f) % p);
    }

    void insert(const uint32_t* col) {
        std::copy(col, col + dim, tmp.begin());
        for (;;) {
            int b = pivot(tmp.data());
            if (b < 0) return;
            if (!filled[b]) {
                uint64_t inv = Scalar::mod_inverse(tmp[b], p);
                uint32_t* row = rows.data() + static_cast<size_t>(b) * dim;
                for (int i = 0; i < dim; ++i) row[i] = static_cast<uint32_t>(tmp[i] * inv % p);
                filled[b] = 1;
                undo.push_back(b);
                return;
            }
            reduce_inplace(tmp.data(), b);
        }
    }

    bool contains(const uint32_t* v) {
        wbuf.assign(v, v + dim);
        for (;;) {
            int b = pivot(wbuf.data());
            if (b < 0) return true;
            if (!filled[b]) return false;
            reduce_inplace(wbuf.data(), b);
        }
    }

    size_t mark() const { return undo.size(); }
    void rollback(size_t m) {
        while (undo.size() > m) {
            int b = undo.back();
            undo.pop_back();
            filled[b] = 0;
            std::fill_n(rows.begin() + static_cast<size_t>(b) * dim, dim, 0);
        }
    }

    std::vector<uint32_t> wbuf;
};

/// One factor slot of a shape search: candidate enumeration plus (possibly
/// precomputed) packed columns of the multiplication map g * S_{d-e}.
struct FactorSlot {
    long e = 0;
    int cols = 0;  // dim of the cofactor space S_{d-e}
    MonicEnum cands;
    bool same_group_as_previous = false;

    // precomputed columns; gf2 layout: cand*cols*words, fp: cand*cols*dim
    bool precomputed = false;
    std::vector<uint64_t> packed2;
    std::vector<uint32_t> packedp;
};

struct ShapeSearchResult {
    bool found = false;
    std::vector<uint64_t> tuple;  // candidate indices per slot
    uint64_t tuples_tried = 0;
    bool budget_hit = false;
};

class ShapeSearcher {
public:
    ShapeSearcher(const SearchTables& tables, const Poly& f, const DegreeSplitShape& shape,
                  const SearchOptions& opt)
        : tables_(tables), opt_(opt), p_(f.ring()->field().characteristic()) {
        dim_d_ = static_cast<int>(tables.basis.at(tables.d).size());
        fvec_ = tables.dense(f);
        if (p_ == 2) {
            words_ = (dim_d_ + 63) / 64;
            f2_.assign(words_, 0);
            for (int i = 0; i < dim_d_; ++i)
                if (fvec_[i]) f2_[i >> 6] |= uint64_t(1) << (i & 63);
        }
        for (size_t s = 0; s < shape.lows.size(); ++s) {
            FactorSlot slot;
            slot.e = shape.lows[s];
            slot.cols = static_cast<int>(tables.basis.at(tables.d - slot.e).size());
            slot.cands = MonicEnum::make(p_, static_cast<int>(tables.basis.at(slot.e).size()));
            slot.same_group_as_previous = s > 0 && shape.lows[s - 1] == slot.e;
            slots_.push_back(std::move(slot));
        }
        precompute();
    }

    ShapeSearchResult run() { return run_range(0, slots_.empty() ? 0 : slots_[0].cands.count); }

    /// Searches with the first factor's candidate index restricted to
    /// [from, to) — the chunking axis for campaigns and worker pools.
    ShapeSearchResult run_range(uint64_t from, uint64_t to) {
        ShapeSearchResult result;
        std::atomic<uint64_t> cursor{from};
        std::atomic<uint64_t> tuples{0};
        std::atomic<bool> stop{false};
        std::atomic<bool> budget_hit{false};
        std::mutex result_mutex;

        int workers = std::max(1, opt_.workers);
        auto work = [&]() {
            Worker w(*this, stop, tuples, opt_.node_budget, budget_hit);
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) break;
                uint64_t i0 = cursor.fetch_add(1);
                if (i0 >= to) break;
                if (w.dfs_top(i0)) {
                    std::lock_guard<std::mutex> lk(result_mutex);
                    if (!result.found) {
                        result.found = true;
                        result.tuple = w.solution;
                    }
                    stop.store(true);
                    break;
                }
            }
            w.flush_tuples();
        };

        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < workers; ++i) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
        result.tuples_tried = tuples.load();
        result.budget_hit = budget_hit.load();
        return result;
    }

    /// Decodes a candidate index into a polynomial.
    Poly candidate_poly(size_t slot_idx, uint64_t cand) const {
        const FactorSlot& slot = slots_[slot_idx];
        FpVec v(slot.cands.k, 0);
        slot.cands.decode(cand, v);
        const auto& basis_e = tables_.basis.at(slot.e);
        std::vector<Poly::Term> terms;
        const FieldSpec& field = tables_.ring->field();
        for (int i = 0; i < slot.cands.k; ++i)
            if (v[i]) terms.emplace_back(basis_e[i], Scalar::of_int(field, v[i]));
        return Poly::from_terms(tables_.ring, std::move(terms));
    }

private:
    void precompute() {
        constexpr uint64_t kMemoryBudget = 48ull << 20;  // bytes per slot block
        for (auto& slot : slots_) {
            const auto& mul = tables_.mul.at(slot.e);
            uint64_t n = slot.cands.count;
            if (n > (1ull << 22)) continue;  // enumerate on the fly
            if (p_ == 2) {
                uint64_t bytes = n * slot.cols * words_ * 8;
                if (bytes <= kMemoryBudget) {
                    slot.packed2.assign(static_cast<size_t>(n) * slot.cols * words_, 0);
                    FpVec g(slot.cands.k, 0);
                    for (uint64_t c = 0; c < n; ++c) {
                        slot.cands.decode(c, g);
                        uint64_t* base =
                            slot.packed2.data() + static_cast<size_t>(c) * slot.cols * words_;
                        for (int i = 0; i < slot.cands.k; ++i) {
                            if (!g[i]) continue;
                            for (int j = 0; j < slot.cols; ++j) {
                                int row = mul[i][j];
                                base[static_cast<size_t>(j) * words_ + (row >> 6)] ^=
                                    uint64_t(1) << (row & 63);
                            }
                        }
                    }
                    slot.precomputed = true;
                }
            } else {
                uint64_t bytes = n * slot.cols * dim_d_ * 4;
                if (bytes <= kMemoryBudget) {
                    slot.packedp.assign(static_cast<size_t>(n) * slot.cols * dim_d_, 0);
                    FpVec g(slot.cands.k, 0);
                    for (uint64_t c = 0; c < n; ++c) {
                        slot.cands.decode(c, g);
                        uint32_t* base =
                            slot.packedp.data() + static_cast<size_t>(c) * slot.cols * dim_d_;
                        for (int i = 0; i < slot.cands.k; ++i) {
                            if (!g[i]) continue;
                            for (int j = 0; j < slot.cols; ++j) {
                                uint32_t* col = base + static_cast<size_t>(j) * dim_d_;
                                int row = mul[i][j];
                                col[row] = static_cast<uint32_t>((col[row] + g[i]) % p_);
                            }
                        }
                    }
                    slot.precomputed = true;
                }
            }
        }
    }

    struct Worker {
        const ShapeSearcher& s;
        std::atomic<bool>& stop;
        std::atomic<uint64_t>& shared_tuples;
        uint64_t budget;
        std::atomic<bool>& budget_hit;
        uint64_t local_tuples = 0;
        Gf2Kernel k2;
        FpKernel kp;
        std::vector<uint64_t> scratch2;
        std::vector<uint32_t> scratchp;
        std::vector<uint64_t> solution;
        FpVec gbuf;

        Worker(const ShapeSearcher& searcher, std::atomic<bool>& stop_flag,
               std::atomic<uint64_t>& tuple_counter, uint64_t node_budget,
               std::atomic<bool>& budget_flag)
            : s(searcher),
              stop(stop_flag),
              shared_tuples(tuple_counter),
              budget(node_budget),
              budget_hit(budget_flag) {
            if (s.p_ == 2)
                k2.init(s.dim_d_);
            else
                kp.init(s.dim_d_, s.p_);
            size_t max_cols = 0;
            size_t max_k = 0;
            for (const auto& slot : s.slots_) {
                max_cols = std::max(max_cols, static_cast<size_t>(slot.cols));
                max_k = std::max(max_k, static_cast<size_t>(slot.cands.k));
            }
            scratch2.assign(max_cols * std::max(1, s.words_), 0);
            scratchp.assign(max_cols * s.dim_d_, 0);
            gbuf.assign(max_k, 0);
            solution.assign(s.slots_.size(), 0);
        }

        void flush_tuples() {
            shared_tuples.fetch_add(local_tuples);
            local_tuples = 0;
        }

        /// Inserts the candidate's columns into the active kernel.
        void insert_candidate(size_t slot_idx, uint64_t cand) {
            const FactorSlot& slot = s.slots_[slot_idx];
            if (s.p_ == 2) {
                const uint64_t* cols;
                if (slot.precomputed) {
                    cols = slot.packed2.data() + static_cast<size_t>(cand) * slot.cols * s.words_;
                } else {
                    std::fill(scratch2.begin(), scratch2.end(), 0);
                    gbuf.assign(slot.cands.k, 0);
                    slot.cands.decode(cand, gbuf);
                    const auto& mul = s.tables_.mul.at(slot.e);
                    for (int i = 0; i < slot.cands.k; ++i) {
                        if (!gbuf[i]) continue;
                        for (int j = 0; j < slot.cols; ++j) {
                            int row = mul[i][j];
                            scratch2[static_cast<size_t>(j) * s.words_ + (row >> 6)] ^=
                                uint64_t(1) << (row & 63);
                        }
                    }
                    cols = scratch2.data();
                }
                for (int j = 0; j < slot.cols; ++j)
                    k2.insert(cols + static_cast<size_t>(j) * s.words_);
            } else {
                const uint32_t* cols;
                if (slot.precomputed) {
                    cols = slot.packedp.data() + static_cast<size_t>(cand) * slot.cols * s.dim_d_;
                } else {
                    std::fill(scratchp.begin(), scratchp.end(), 0);
                    gbuf.assign(slot.cands.k, 0);
                    slot.cands.decode(cand, gbuf);
                    const auto& mul = s.tables_.mul.at(slot.e);
                    for (int i = 0; i < slot.cands.k; ++i) {
                        if (!gbuf[i]) continue;
                        for (int j = 0; j < slot.cols; ++j) {
                            uint32_t* col = scratchp.data() + static_cast<size_t>(j) * s.dim_d_;
                            int row = mul[i][j];
                            col[row] = static_cast<uint32_t>((col[row] + gbuf[i]) % s.p_);
                        }
                    }
                    cols = scratchp.data();
                }
                for (int j = 0; j < slot.cols; ++j)
                    kp.insert(cols + static_cast<size_t>(j) * s.dim_d_);
            }
        }

        bool target_in_span() {
            if (s.p_ == 2) return k2.contains(s.f2_.data());
            return kp.contains(s.fvec_.data());
        }

        size_t mark() const { return s.p_ == 2 ? k2.mark() : kp.mark(); }
        void rollback(size_t m) {
            if (s.p_ == 2)
                k2.rollback(m);
            else
                kp.rollback(m);
        }

        bool dfs_top(uint64_t i0) {
            solution[0] = i0;
            size_t m = mark();
            insert_candidate(0, i0);
            bool ok = dfs(1);
            rollback(m);
            return ok;
        }

        bool dfs(size_t level) {
            if (level == s.slots_.size()) {
                if ((++local_tuples & 0xfff) == 0) {
                    uint64_t total = shared_tuples.fetch_add(local_tuples) + local_tuples;
                    local_tuples = 0;
                    if (budget && total > budget) {
                        budget_hit.store(true);
                        stop.store(true);
                    }
                }
                return target_in_span();
            }
            const FactorSlot& slot = s.slots_[level];
            uint64_t start = slot.same_group_as_previous ? solution[level - 1] + 1 : 0;
            for (uint64_t c = start; c < slot.cands.count; ++c) {
                if ((c & 0xff) == 0 && stop.load(std::memory_order_relaxed)) return false;
                solution[level] = c;
                size_t m = mark();
                insert_candidate(level, c);
                if (dfs(level + 1)) return true;
                rollback(m);
            }
            return false;
        }
    };

    friend struct Worker;

    const SearchTables& tables_;
    SearchOptions opt_;
    uint32_t p_;
    int dim_d_ = 0;
    int words_ = 0;
    FpVec fvec_;
    std::vector<uint64_t> f2_;
    std::vector<FactorSlot> slots_;
};

}  // namespace detail

/// Exact strength by exhaustive shape enumeration with cofactor solving.
/// Requires a finite coefficient field; r grows from 1, and the first length
/// admitting a decomposition (with all smaller lengths exhausted) is exact.
inline SearchReport strength_exact(const Poly& f, const SearchOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.workers = std::max(1, opt.workers);

    if (f.is_zero()) {
        report.mode = SearchReport::Mode::Exact;
        report.value = 0;
        return report;
    }
    if (!parameter_free(f))
        throw Error(ErrorKind::InvalidInput, "strength search requires a parameter-free input");
    auto di = weighted_degree(f);
    if (!di.homogeneous) throw Error(ErrorKind::NotHomogeneous, "input must be homogeneous");
    if (di.degree < 2)
        throw Error(ErrorKind::UndefinedStrength,
                    "strength is undefined for nonzero forms of degree < 2");
    if (!f.ring()->field().is_finite())
        throw Error(ErrorKind::InfiniteFieldExhaustion,
                    "exhaustive search requires a finite field");

    auto tables = detail::SearchTables::build(f.ring(), di.degree);

    for (long r = 1; r <= opt.r_max; ++r) {
        for (const auto& shape : enumerate_shapes(di.degree, r)) {
            detail::ShapeSearcher searcher(tables, f, shape, opt);
            auto res = searcher.run();
            report.nodes += res.tuples_tried;
            report.shapes.push_back(ShapeTrace{r, shape, res.tuples_tried, !res.budget_hit});
            if (res.budget_hit)
                throw Error(ErrorKind::InvalidInput, "search node budget exceeded");
            if (res.found) {
                std::vector<Poly> gs;
                for (size_t i = 0; i < res.tuple.size(); ++i)
                    gs.push_back(searcher.candidate_poly(i, res.tuple[i]));
                auto hs = cofactor_solve(f, gs);
                if (!hs)
                    throw Error(ErrorKind::InvalidInput, "internal: span hit without solution");
                Decomposition cert{f.ring(), di.degree, {}};
                for (size_t i = 0; i < gs.size(); ++i) {
                    if ((*hs)[i].is_zero())
                        throw Error(ErrorKind::InvalidInput,
                                    "internal: zero cofactor at minimal length");
                    cert.pairs.push_back({gs[i], (*hs)[i]});
                }
                if (!verify_decomposition(f, cert))
                    throw Error(ErrorKind::InvalidInput, "internal: certificate failed to verify");
                report.mode = SearchReport::Mode::Exact;
                report.value = r;
                report.certificate = std::move(cert);
                report.elapsed_ms = std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                return report;
            }
        }
    }
    report.mode = SearchReport::Mode::ExhaustedBelow;
    report.value = opt.r_max;
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---------------------------------------------------------------------------
// Heuristic upper bounds (any field, no enumeration)
// ---------------------------------------------------------------------------

struct UpperOptions {
    bool term_grouping = true;
    bool pair_peeling = true;
    int peel_breadth = 12;
    uint64_t peel_nodes = 50000;
    std::vector<Decomposition> hints;
};

namespace detail {

/// Splits a monomial of weighted degree d into (g, h) with both degrees in
/// [1, d-1]: symbols are consumed one unit at a time until the split closes.
inline std::optional<std::pair<Monomial, Monomial>> split_monomial(const RingPtr& ring,
                                                                   const Monomial& m, long d) {
    Monomial g = ring->unit_monomial();
    Monomial h = m;
    long dg = 0;
    for (size_t i = 0; i < ring->var_count(); ++i) {
        for (uint16_t e = 0; e < m.exps[i]; ++e) {
            long w = ring->weight(i);
            if (dg + w > d - 1) break;
            g.exps[i]++;
            h.exps[i]--;
            dg += w;
            if (dg >= 1 && d - dg >= 1) return std::make_pair(g, h);
        }
    }
    return std::nullopt;
}

/// All ways to split m into factor degrees (e, d-e), e <= d-e.
inline std::vector<std::pair<Monomial, Monomial>> all_splits(const RingPtr& ring,
                                                             const Monomial& m, long d) {
    std::vector<std::pair<Monomial, Monomial>> out;
    size_t n = ring->var_count();
    Monomial g = ring->unit_monomial();
    auto rec = [&](auto&& self, size_t slot, long dg) -> void {
        if (slot == n) {
            if (dg >= 1 && dg <= d - dg) out.emplace_back(g, m.quotient(g));
            return;
        }
        for (uint16_t e = 0; e <= m.exps[slot]; ++e) {
            g.exps[slot] = e;
            long w = ring->weight(slot);
            if (dg + e * w <= d - 1) self(self, slot + 1, dg + e * w);
        }
        g.exps[slot] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

/// Term grouping: each monomial splits as g*h; terms sharing the same g are
/// merged into one pair.
inline std::optional<Decomposition> term_grouping(const Poly& f, long d) {
    std::map<std::vector<uint16_t>, std::vector<Poly::Term>> groups;
    for (const auto& t : f.terms()) {
        auto split = split_monomial(f.ring(), t.first, d);
        if (!split) return std::nullopt;
        groups[split->first.exps].emplace_back(split->second, t.second);
    }
    Decomposition D{f.ring(), d, {}};
    for (auto& [gexps, terms] : groups) {
        Poly g = Poly::monomial(f.ring(), Monomial{gexps}, Scalar::one(f.ring()->field()));
        D.pairs.push_back({g, Poly::from_terms(f.ring(), std::move(terms))});
    }
    return D;
}

/// Depth-first peeling: subtract scalar multiples of products A*B built from
/// combinations of support-split monomials, trying to cancel the remainder.
class PairPeeler {
public:
    PairPeeler(const Poly& f, long d, const UpperOptions& opt)
        : ring_(f.ring()), d_(d), opt_(opt) {}

    std::optional<Decomposition> run(const Poly& f, long depth_limit) {
        best_.reset();
        nodes_ = 0;
        std::vector<DecompositionPair> stack;
        peel(f, stack, depth_limit);
        return best_;
    }

private:
    struct Candidate {
        Poly a, b;
    };

    /// Candidate factor polynomials of degree e derived from the remainder's
    /// support: single split-monomials and two-term combinations.
    std::vector<Poly> factor_pool(const Poly& rem, long e) {
        std::set<std::vector<uint16_t>> monos;
        for (const auto& t : rem.terms())
            for (const auto& [g, h] : all_splits(ring_, t.first, d_)) {
                if (ring_->weighted_degree(g) == e) monos.insert(g.exps);
                if (ring_->weighted_degree(h) == e) monos.insert(h.exps);
            }
        std::vector<Poly> pool;
        const Scalar one = Scalar::one(ring_->field());
        std::vector<Monomial> ms;
        for (const auto& ex : monos) ms.push_back(Monomial{ex});
        for (const auto& m : ms) pool.push_back(Poly::monomial(ring_, m, one));
        for (size_t i = 0; i < ms.size(); ++i)
            for (size_t j = i + 1; j < ms.size(); ++j) {
                Poly a = Poly::monomial(ring_, ms[i], one);
                Poly b = Poly::monomial(ring_, ms[j], one);
                pool.push_back(a + b);
                pool.push_back(a - b);
            }
        return pool;
    }

    void peel(const Poly& rem, std::vector<DecompositionPair>& stack, long depth_limit) {
        if (rem.is_zero()) {
            if (!best_ || static_cast<long>(stack.size()) < best_->length()) {
                best_ = Decomposition{ring_, d_, stack};
            }
            return;
        }
        if (static_cast<long>(stack.size()) >= depth_limit) return;
        if (best_ && static_cast<long>(stack.size()) + 1 >= best_->length()) return;
        if (++nodes_ > opt_.peel_nodes) return;

        // score candidate products by how much of the remainder they cancel
        struct Scored {
            long score;
            size_t order;
            Poly a, b, prod;
            Scalar c;
        };
        std::vector<Scored> scored;
        size_t order = 0;
        for (long e = 1; e <= d_ / 2; ++e) {
            auto as = factor_pool(rem, e);
            auto bs = e == d_ - e ? as : factor_pool(rem, d_ - e);
            for (const auto& a : as)
                for (const auto& b : bs) {
                    Poly prod = a * b;
                    if (prod.is_zero()) continue;
                    // scale so the product's leading remainder-term cancels
                    Scalar c = Scalar::zero(ring_->field());
                    for (const auto& t : prod.terms()) {
                        Scalar rc = rem.coefficient(t.first);
                        if (!rc.is_zero()) {
                            c = rc / t.second;
                            break;
                        }
                    }
                    if (c.is_zero()) continue;
                    Poly next = rem - prod.scaled(c);
                    long score = static_cast<long>(rem.term_count()) -
                                 static_cast<long>(next.term_count());
                    scored.push_back(Scored{score, order++, a, b, std::move(prod), c});
                }
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const Scored& x, const Scored& y) { return x.score > y.score; });
        if (static_cast<int>(scored.size()) > opt_.peel_breadth)
            scored.resize(opt_.peel_breadth);
        for (const auto& cand : scored) {
            stack.push_back({cand.a.scaled(cand.c), cand.b});
            peel(rem - cand.prod.scaled(cand.c), stack, depth_limit);
            stack.pop_back();
            if (nodes_ > opt_.peel_nodes) return;
        }
    }

    RingPtr ring_;
    long d_;
    UpperOptions opt_;
    std::optional<Decomposition> best_;
    uint64_t nodes_ = 0;
};

}  // namespace detail

/// Certified upper bound: every strategy's result is re-verified and the
/// shortest certificate wins. Works over Q as well (no field enumeration).
inline SearchReport strength_upper(const Poly& f, const UpperOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.mode = SearchReport::Mode::UpperOnly;

    if (f.is_zero()) {
        report.mode = SearchReport::Mode::Exact;
        report.value = 0;
        return report;
    }
    if (!parameter_free(f))
        throw Error(ErrorKind::InvalidInput, "strength bounds require a parameter-free input");
    auto di = weighted_degree(f);
    if (!di.homogeneous) throw Error(ErrorKind::NotHomogeneous, "input must be homogeneous");
    if (di.degree < 2)
        throw Error(ErrorKind::UndefinedStrength,
                    "strength is undefined for nonzero forms of degree < 2");

    std::optional<Decomposition> best;
    auto consider = [&](const std::optional<Decomposition>& D) {
        if (!D) return;
        if (!verify_decomposition(f, *D)) return;
        if (!best || D->length() < best->length()) best = *D;
    };

    for (const auto& hint : opt.hints) consider(hint);
    if (opt.term_grouping) consider(detail::term_grouping(f, di.degree));
    if (opt.pair_peeling && best) {
        detail::PairPeeler peeler(f, di.degree, opt);
        consider(peeler.run(f, best->length() - 1));
    }

    if (!best)
        throw Error(ErrorKind::InvalidInput,
                    "no strategy produced a certificate (is some monomial irreducible?)");
    report.value = best->length();
    report.certificate = std::move(best);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---------------------------------------------------------------------------
// Ananyan-Hochster style lower bound from the singular locus
// ---------------------------------------------------------------------------

struct AhBound {
    long codim = 0;
    long bound = 0;
};

/// With c the codimension of Sing(f), the largest k with 2k+1 <= c yields
/// the lower bound k+1 on the strength.
inline AhBound ah_lower_bound(const Poly& f) {
    auto rep = singular_locus_codim(f);
    long c = rep.codimension;
    return AhBound{c, (c - 1) / 2 + 1};
}

}  // namespace forma

#endif
