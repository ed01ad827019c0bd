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

#ifndef FORMA_GROEBNER_HPP
#define FORMA_GROEBNER_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "forma/poly.hpp"

namespace forma {

/// Monomial orders for the Groebner layer. Restricted to standard-graded
/// rings (all variables of weight 1, no parameters); weighted rings never
/// reach this module.
struct TermOrder {
    enum class Kind { Grevlex, Lex };
    Kind kind = Kind::Grevlex;

    static TermOrder grevlex() { return TermOrder{Kind::Grevlex}; }
    static TermOrder lex() { return TermOrder{Kind::Lex}; }

    /// Three-way comparison; >0 when a > b.
    int compare(const Monomial& a, const Monomial& b) const {
        if (kind == Kind::Lex) {
            for (size_t i = 0; i < a.exps.size(); ++i)
                if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i] ? 1 : -1;
            return 0;
        }
        long da = 0, db = 0;
        for (size_t i = 0; i < a.exps.size(); ++i) {
            da += a.exps[i];
            db += b.exps[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (size_t i = a.exps.size(); i-- > 0;)
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? 1 : -1;
        return 0;
    }

    std::string name() const { return kind == Kind::Grevlex ? "grevlex" : "lex"; }
};

namespace detail {

inline void require_standard_graded(const RingPtr& ring) {
    if (!ring->standard_graded())
        throw Error(ErrorKind::WeightedRingUnsupported,
                    "Groebner operations require a standard-graded ring");
}

inline const Poly::Term& leading_term(const Poly& p, const TermOrder& order) {
    const auto& terms = p.terms();
    size_t best = 0;
    for (size_t i = 1; i < terms.size(); ++i)
        if (order.compare(terms[i].first, terms[best].first) > 0) best = i;
    return terms[best];
}

}  // namespace detail

/// Remainder of multivariate division of f by G: no term of the result is
/// divisible by any leading term of G.
inline Poly normal_form(const Poly& f, const std::vector<Poly>& divisors, const TermOrder& order) {
    detail::require_standard_graded(f.ring());
    std::vector<const Poly*> gs;
    std::vector<Monomial> lts;
    for (const auto& g : divisors) {
        if (g.is_zero()) continue;
        f.require_same(g);
        gs.push_back(&g);
        lts.push_back(detail::leading_term(g, order).first);
    }
    if (gs.empty())
        throw Error(ErrorKind::InvalidInput, "division requires at least one nonzero divisor");

    Poly rest = f;
    std::vector<Poly::Term> remainder;
    while (!rest.is_zero()) {
        const auto& lt = detail::leading_term(rest, order);
        bool reduced = false;
        for (size_t i = 0; i < gs.size(); ++i) {
            if (!lts[i].divides(lt.first)) continue;
            Scalar c = lt.second / detail::leading_term(*gs[i], order).second;
            Poly step = Poly::monomial(f.ring(), lt.first.quotient(lts[i]), c);
            rest = rest - step * *gs[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.emplace_back(lt);
            rest = rest - Poly::monomial(f.ring(), lt.first, lt.second);
        }
    }
    return Poly::from_terms(f.ring(), std::move(remainder));
}

/// Reduced Groebner basis: monic generators, every element fully reduced
/// against the others; unique for the ideal and order, so deterministic
/// regardless of generator order.
struct GroebnerBasis {
    RingPtr ring;
    TermOrder order;
    std::vector<Poly> generators;
};

inline GroebnerBasis buchberger(const std::vector<Poly>& gens,
                                const TermOrder& order = TermOrder::grevlex()) {
    RingPtr ring;
    std::vector<Poly> basis;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!ring)
            ring = g.ring();
        else if (!same_ring(ring, g.ring()))
            throw Error(ErrorKind::RingMismatch, "generators live in different rings");
        basis.push_back(g.monic());
    }
    if (basis.empty())
        throw Error(ErrorKind::InvalidInput, "Groebner basis of the zero ideal is undefined");
    detail::require_standard_graded(ring);

    auto lt = [&](const Poly& p) { return detail::leading_term(p, order).first; };

    struct Pair {
        size_t i, j;
        Monomial lcm;
        long degree;
    };
    auto make_pair = [&](size_t i, size_t j) {
        Monomial m = Monomial::lcm(lt(basis[i]), lt(basis[j]));
        long d = 0;
        for (auto e : m.exps) d += e;
        return Pair{i, j, std::move(m), d};
    };

    std::deque<Pair> queue;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) queue.push_back(make_pair(i, j));

    auto coprime = [&](const Pair& p) {
        // product criterion: coprime leading terms yield S-polys reducing to 0
        Monomial prod = lt(basis[p.i]) * lt(basis[p.j]);
        return prod == p.lcm;
    };

    std::vector<Pair> done;
    auto chain_criterion = [&](const Pair& p) {
        // skip when some basis element k divides the lcm and both side pairs
        // were already handled
        for (size_t k = 0; k < basis.size(); ++k) {
            if (k == p.i || k == p.j) continue;
            if (!lt(basis[k]).divides(p.lcm)) continue;
            bool ik = false, jk = false;
            for (const auto& d : done) {
                if ((d.i == std::min(p.i, k) && d.j == std::max(p.i, k))) ik = true;
                if ((d.i == std::min(p.j, k) && d.j == std::max(p.j, k))) jk = true;
            }
            if (ik && jk) return true;
        }
        return false;
    };

    while (!queue.empty()) {
        auto it = std::min_element(queue.begin(), queue.end(),
                                   [](const Pair& a, const Pair& b) { return a.degree < b.degree; });
        Pair p = *it;
        queue.erase(it);
        done.push_back(p);
        if (coprime(p) || chain_criterion(p)) continue;

        const Poly &fi = basis[p.i], &fj = basis[p.j];
        Poly spoly = Poly::monomial(ring, p.lcm.quotient(lt(fi)), Scalar::one(ring->field())) * fi -
                     Poly::monomial(ring, p.lcm.quotient(lt(fj)), Scalar::one(ring->field())) * fj;
        if (spoly.is_zero()) continue;
        Poly r = normal_form(spoly, basis, order);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        size_t n = basis.size() - 1;
        for (size_t i = 0; i < n; ++i) queue.push_back(make_pair(i, n));
    }

    // minimalize: drop elements whose LT is divisible by another LT
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (lt(basis[j]).divides(lt(basis[i]))) {
                // keep the later duplicate only once on exact LT ties
                redundant = !(lt(basis[i]) == lt(basis[j]) && i < j);
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // reduce: replace each element by its normal form against the others;
    // terminates because tails strictly drop in the term order
    for (size_t rounds = 0; rounds < 1000; ++rounds) {
        bool changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            if (others.empty()) break;
            Poly r = normal_form(minimal[i], others, order);
            if (r.is_zero()) {
                minimal.erase(minimal.begin() + i);
                changed = true;
                break;
            }
            r = r.monic();
            if (r != minimal[i]) {
                minimal[i] = r;
                changed = true;
            }
        }
        if (!changed) break;
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return order.compare(lt(a), lt(b)) > 0;
    });
    return GroebnerBasis{ring, order, std::move(minimal)};
}

inline Poly normal_form(const Poly& f, const GroebnerBasis& G) {
    return normal_form(f, G.generators, G.order);
}

inline bool ideal_member(const Poly& f, const GroebnerBasis& G) {
    if (f.is_zero()) return true;
    return normal_form(f, G).is_zero();
}

/// Affine dimension data computed combinatorially from the leading-term
/// ideal: the dimension equals the largest set of variables containing no
/// leading-term support, and the codimension is the complementary minimal
/// hitting-set size.
struct DimReport {
    long dimension = 0;
    long codimension = 0;
    std::vector<std::string> independent_set;
    bool unit_ideal = false;
};

namespace detail {

inline void min_hitting_set(const std::vector<uint64_t>& supports, uint64_t chosen, int size,
                            int& best, uint64_t& best_set) {
    if (size >= best) return;
    // first support not hit by the chosen set
    const uint64_t* branch = nullptr;
    int branch_pop = 65;
    for (const auto& s : supports) {
        if (s & chosen) continue;
        int pop = __builtin_popcountll(s);
        if (pop < branch_pop) {
            branch_pop = pop;
            branch = &s;
            if (pop <= 1) break;
        }
    }
    if (!branch) {
        best = size;
        best_set = chosen;
        return;
    }
    uint64_t s = *branch;
    while (s) {
        uint64_t bit = s & (~s + 1);
        s ^= bit;
        min_hitting_set(supports, chosen | bit, size + 1, best, best_set);
    }
}

}  // namespace detail

inline DimReport ideal_dimension(const GroebnerBasis& G) {
    size_t n = G.ring->var_count();
    if (n > 64)
        throw Error(ErrorKind::InvalidInput, "dimension supports at most 64 variables");
    DimReport rep;
    for (const auto& g : G.generators) {
        if (g.is_constant() && !g.is_zero()) {
            rep.unit_ideal = true;
            rep.dimension = -1;
            rep.codimension = static_cast<long>(n) + 1;
            return rep;
        }
    }
    std::vector<uint64_t> supports;
    for (const auto& g : G.generators) {
        const Monomial& m = detail::leading_term(g, G.order).first;
        uint64_t s = 0;
        for (size_t i = 0; i < n; ++i)
            if (m.exps[i]) s |= uint64_t(1) << i;
        supports.push_back(s);
    }
    int best = static_cast<int>(n) + 1;
    uint64_t best_set = 0;
    detail::min_hitting_set(supports, 0, 0, best, best_set);
    rep.codimension = best;
    rep.dimension = static_cast<long>(n) - best;
    for (size_t i = 0; i < n; ++i)
        if (!(best_set & (uint64_t(1) << i))) rep.independent_set.push_back(G.ring->vars()[i].name);
    return rep;
}

/// Codimension of the singular locus of {f=0}: the vanishing set of f and
/// all its partial derivatives. f itself always joins the Jacobian ideal,
/// which matches the cone's singular scheme in every characteristic.
inline DimReport singular_locus_codim(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "singular locus of the zero form");
    detail::require_standard_graded(f.ring());
    if (!weighted_degree(f).homogeneous)
        throw Error(ErrorKind::NotHomogeneous, "singular locus requires a homogeneous form");
    std::vector<Poly> gens = {f};
    for (const auto& v : f.ring()->vars()) {
        Poly d = partial_derivative(f, v.name);
        if (!d.is_zero()) gens.push_back(d);
    }
    return ideal_dimension(buchberger(gens, TermOrder::grevlex()));
}

}  // namespace forma

#endif
