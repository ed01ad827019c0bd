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

#ifndef FORMA_POLY_HPP
#define FORMA_POLY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forma/ring.hpp"

namespace forma {

/// Sparse multivariate polynomial over a WeightedRing. Terms are kept sorted
/// in the ring's canonical order, leading term first, with no stored zeros.
class Poly {
public:
    using Term = std::pair<Monomial, Scalar>;

    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }

    static Poly constant(RingPtr ring, const Scalar& c) {
        Poly p(ring);
        if (!c.is_zero()) p.terms_.emplace_back(ring->unit_monomial(), c);
        return p;
    }

    static Poly variable(RingPtr ring, size_t slot) {
        Poly p(ring);
        p.terms_.emplace_back(ring->var_monomial(slot), Scalar::one(ring->field()));
        return p;
    }

    static Poly variable(RingPtr ring, const std::string& name) {
        size_t i = ring->find(name);
        if (i == WeightedRing::npos)
            throw Error(ErrorKind::UnknownVariable, "no symbol named " + name);
        return variable(std::move(ring), i);
    }

    static Poly monomial(RingPtr ring, Monomial m, const Scalar& c) {
        Poly p(ring);
        if (!c.is_zero()) p.terms_.emplace_back(std::move(m), c);
        return p;
    }

    /// Builds from unordered term list, combining duplicates and pruning zeros.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms) {
        Poly p(ring);
        std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
            return ring->compare(a.first, b.first) > 0;
        });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second = p.terms_.back().second + t.second;
            } else {
                p.terms_.push_back(std::move(t));
            }
        }
        p.prune();
        return p;
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    size_t term_count() const noexcept { return terms_.size(); }

    const Term& leading_term() const {
        if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no terms");
        return terms_.front();
    }

    Scalar coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.first == m) return t.second;
        return Scalar::zero(ring_->field());
    }

    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (!same_ring(a.ring_, b.ring_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
                return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_same(b);
        Poly r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = a.ring_->compare(a.terms_[i].first, b.terms_[j].first);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                Scalar s = a.terms_[i].second + b.terms_[j].second;
                if (!s.is_zero()) r.terms_.emplace_back(a.terms_[i].first, s);
                ++i, ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    Poly operator-() const {
        Poly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.emplace_back(t.first, -t.second);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same(b);
        Poly r(a.ring_);
        if (a.is_zero() || b.is_zero()) return r;
        std::unordered_map<Monomial, Scalar, MonomialHash> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Monomial m = ta.first * tb.first;
                Scalar c = ta.second * tb.second;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), std::move(c));
                else
                    it->second = it->second + c;
            }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto& kv : acc) terms.emplace_back(kv.first, kv.second);
        return from_terms(a.ring_, std::move(terms));
    }

    Poly scaled(const Scalar& c) const {
        if (c.is_zero()) return Poly(ring_);
        Poly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second * c);
        return r;
    }

    /// Divides by the leading coefficient.
    Poly monic() const {
        if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "monic of zero");
        return scaled(leading_term().second.inverse());
    }

    void require_same(const Poly& o) const {
        if (!same_ring(ring_, o.ring_))
            throw Error(ErrorKind::RingMismatch, "operands live in different rings");
    }

private:
    void prune() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Term& t) { return t.second.is_zero(); }),
                     terms_.end());
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
inline Poly poly_scale(const Poly& a, const Scalar& c) { return a.scaled(c); }

struct DegreeInfo {
    long degree = 0;
    bool homogeneous = false;
};

/// Weighted degree of the polynomial: max over terms, with a homogeneity
/// flag. Parameters carry weight 0 and never affect either value.
inline DegreeInfo weighted_degree(const Poly& a) {
    if (a.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "degree of zero polynomial");
    const auto& ring = *a.ring();
    long maxd = -1, mind = -1;
    for (const auto& t : a.terms()) {
        long d = ring.weighted_degree(t.first);
        if (maxd < 0) maxd = mind = d;
        maxd = std::max(maxd, d);
        mind = std::min(mind, d);
    }
    return DegreeInfo{maxd, maxd == mind};
}

inline bool is_homogeneous_of_degree(const Poly& a, long d) {
    if (a.is_zero()) return true;  // zero is homogeneous of every degree
    auto info = weighted_degree(a);
    return info.homogeneous && info.degree == d;
}

inline Poly partial_derivative(const Poly& a, const std::string& var) {
    size_t slot = a.ring()->find(var);
    if (slot == WeightedRing::npos || slot >= a.ring()->var_count())
        throw Error(ErrorKind::UnknownVariable, var + " is not a variable of the ring");
    std::vector<Poly::Term> out;
    const FieldSpec& f = a.ring()->field();
    for (const auto& t : a.terms()) {
        uint16_t e = t.first.exps[slot];
        if (e == 0) continue;
        Scalar c = t.second * Scalar::of_int(f, e);
        if (c.is_zero()) continue;  // char divides the exponent
        Monomial m = t.first;
        m.exps[slot] = static_cast<uint16_t>(e - 1);
        out.emplace_back(std::move(m), std::move(c));
    }
    return Poly::from_terms(a.ring(), std::move(out));
}

/// Drops every term containing any of the listed symbols (sets them to 0).
inline Poly restrict_zero(const Poly& a, const std::vector<std::string>& symbols) {
    std::vector<size_t> slots;
    for (const auto& s : symbols) {
        size_t i = a.ring()->find(s);
        if (i == WeightedRing::npos)
            throw Error(ErrorKind::UnknownVariable, "no symbol named " + s);
        slots.push_back(i);
    }
    std::vector<Poly::Term> out;
    for (const auto& t : a.terms()) {
        bool hit = false;
        for (size_t i : slots)
            if (t.first.exps[i]) {
                hit = true;
                break;
            }
        if (!hit) out.push_back(t);
    }
    return Poly::from_terms(a.ring(), std::move(out));
}

/// Substitution of every variable by a homogeneous image of matching
/// weighted degree in the target ring. Parameters of the source must exist
/// by name in the target when they actually occur. Zero images are allowed.
inline Poly substitute(const Poly& a, const RingPtr& target,
                       const std::map<std::string, Poly>& assignment) {
    const auto& src = *a.ring();
    std::vector<const Poly*> images(src.var_count(), nullptr);
    for (size_t i = 0; i < src.var_count(); ++i) {
        auto it = assignment.find(src.vars()[i].name);
        if (it == assignment.end())
            throw Error(ErrorKind::UnknownVariable,
                        "no image assigned to variable " + src.vars()[i].name);
        if (!same_ring(it->second.ring(), target))
            throw Error(ErrorKind::RingMismatch, "image of " + src.vars()[i].name +
                                                     " lives outside the target ring");
        if (!is_homogeneous_of_degree(it->second, src.vars()[i].degree))
            throw Error(ErrorKind::DegreeMismatch,
                        "image of " + src.vars()[i].name + " is not homogeneous of degree " +
                            std::to_string(src.vars()[i].degree));
        images[i] = &it->second;
    }
    // Parameter slots map by name.
    std::vector<size_t> param_slot(src.param_count(), WeightedRing::npos);
    for (size_t i = 0; i < src.param_count(); ++i)
        param_slot[i] = target->find(src.params()[i]);

    Poly result = Poly::zero(target);
    for (const auto& t : a.terms()) {
        Poly term = Poly::constant(target, t.second);
        for (size_t i = 0; i < src.var_count() && !term.is_zero(); ++i) {
            for (uint16_t e = 0; e < t.first.exps[i]; ++e) term = term * (*images[i]);
        }
        for (size_t i = 0; i < src.param_count(); ++i) {
            uint16_t e = t.first.exps[src.var_count() + i];
            if (!e) continue;
            if (param_slot[i] == WeightedRing::npos)
                throw Error(ErrorKind::UnknownVariable,
                            "parameter " + src.params()[i] + " is absent from the target ring");
            Monomial pm = target->unit_monomial();
            pm.exps[param_slot[i]] = e;
            term = term * Poly::monomial(target, pm, Scalar::one(target->field()));
        }
        result = result + term;
    }
    return result;
}

/// self-substitution convenience: all images live in a's own ring.
inline Poly substitute(const Poly& a, const std::map<std::string, Poly>& assignment) {
    RingPtr target;
    for (const auto& kv : assignment) {
        target = kv.second.ring();
        break;
    }
    if (!target) target = a.ring();
    return substitute(a, target, assignment);
}

/// Exact single-divisor division: returns q with a = b*q, or nullopt.
inline std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by the zero polynomial");
    a.require_same(b);
    Poly r = a;
    Poly q = Poly::zero(a.ring());
    const auto& ltb = b.leading_term();
    while (!r.is_zero()) {
        const auto& ltr = r.leading_term();
        if (!ltb.first.divides(ltr.first)) return std::nullopt;
        Poly step = Poly::monomial(a.ring(), ltr.first.quotient(ltb.first),
                                   ltr.second / ltb.second);
        q = q + step;
        r = r - step * b;
    }
    return q;
}

/// Linear change of coordinates on the degree-1 variables; every other
/// symbol is fixed. The induced matrix must be invertible over the field.
struct LinearChange {
    RingPtr ring;
    std::map<std::string, Poly> assignment;  // degree-1 variable -> degree-1 Poly
};

namespace detail {

/// Row-reduces the matrix of the change on degree-1 variables and reports
/// whether it is invertible.
inline bool linear_change_invertible(const LinearChange& L) {
    const auto& ring = *L.ring;
    std::vector<size_t> deg1;
    for (size_t i = 0; i < ring.var_count(); ++i)
        if (ring.vars()[i].degree == 1) deg1.push_back(i);
    size_t n = deg1.size();
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::zero(ring.field())));
    for (size_t r = 0; r < n; ++r) {
        auto it = L.assignment.find(ring.vars()[deg1[r]].name);
        if (it == L.assignment.end())
            throw Error(ErrorKind::UnknownVariable,
                        "no image for variable " + ring.vars()[deg1[r]].name);
        if (!is_homogeneous_of_degree(it->second, 1))
            throw Error(ErrorKind::DegreeMismatch, "image of " + ring.vars()[deg1[r]].name +
                                                       " is not homogeneous of degree 1");
        for (const auto& t : it->second.terms()) {
            for (size_t c = 0; c < n; ++c)
                if (t.first.exps[deg1[c]] == 1) m[r][c] = t.second;
        }
    }
    // Gaussian elimination for rank.
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < n; ++col) {
        size_t piv = rank;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[rank]);
        Scalar inv = m[rank][col].inverse();
        for (size_t c = 0; c < n; ++c) m[rank][c] = m[rank][c] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (size_t c = 0; c < n; ++c) m[r][c] = m[r][c] - f * m[rank][c];
        }
        ++rank;
    }
    return rank == n;
}

}  // namespace detail

inline Poly apply_linear_change(const Poly& a, const LinearChange& L) {
    if (!same_ring(a.ring(), L.ring))
        throw Error(ErrorKind::RingMismatch, "change of variables targets a different ring");
    if (!detail::linear_change_invertible(L))
        throw Error(ErrorKind::SingularChange, "linear change is not invertible");
    std::map<std::string, Poly> assignment = L.assignment;
    for (size_t i = 0; i < a.ring()->var_count(); ++i) {
        const auto& v = a.ring()->vars()[i];
        if (v.degree == 1) continue;
        assignment.emplace(v.name, Poly::variable(a.ring(), i));
    }
    return substitute(a, a.ring(), assignment);
}

/// Keeps the first `keep` variables, substitutes 0 for the rest, and re-homes
/// the result in the ring on the retained prefix (parameters survive).
inline Poly forget_variables(const Poly& a, size_t keep) {
    const auto& src = *a.ring();
    if (keep > src.var_count())
        throw Error(ErrorKind::InvalidInput, "cannot keep more variables than the ring has");
    if (keep == src.var_count()) return a;
    std::vector<VarDecl> vars(src.vars().begin(), src.vars().begin() + keep);
    RingPtr target = WeightedRing::make(src.field(), std::move(vars), src.params());
    std::vector<Poly::Term> out;
    for (const auto& t : a.terms()) {
        bool dropped = false;
        for (size_t i = keep; i < src.var_count(); ++i)
            if (t.first.exps[i]) {
                dropped = true;
                break;
            }
        if (dropped) continue;
        Monomial m = target->unit_monomial();
        for (size_t i = 0; i < keep; ++i) m.exps[i] = t.first.exps[i];
        for (size_t i = 0; i < src.param_count(); ++i)
            m.exps[keep + i] = t.first.exps[src.var_count() + i];
        out.emplace_back(std::move(m), t.second);
    }
    return Poly::from_terms(target, std::move(out));
}

/// All monomials of weighted degree exactly d, parameters excluded, in
/// descending lexicographic order on exponent vectors.
inline std::vector<Monomial> basis_of_degree(const RingPtr& ring, long d) {
    if (d < 0) throw Error(ErrorKind::InvalidInput, "degree must be nonnegative");
    std::vector<Monomial> out;
    Monomial cur = ring->unit_monomial();
    size_t n = ring->var_count();
    // Depth-first over exponent choices, largest exponent first per slot,
    // which yields descending lex order.
    auto rec = [&](auto&& self, size_t slot, long remaining) -> void {
        if (slot == n) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        long w = ring->weight(slot);
        long maxe = remaining / w;
        for (long e = maxe; e >= 0; --e) {
            cur.exps[slot] = static_cast<uint16_t>(e);
            self(self, slot + 1, remaining - e * w);
        }
        cur.exps[slot] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// True when no parameter symbol occurs in any term.
inline bool parameter_free(const Poly& a) {
    const auto& ring = *a.ring();
    for (const auto& t : a.terms())
        for (size_t i = ring.var_count(); i < ring.symbol_count(); ++i)
            if (t.first.exps[i]) return false;
    return true;
}

/// Collects the coefficient of param^k as a polynomial with the parameter
/// exponent stripped (still homed in the same ring).
inline Poly parameter_coefficient(const Poly& a, const std::string& param, uint16_t k) {
    size_t slot = a.ring()->find(param);
    if (slot == WeightedRing::npos || slot < a.ring()->var_count())
        throw Error(ErrorKind::UnknownVariable, param + " is not a parameter of the ring");
    std::vector<Poly::Term> out;
    for (const auto& t : a.terms()) {
        if (t.first.exps[slot] != k) continue;
        Monomial m = t.first;
        m.exps[slot] = 0;
        out.emplace_back(std::move(m), t.second);
    }
    return Poly::from_terms(a.ring(), std::move(out));
}

/// Substitutes a scalar for a parameter symbol.
inline Poly substitute_parameter(const Poly& a, const std::string& param, const Scalar& value) {
    size_t slot = a.ring()->find(param);
    if (slot == WeightedRing::npos || slot < a.ring()->var_count())
        throw Error(ErrorKind::UnknownVariable, param + " is not a parameter of the ring");
    std::vector<Poly::Term> out;
    for (const auto& t : a.terms()) {
        uint16_t e = t.first.exps[slot];
        Scalar c = t.second * value.pow(e);
        if (c.is_zero()) continue;
        Monomial m = t.first;
        m.exps[slot] = 0;
        out.emplace_back(std::move(m), std::move(c));
    }
    return Poly::from_terms(a.ring(), std::move(out));
}

}  // namespace forma

#endif
