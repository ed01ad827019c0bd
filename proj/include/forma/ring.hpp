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

#ifndef FORMA_RING_HPP
#define FORMA_RING_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "forma/error.hpp"
#include "forma/scalar.hpp"

namespace forma {

/// Exponent vector over all symbols of a ring: variables first (in declared
/// order), then degree-0 parameters. Length always equals the ring's symbol
/// count; weighted degree is taken against the ring's variable weights.
struct Monomial {
    std::vector<uint16_t> exps;

    bool is_unit() const noexcept {
        for (auto e : exps)
            if (e) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = static_cast<uint16_t>(exps[i] + o.exps[i]);
        return r;
    }

    /// Componentwise divisibility (this | other).
    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > o.exps[i]) return false;
        return true;
    }

    Monomial quotient(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = static_cast<uint16_t>(exps[i] - o.exps[i]);
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (size_t i = 0; i < r.exps.size(); ++i)
            if (b.exps[i] > r.exps[i]) r.exps[i] = b.exps[i];
        return r;
    }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (auto e : m.exps) {
            h ^= e;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

struct VarDecl {
    std::string name;
    uint32_t degree = 1;
};

/// Ambient context for all polynomials: a coefficient field, an ordered list
/// of weighted variables, and an optional ordered list of degree-0 formal
/// parameters. Immutable after construction; shared by reference.
class WeightedRing {
public:
    static std::shared_ptr<const WeightedRing> make(FieldSpec field, std::vector<VarDecl> vars,
                                                    std::vector<std::string> params = {}) {
        return std::shared_ptr<const WeightedRing>(
            new WeightedRing(field, std::move(vars), std::move(params)));
    }

    const FieldSpec& field() const noexcept { return field_; }
    const std::vector<VarDecl>& vars() const noexcept { return vars_; }
    const std::vector<std::string>& params() const noexcept { return params_; }

    size_t var_count() const noexcept { return vars_.size(); }
    size_t param_count() const noexcept { return params_.size(); }
    size_t symbol_count() const noexcept { return vars_.size() + params_.size(); }

    /// Weight of symbol slot i (0 for parameters).
    uint32_t weight(size_t i) const noexcept { return i < vars_.size() ? vars_[i].degree : 0; }

    bool standard_graded() const noexcept {
        if (!params_.empty()) return false;
        for (const auto& v : vars_)
            if (v.degree != 1) return false;
        return true;
    }

    const std::string& symbol_name(size_t i) const {
        return i < vars_.size() ? vars_[i].name : params_[i - vars_.size()];
    }

    /// Slot of a symbol by name, or npos.
    size_t find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? npos : it->second;
    }
    static constexpr size_t npos = static_cast<size_t>(-1);

    long weighted_degree(const Monomial& m) const {
        long d = 0;
        for (size_t i = 0; i < vars_.size(); ++i) d += static_cast<long>(m.exps[i]) * vars_[i].degree;
        return d;
    }

    Monomial unit_monomial() const { return Monomial{std::vector<uint16_t>(symbol_count(), 0)}; }

    Monomial var_monomial(size_t i) const {
        Monomial m = unit_monomial();
        m.exps[i] = 1;
        return m;
    }

    /// Canonical term order used for storage and printing: weighted degree
    /// first, then lexicographic on the exponent vector (declared symbol
    /// order). Three-way: <0, 0, >0 for a<b, a==b, a>b.
    int compare(const Monomial& a, const Monomial& b) const {
        long da = weighted_degree(a), db = weighted_degree(b);
        if (da != db) return da < db ? -1 : 1;
        for (size_t i = 0; i < a.exps.size(); ++i)
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
        return 0;
    }

    bool structurally_equal(const WeightedRing& o) const {
        if (field_ != o.field_ || vars_.size() != o.vars_.size() || params_ != o.params_)
            return false;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name != o.vars_[i].name || vars_[i].degree != o.vars_[i].degree)
                return false;
        return true;
    }

    std::string to_string() const {
        std::string s = field_.to_string() + "[";
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (i) s += ", ";
            s += vars_[i].name + ":" + std::to_string(vars_[i].degree);
        }
        if (!params_.empty()) {
            s += "; ";
            for (size_t i = 0; i < params_.size(); ++i) {
                if (i) s += ", ";
                s += params_[i];
            }
        }
        s += "]";
        return s;
    }

private:
    WeightedRing(FieldSpec field, std::vector<VarDecl> vars, std::vector<std::string> params)
        : field_(field), vars_(std::move(vars)), params_(std::move(params)) {
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].degree < 1)
                throw Error(ErrorKind::InvalidInput,
                            "variable " + vars_[i].name + " must have positive degree");
            if (!index_.emplace(vars_[i].name, i).second)
                throw Error(ErrorKind::InvalidInput, "duplicate symbol " + vars_[i].name);
        }
        for (size_t i = 0; i < params_.size(); ++i)
            if (!index_.emplace(params_[i], vars_.size() + i).second)
                throw Error(ErrorKind::InvalidInput, "duplicate symbol " + params_[i]);
    }

    FieldSpec field_;
    std::vector<VarDecl> vars_;
    std::vector<std::string> params_;
    std::map<std::string, size_t> index_;
};

using RingPtr = std::shared_ptr<const WeightedRing>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && a->structurally_equal(*b));
}

}  // namespace forma

#endif
