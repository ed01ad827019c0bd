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

#ifndef FORMA_FAMILY_HPP
#define FORMA_FAMILY_HPP

#include <string>
#include <vector>

#include "forma/parse.hpp"
#include "forma/strength.hpp"

namespace forma {

/// The weighted ring k[x,y,u,v; f,g,p,q] with degrees 1,1,1,1,2,2,2,2 and an
/// optional degree-0 deformation parameter t. All family constructions live
/// here.
inline RingPtr quartic_family_ring(const FieldSpec& field, bool with_parameter = false) {
    std::vector<VarDecl> vars = {{"x", 1}, {"y", 1}, {"u", 1}, {"v", 1},
                                 {"f", 2}, {"g", 2}, {"p", 2}, {"q", 2}};
    std::vector<std::string> params;
    if (with_parameter) params.push_back("t");
    return WeightedRing::make(field, std::move(vars), std::move(params));
}

/// Truncation to the first k square/quadric blocks: k variables of degree 1
/// and k of degree 2 (k in 1..4).
inline RingPtr truncated_family_ring(const FieldSpec& field, int k) {
    if (k < 1 || k > 4) throw Error(ErrorKind::InvalidInput, "k must lie in 1..4");
    static const char* lin[] = {"x", "y", "u", "v"};
    static const char* quad[] = {"f", "g", "p", "q"};
    std::vector<VarDecl> vars;
    for (int i = 0; i < k; ++i) vars.push_back({lin[i], 1});
    for (int i = 0; i < k; ++i) vars.push_back({quad[i], 2});
    return WeightedRing::make(field, std::move(vars));
}

/// The k-term quartic x^2 f + y^2 g + ... in a family ring (full or
/// truncated); k defaults to every available block.
inline Poly build_h(const RingPtr& ring, int k = -1) {
    static const char* lin[] = {"x", "y", "u", "v"};
    static const char* quad[] = {"f", "g", "p", "q"};
    if (k < 0) {
        k = 0;
        while (k < 4 && ring->find(lin[k]) != WeightedRing::npos &&
               ring->find(quad[k]) != WeightedRing::npos)
            ++k;
    }
    Poly h = Poly::zero(ring);
    for (int i = 0; i < k; ++i) {
        Poly s = Poly::variable(ring, lin[i]);
        h = h + s * s * Poly::variable(ring, quad[i]);
    }
    return h;
}

struct DeformationIdentity {
    Poly H;               // the cleared product combination
    bool identity_holds;  // H == t*h + t^2*(f*g - p*q)
};

/// The deformation family, in cleared form: no division by t is performed.
/// H := (x^2 + t*g)(y^2 + t*f) - (u^2 - t*q)(v^2 - t*p) - (xy + uv)(xy - uv),
/// and the identity H = t*h + t^2*(fg - pq) is verified exactly.
inline DeformationIdentity build_h_t(const RingPtr& ring) {
    size_t t_slot = ring->find("t");
    if (t_slot == WeightedRing::npos || t_slot < ring->var_count())
        throw Error(ErrorKind::InvalidInput, "ring lacks the deformation parameter t");
    auto v = [&](const char* name) { return Poly::variable(ring, name); };
    Poly t = Poly::variable(ring, "t");
    Poly x = v("x"), y = v("y"), u = v("u"), w = v("v");
    Poly f = v("f"), g = v("g"), p = v("p"), q = v("q");

    Poly H = (x * x + t * g) * (y * y + t * f) - (u * u - t * q) * (w * w - t * p) -
             (x * y + u * w) * (x * y - u * w);
    Poly rhs = t * build_h(ring, 4) + t * t * (f * g - p * q);
    return DeformationIdentity{H, H == rhs};
}

/// h(t0) = h + t0*(fg - pq), the member of the family at a nonzero t0, in the
/// parameter-free family ring.
inline Poly h_at(const RingPtr& ring, const Scalar& t0) {
    if (t0.is_zero()) throw Error(ErrorKind::ZeroParameter, "family member requires t != 0");
    auto v = [&](const char* name) { return Poly::variable(ring, name); };
    return build_h(ring, 4) + (v("f") * v("g") - v("p") * v("q")).scaled(t0);
}

/// The length-3 decomposition of h(t0) obtained from the cleared family
/// identity: scaling the first factor of each product by 1/t0.
inline Decomposition decomposition_at(const RingPtr& ring, const Scalar& t0) {
    if (t0.is_zero()) throw Error(ErrorKind::ZeroParameter, "decomposition requires t != 0");
    auto v = [&](const char* name) { return Poly::variable(ring, name); };
    Poly x = v("x"), y = v("y"), u = v("u"), w = v("v");
    Poly f = v("f"), g = v("g"), p = v("p"), q = v("q");
    Scalar inv = t0.inverse();

    Decomposition D{ring, 4, {}};
    D.pairs.push_back({(x * x + g.scaled(t0)).scaled(inv), y * y + f.scaled(t0)});
    D.pairs.push_back({(u * u - q.scaled(t0)).scaled(-inv), w * w - p.scaled(t0)});
    D.pairs.push_back({(x * y + u * w).scaled(-inv), x * y - u * w});
    return D;
}

struct AnalogOptions {
    long r_max = 0;  // 0: search up to k
    int workers = 1;
    bool campaign_enabled = false;
};

/// Exact strength of the k-term analogue in the truncated ring. The k = 4
/// case is the full campaign-scale search and must be enabled explicitly.
inline SearchReport analog_strength(int k, const FieldSpec& field,
                                    const AnalogOptions& opt = {}) {
    if (k < 1 || k > 4) throw Error(ErrorKind::InvalidInput, "k must lie in 1..4");
    if (k == 4 && !opt.campaign_enabled)
        throw Error(ErrorKind::CampaignRequired,
                    "the 4-term search is campaign-scale; run it through the campaign mode");
    auto ring = truncated_family_ring(field, k);
    long r_max = opt.r_max > 0 ? opt.r_max : k;
    return strength_exact(build_h(ring, k), SearchOptions{.r_max = r_max, .workers = opt.workers});
}

/// Finite instantiation: x,y,u,v map to fresh degree-1 variables and each
/// quadric maps to a sum of m products of disjoint fresh variable pairs,
/// laid out in contiguous blocks so that growing m extends earlier plans.
struct InstantiationPlan {
    int m = 1;
    FieldSpec field = FieldSpec::gf(2);

    int variable_count() const { return 4 + 8 * m; }

    /// 1-based first index of the i-th pair (i in 0..2m-1 counted per
    /// quadric j in 0..3): block layout [x1..x4 | 8 vars per copy].
    std::pair<int, int> pair_indices(int copy, int quadric) const {
        int base = 4 + 8 * copy + 2 * quadric;
        return {base + 1, base + 2};
    }
};

inline RingPtr instantiation_ring(const InstantiationPlan& plan) {
    std::vector<VarDecl> vars;
    for (int i = 1; i <= plan.variable_count(); ++i)
        vars.push_back({"x" + std::to_string(i), 1});
    return WeightedRing::make(plan.field, std::move(vars));
}

inline Poly instantiate(const InstantiationPlan& plan) {
    if (plan.m < 1) throw Error(ErrorKind::InvalidInput, "plan needs m >= 1");
    RingPtr target = instantiation_ring(plan);
    RingPtr source = quartic_family_ring(plan.field);
    static const char* lin[] = {"x", "y", "u", "v"};
    static const char* quad[] = {"f", "g", "p", "q"};
    std::map<std::string, Poly> img;
    for (int i = 0; i < 4; ++i)
        img.emplace(lin[i], Poly::variable(target, static_cast<size_t>(i)));
    for (int j = 0; j < 4; ++j) {
        Poly sum = Poly::zero(target);
        for (int copy = 0; copy < plan.m; ++copy) {
            auto [a, b] = plan.pair_indices(copy, j);
            sum = sum + Poly::variable(target, static_cast<size_t>(a - 1)) *
                            Poly::variable(target, static_cast<size_t>(b - 1));
        }
        img.emplace(quad[j], sum);
    }
    return substitute(build_h(source, 4), target, img);
}

}  // namespace forma

#endif
