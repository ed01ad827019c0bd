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

#ifndef FORMA_WITNESS_HPP
#define FORMA_WITNESS_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "forma/family.hpp"
#include "forma/groebner.hpp"
#include "forma/linalg.hpp"

namespace forma {

/// Outcome of one mechanically checkable necessary condition behind the
/// length-3 impossibility cases of the four-term quartic. A failing
/// necessary condition would certify the corresponding case possible; these
/// checks are evidence, not a machine proof of the universally quantified
/// statements.
struct CaseWitness {
    char tag = '?';  // 'a'..'d'
    std::string check;
    bool passed = false;
    std::map<std::string, long> evidence;
};

struct WitnessConfig {
    int samples = 1000;
    uint64_t seed = 20260809;
};

namespace detail {

inline Poly random_homogeneous_nonzero(std::mt19937_64& rng, const RingPtr& ring, long degree,
                                       size_t max_terms) {
    auto basis = basis_of_degree(ring, degree);
    const FieldSpec& field = ring->field();
    uint32_t p = field.characteristic();
    for (;;) {
        std::vector<Poly::Term> terms;
        size_t k = 1 + rng() % max_terms;
        for (size_t i = 0; i < k; ++i) {
            uint32_t c = 1 + static_cast<uint32_t>(rng() % (p - 1 ? p - 1 : 1));
            terms.emplace_back(basis[rng() % basis.size()], Scalar::of_int(field, c));
        }
        Poly out = Poly::from_terms(ring, std::move(terms));
        if (!out.is_zero()) return out;
    }
}

inline ScalarVec linear_form_coords(const Poly& l, const RingPtr& ring) {
    ScalarVec row(ring->var_count(), Scalar::zero(ring->field()));
    for (const auto& t : l.terms())
        for (size_t i = 0; i < ring->var_count(); ++i)
            if (t.first.exps[i]) row[i] = t.second;
    return row;
}

}  // namespace detail

/// Case a: three summands of split (1,3). The coefficients of f,g,p,q on the
/// right-hand side lie in the ideal of the three linear forms, so all of
/// x^2, y^2, u^2, v^2 would have to -- impossible because four independent
/// linear forms never lie in the span of three.
inline CaseWitness case_a_witness(const FieldSpec& field, const WitnessConfig& cfg) {
    CaseWitness w;
    w.tag = 'a';
    w.check = "rank of (x,y,u,v) exceeds any 3 linear forms; x^2 stays outside a sample ideal";
    RingPtr R = WeightedRing::make(field, {{"x", 1}, {"y", 1}, {"u", 1}, {"v", 1}});

    ScalarMat coords;
    for (size_t i = 0; i < 4; ++i)
        coords.push_back(detail::linear_form_coords(Poly::variable(R, i), R));
    long rank4 = static_cast<long>(scalar_rank(coords));

    std::mt19937_64 rng(cfg.seed ^ 0xa);
    long max_rank = 0;
    for (int it = 0; it < cfg.samples; ++it) {
        ScalarMat m;
        for (int j = 0; j < 3; ++j)
            m.push_back(detail::linear_form_coords(
                detail::random_homogeneous_nonzero(rng, R, 1, 3), R));
        max_rank = std::max(max_rank, static_cast<long>(scalar_rank(m)));
    }

    auto member = ideal_member(
        parse_poly(R, "x^2"),
        buchberger({parse_poly(R, "x + y"), parse_poly(R, "y + u"), parse_poly(R, "u + v")}));

    w.evidence["rank_xyuv"] = rank4;
    w.evidence["max_sampled_rank"] = max_rank;
    w.evidence["samples"] = cfg.samples;
    w.evidence["x2_member_of_sample_ideal"] = member ? 1 : 0;
    w.passed = rank4 == 4 && max_rank <= 3 && !member;
    return w;
}

namespace detail {

/// Shared engine for cases b and c: random 3-generated ideals of the stated
/// shape in R = k[x,y,u,v] must have codimension <= 3, strictly below the
/// codimension 4 of (x^2, y^2, u^2, v^2); in particular they can never
/// contain all four squares.
inline CaseWitness krull_case_witness(char tag, int linear_gens, const FieldSpec& field,
                                      const WitnessConfig& cfg) {
    CaseWitness w;
    w.tag = tag;
    w.check = "sampled 3-generated ideals have codim <= 3 < 4 = codim of the four squares";
    RingPtr R = WeightedRing::make(field, {{"x", 1}, {"y", 1}, {"u", 1}, {"v", 1}});
    std::mt19937_64 rng(cfg.seed ^ static_cast<uint64_t>(tag));

    auto squares = buchberger({parse_poly(R, "x^2"), parse_poly(R, "y^2"), parse_poly(R, "u^2"),
                               parse_poly(R, "v^2")});
    long square_codim = ideal_dimension(squares).codimension;

    long max_codim = 0;
    long contain_all_squares = 0;
    std::vector<Poly> sq = {parse_poly(R, "x^2"), parse_poly(R, "y^2"), parse_poly(R, "u^2"),
                            parse_poly(R, "v^2")};
    for (int it = 0; it < cfg.samples; ++it) {
        std::vector<Poly> gens;
        for (int j = 0; j < linear_gens; ++j)
            gens.push_back(detail::random_homogeneous_nonzero(rng, R, 1, 3));
        for (int j = linear_gens; j < 3; ++j)
            gens.push_back(detail::random_homogeneous_nonzero(rng, R, 2, 4));
        auto G = buchberger(gens);
        max_codim = std::max(max_codim, ideal_dimension(G).codimension);
        bool all = true;
        for (const auto& s : sq)
            if (!ideal_member(s, G)) {
                all = false;
                break;
            }
        if (all) ++contain_all_squares;
    }
    w.evidence["samples"] = cfg.samples;
    w.evidence["max_codim"] = max_codim;
    w.evidence["square_ideal_codim"] = square_codim;
    w.evidence["ideals_containing_all_squares"] = contain_all_squares;
    w.passed = max_codim <= 3 && square_codim == 4 && contain_all_squares == 0;
    return w;
}

}  // namespace detail

inline CaseWitness case_b_witness(const FieldSpec& field, const WitnessConfig& cfg) {
    auto w = detail::krull_case_witness('b', 2, field, cfg);  // (x1, x2, ghat)
    return w;
}

inline CaseWitness case_c_witness(const FieldSpec& field, const WitnessConfig& cfg) {
    auto w = detail::krull_case_witness('c', 1, field, cfg);  // (x1, ghat1, ghat2)
    return w;
}

/// Case d: after killing x,y,u,v, a length-3 product identity forces either
/// FG + PQ = -G3*H3 (so FG + PQ would factor into quadrics that are linear
/// forms in F,G,P,Q) or FG = -(P*H2 + Q*H3). The first dies by exhausting
/// all linear x linear factorizations; the second by setting P = Q = 0.
inline CaseWitness case_d_witness(const FieldSpec& field, const WitnessConfig& cfg) {
    CaseWitness w;
    w.tag = 'd';
    w.check = "FG+PQ admits no linear*linear factorization; P,Q-restriction keeps FG alive";
    RingPtr S = WeightedRing::make(field, {{"F", 1}, {"G", 1}, {"P", 1}, {"Q", 1}});
    Poly target = parse_poly(S, "F*G + P*Q");

    // every monic linear form, by coefficient enumeration
    auto basis1 = basis_of_degree(S, 1);
    std::vector<Poly> monic;
    uint32_t p = field.characteristic();
    FpVec v(basis1.size(), 0);
    auto en = detail::MonicEnum::make(p, static_cast<int>(basis1.size()));
    for (uint64_t c = 0; c < en.count; ++c) {
        en.decode(c, v);
        std::vector<Poly::Term> terms;
        for (size_t i = 0; i < basis1.size(); ++i)
            if (v[i]) terms.emplace_back(basis1[i], Scalar::of_int(field, v[i]));
        monic.push_back(Poly::from_terms(S, std::move(terms)));
    }

    long factorizations = 0;
    long pairs_checked = 0;
    // target is monic, so a factorization into monic forms needs no extra
    // scalar: c*l1*l2 monic forces c = 1
    for (const auto& l1 : monic)
        for (const auto& l2 : monic) {
            ++pairs_checked;
            if (l1 * l2 == target) ++factorizations;
        }

    std::mt19937_64 rng(cfg.seed ^ 0xd);
    long restriction_failures = 0;
    for (int it = 0; it < cfg.samples; ++it) {
        Poly h2 = detail::random_homogeneous_nonzero(rng, S, 1, 3);
        Poly h3 = detail::random_homogeneous_nonzero(rng, S, 1, 3);
        Poly combo = parse_poly(S, "P") * h2 + parse_poly(S, "Q") * h3;
        bool kills_combo = restrict_zero(combo, {"P", "Q"}).is_zero();
        bool keeps_fg = restrict_zero(parse_poly(S, "F*G"), {"P", "Q"}) == parse_poly(S, "F*G");
        if (!kills_combo || !keeps_fg) ++restriction_failures;
    }

    w.evidence["monic_linear_forms"] = static_cast<long>(monic.size());
    w.evidence["pairs_checked"] = pairs_checked;
    w.evidence["factorizations_found"] = factorizations;
    w.evidence["samples"] = cfg.samples;
    w.evidence["restriction_failures"] = restriction_failures;
    w.passed = factorizations == 0 && restriction_failures == 0;
    return w;
}

inline std::vector<CaseWitness> case_witness_checks(const FieldSpec& field,
                                                    const WitnessConfig& cfg = {}) {
    return {case_a_witness(field, cfg), case_b_witness(field, cfg), case_c_witness(field, cfg),
            case_d_witness(field, cfg)};
}

}  // namespace forma

#endif
