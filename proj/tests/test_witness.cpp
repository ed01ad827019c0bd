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

#include <catch2/catch_amalgamated.hpp>

#include "forma/witness.hpp"
#include "test_support.hpp"

using namespace forma;

TEST_CASE("case a: four independent linear forms escape any three") {
    auto w = case_a_witness(FieldSpec::gf(2), WitnessConfig{.samples = 150});
    REQUIRE(w.passed);
    REQUIRE(w.evidence.at("rank_xyuv") == 4);
    REQUIRE(w.evidence.at("max_sampled_rank") <= 3);
    REQUIRE(w.evidence.at("x2_member_of_sample_ideal") == 0);
}

TEST_CASE("cases b and c: sampled ideals stay below codimension 4") {
    for (auto field : {FieldSpec::gf(2), FieldSpec::gf(5)}) {
        auto b = case_b_witness(field, WitnessConfig{.samples = 80});
        auto c = case_c_witness(field, WitnessConfig{.samples = 80});
        INFO("field " << field.to_string());
        REQUIRE(b.passed);
        REQUIRE(c.passed);
        REQUIRE(b.evidence.at("square_ideal_codim") == 4);
        REQUIRE(b.evidence.at("max_codim") <= 3);
        REQUIRE(c.evidence.at("max_codim") <= 3);
        REQUIRE(b.evidence.at("ideals_containing_all_squares") == 0);
    }
}

TEST_CASE("case d: the rank-4 quadric in independent quadrics is irreducible") {
    auto w2 = case_d_witness(FieldSpec::gf(2), WitnessConfig{.samples = 60});
    REQUIRE(w2.passed);
    REQUIRE(w2.evidence.at("monic_linear_forms") == 15);
    REQUIRE(w2.evidence.at("pairs_checked") == 225);
    REQUIRE(w2.evidence.at("factorizations_found") == 0);
    REQUIRE(w2.evidence.at("restriction_failures") == 0);

    auto w5 = case_d_witness(FieldSpec::gf(5), WitnessConfig{.samples = 60});
    REQUIRE(w5.passed);
    REQUIRE(w5.evidence.at("monic_linear_forms") == 156);  // (5^4-1)/4
    REQUIRE(w5.evidence.at("factorizations_found") == 0);
}

TEST_CASE("a reducible quadric is caught by the same factorization scan") {
    // sanity check of the scan itself: F*G does factor
    auto field = FieldSpec::gf(2);
    RingPtr S = WeightedRing::make(field, {{"F", 1}, {"G", 1}, {"P", 1}, {"Q", 1}});
    Poly fg = parse_poly(S, "F*G");
    auto basis1 = basis_of_degree(S, 1);
    long found = 0;
    for (uint64_t m1 = 1; m1 < 16; ++m1)
        for (uint64_t m2 = 1; m2 < 16; ++m2) {
            std::vector<Poly::Term> t1, t2;
            for (size_t i = 0; i < 4; ++i) {
                if ((m1 >> i) & 1) t1.emplace_back(basis1[i], Scalar::one(field));
                if ((m2 >> i) & 1) t2.emplace_back(basis1[i], Scalar::one(field));
            }
            if (Poly::from_terms(S, std::move(t1)) * Poly::from_terms(S, std::move(t2)) == fg)
                ++found;
        }
    REQUIRE(found > 0);
}

TEST_CASE("the full witness battery passes on both target fields") {
    for (auto field : {FieldSpec::gf(2), FieldSpec::gf(5)}) {
        auto all = case_witness_checks(field, WitnessConfig{.samples = 40});
        REQUIRE(all.size() == 4);
        for (const auto& w : all) {
            INFO(std::string("case ") + w.tag + " over " + field.to_string() + ": " + w.check);
            REQUIRE(w.passed);
        }
        REQUIRE(all[0].tag == 'a');
        REQUIRE(all[3].tag == 'd');
    }
}
