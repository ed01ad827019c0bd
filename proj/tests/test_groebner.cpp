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

#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "forma/groebner.hpp"
#include "forma/linalg.hpp"
#include "forma/parse.hpp"
#include "test_support.hpp"

using namespace forma;
using forma::testing::ring_of;

namespace {

Poly pp(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

/// Checks the defining properties: every input generator reduces to zero and
/// every S-polynomial of the basis reduces to zero.
void check_is_groebner(const std::vector<Poly>& gens, const GroebnerBasis& G) {
    for (const auto& g : gens) REQUIRE(normal_form(g, G).is_zero());
    for (size_t i = 0; i < G.generators.size(); ++i)
        for (size_t j = i + 1; j < G.generators.size(); ++j) {
            const Poly &fi = G.generators[i], &fj = G.generators[j];
            const Monomial lti = detail::leading_term(fi, G.order).first;
            const Monomial ltj = detail::leading_term(fj, G.order).first;
            Monomial l = Monomial::lcm(lti, ltj);
            Poly s =
                Poly::monomial(G.ring, l.quotient(lti), Scalar::one(G.ring->field())) * fi -
                Poly::monomial(G.ring, l.quotient(ltj), Scalar::one(G.ring->field())) * fj;
            if (!s.is_zero()) REQUIRE(normal_form(s, G).is_zero());
        }
}

/// Membership in an ideal generated by independent linear forms, decided by
/// pure linear algebra: substitute a parametrization of the common zero set
/// and test for the zero polynomial.
bool linear_ideal_member(const Poly& f, const std::vector<Poly>& linear_gens) {
    const RingPtr& ring = f.ring();
    size_t n = ring->var_count();
    const FieldSpec& field = ring->field();
    // matrix of the forms
    ScalarMat m;
    for (const auto& g : linear_gens) {
        ScalarVec row(n, Scalar::zero(field));
        for (const auto& t : g.terms())
            for (size_t i = 0; i < n; ++i)
                if (t.first.exps[i]) row[i] = t.second;
        m.push_back(row);
    }
    // row-reduce to find pivots
    size_t rank = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < n && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        Scalar inv = m[rank][col].inverse();
        for (size_t j = 0; j < n; ++j) m[rank][j] = m[rank][j] * inv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Scalar s = m[r][col];
            for (size_t j = 0; j < n; ++j) m[r][j] = m[r][j] - s * m[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    // parametrize: pivot variable -> -(sum of free columns), free -> itself
    std::map<std::string, Poly> img;
    std::vector<bool> is_pivot(n, false);
    for (size_t k = 0; k < pivots.size(); ++k) is_pivot[pivots[k]] = true;
    for (size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) img.emplace(ring->vars()[i].name, Poly::variable(ring, i));
    for (size_t k = 0; k < pivots.size(); ++k) {
        Poly image = Poly::zero(ring);
        for (size_t j = 0; j < n; ++j) {
            if (is_pivot[j]) continue;
            if (!m[k][j].is_zero()) image = image - Poly::variable(ring, j).scaled(m[k][j]);
        }
        img.emplace(ring->vars()[pivots[k]].name, image);
    }
    return substitute(f, ring, img).is_zero();
}

}  // namespace

TEST_CASE("term orders") {
    auto r = ring_of("Q[x:1, y:1]");
    auto x2y = pp(r, "x^2*y").leading_term().first;
    auto y3 = pp(r, "y^3").leading_term().first;
    REQUIRE(TermOrder::grevlex().compare(x2y, y3) > 0);
    REQUIRE(TermOrder::lex().compare(x2y, y3) > 0);
    auto xz2 = pp(ring_of("Q[x:1, y:1, z:1]"), "x*z^2").leading_term().first;
    auto y2z = pp(ring_of("Q[x:1, y:1, z:1]"), "y^2*z").leading_term().first;
    // grevlex: same degree, last differing exponent smaller wins
    REQUIRE(TermOrder::grevlex().compare(y2z, xz2) > 0);
    REQUIRE(TermOrder::lex().compare(xz2, y2z) > 0);
}

TEST_CASE("normal form examples") {
    auto r = ring_of("Q[x:1, y:1]");
    REQUIRE(normal_form(pp(r, "x^2"), {pp(r, "x")}, TermOrder::grevlex()).is_zero());
    REQUIRE(normal_form(pp(r, "x"), {pp(r, "x^2"), pp(r, "y")}, TermOrder::grevlex()) ==
            pp(r, "x"));
    REQUIRE(normal_form(pp(r, "x^2*y + y^3"), {pp(r, "x^2 - y^2")}, TermOrder::grevlex()) ==
            pp(r, "2*y^3"));
}

TEST_CASE("normal form refuses weighted rings and is idempotent") {
    auto w = ring_of("Q[x:1, f:2]");
    try {
        normal_form(pp(w, "x^2"), {pp(w, "x")}, TermOrder::grevlex());
        FAIL("expected WeightedRingUnsupported");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::WeightedRingUnsupported);
    }

    testing::Rng rng(8);
    auto r = ring_of("GF(5)[x:1, y:1, z:1]");
    for (int it = 0; it < 40; ++it) {
        Poly f = testing::random_poly(rng, r, 3, 5);
        std::vector<Poly> g = {testing::random_homogeneous(rng, r, 2, 3, true),
                               testing::random_homogeneous(rng, r, 1, 2, true)};
        Poly n1 = normal_form(f, g, TermOrder::grevlex());
        if (n1.is_zero()) continue;
        REQUIRE(normal_form(n1, g, TermOrder::grevlex()) == n1);
    }
}

TEST_CASE("buchberger on textbook inputs") {
    auto r4 = ring_of("Q[x:1, y:1, u:1, v:1]");
    auto squares = buchberger({pp(r4, "x^2"), pp(r4, "y^2"), pp(r4, "u^2"), pp(r4, "v^2")});
    REQUIRE(squares.generators.size() == 4);
    REQUIRE(squares.generators[0] == pp(r4, "x^2"));
    REQUIRE(squares.generators[3] == pp(r4, "v^2"));

    auto r2 = ring_of("Q[x:1, y:1]");
    auto lin = buchberger({pp(r2, "x + y"), pp(r2, "x - y")});
    REQUIRE(lin.generators.size() == 2);
    REQUIRE(lin.generators[0] == pp(r2, "x"));
    REQUIRE(lin.generators[1] == pp(r2, "y"));

    auto hyp = buchberger({pp(r2, "x*y - 1"), pp(r2, "y^2 - 1")}, TermOrder::lex());
    REQUIRE(hyp.generators.size() == 2);
    REQUIRE(hyp.generators[0] == pp(r2, "x - y"));
    REQUIRE(hyp.generators[1] == pp(r2, "y^2 - 1"));
}

TEST_CASE("ideal membership") {
    auto r2 = ring_of("Q[x:1, y:1]");
    REQUIRE(ideal_member(pp(r2, "x^2"), buchberger({pp(r2, "x"), pp(r2, "y")})));
    REQUIRE(!ideal_member(pp(r2, "x"), buchberger({pp(r2, "x^2"), pp(r2, "y")})));

    auto r4 = ring_of("Q[x:1, y:1, u:1, v:1]");
    auto G = buchberger({pp(r4, "x + y"), pp(r4, "y + u"), pp(r4, "u + v")});
    REQUIRE(!ideal_member(pp(r4, "x^2"), G));
    REQUIRE(linear_ideal_member(pp(r4, "x^2"), {pp(r4, "x + y"), pp(r4, "y + u"),
                                                pp(r4, "u + v")}) == false);
}

TEST_CASE("membership agrees with linear algebra on linear-generated ideals") {
    testing::Rng rng(606);
    auto r = ring_of("GF(5)[x:1, y:1, z:1, w:1]");
    for (int it = 0; it < 60; ++it) {
        std::vector<Poly> lins;
        size_t k = 1 + rng() % 3;
        for (size_t i = 0; i < k; ++i) lins.push_back(testing::random_homogeneous(rng, r, 1, 3, true));
        auto G = buchberger(lins);
        Poly f = testing::random_homogeneous(rng, r, 2, 4, true);
        REQUIRE(ideal_member(f, G) == linear_ideal_member(f, lins));
        // a guaranteed member
        Poly member = lins[0] * testing::random_homogeneous(rng, r, 1, 3, true);
        REQUIRE(ideal_member(member, G));
        REQUIRE(linear_ideal_member(member, lins));
    }
}

TEST_CASE("reduced basis is unique under generator shuffling") {
    testing::Rng rng(1234);
    for (const char* decl : {"GF(5)[x:1, y:1, z:1]", "Q[x:1, y:1, z:1]"}) {
        auto r = ring_of(decl);
        for (int it = 0; it < 25; ++it) {
            std::vector<Poly> gens;
            size_t k = 2 + rng() % 3;
            for (size_t i = 0; i < k; ++i)
                gens.push_back(testing::random_poly(rng, r, 3, 3));
            bool all_zero = std::all_of(gens.begin(), gens.end(),
                                        [](const Poly& p) { return p.is_zero(); });
            if (all_zero) continue;
            auto G1 = buchberger(gens);
            check_is_groebner(gens, G1);
            std::shuffle(gens.begin(), gens.end(), rng);
            auto G2 = buchberger(gens);
            REQUIRE(G1.generators.size() == G2.generators.size());
            for (size_t i = 0; i < G1.generators.size(); ++i)
                REQUIRE(G1.generators[i] == G2.generators[i]);
        }
    }
}

TEST_CASE("dimension reports") {
    auto r4 = ring_of("Q[x:1, y:1, u:1, v:1]");
    auto squares = buchberger({pp(r4, "x^2"), pp(r4, "y^2"), pp(r4, "u^2"), pp(r4, "v^2")});
    auto d = ideal_dimension(squares);
    REQUIRE(d.dimension == 0);
    REQUIRE(d.codimension == 4);
    REQUIRE(!d.unit_ideal);
    REQUIRE(d.independent_set.empty());

    auto r2 = ring_of("Q[x:1, y:1]");
    auto dx = ideal_dimension(buchberger({pp(r2, "x")}));
    REQUIRE(dx.dimension == 1);
    REQUIRE(dx.codimension == 1);
    REQUIRE(dx.independent_set == std::vector<std::string>{"y"});

    auto r3 = ring_of("Q[x:1, y:1, z:1]");
    auto dxyz = ideal_dimension(buchberger({pp(r3, "x*y"), pp(r3, "x*z")}));
    REQUIRE(dxyz.dimension == 2);
    REQUIRE(dxyz.codimension == 1);
    REQUIRE(dxyz.independent_set == std::vector<std::string>{"y", "z"});

    auto unit = ideal_dimension(buchberger({pp(r2, "x"), pp(r2, "x + 1")}));
    REQUIRE(unit.unit_ideal);
    REQUIRE(unit.dimension == -1);
}

TEST_CASE("singular locus codimension") {
    auto r5 = ring_of("Q[x1:1, x2:1, x3:1, x4:1, x5:1]");
    auto fermat = pp(r5, "x1^4 + x2^4 + x3^4 + x4^4 + x5^4");
    auto d = singular_locus_codim(fermat);
    REQUIRE(d.dimension == 0);
    REQUIRE(d.codimension == 5);

    auto r2 = ring_of("Q[x1:1, x2:1]");
    auto d2 = singular_locus_codim(pp(r2, "x1*x2"));
    REQUIRE(d2.codimension == 2);

    REQUIRE_THROWS_AS(singular_locus_codim(Poly::zero(r2)), Error);
    // char 2: derivative of x^2 vanishes, f itself still cuts the locus
    auto g2 = ring_of("GF(2)[x1:1, x2:1]");
    auto dchar = singular_locus_codim(pp(g2, "x1^2"));
    REQUIRE(dchar.codimension == 1);
}

TEST_CASE("random 3-generated ideals obey the Krull height bound") {
    testing::Rng rng(5005);
    auto r = ring_of("GF(5)[x:1, y:1, u:1, v:1]");
    for (int it = 0; it < 150; ++it) {
        std::vector<Poly> gens;
        for (int i = 0; i < 3; ++i) {
            long d = 1 + static_cast<long>(rng() % 2);
            gens.push_back(testing::random_homogeneous(rng, r, d, 3, true));
        }
        auto rep = ideal_dimension(buchberger(gens));
        REQUIRE(!rep.unit_ideal);  // homogeneous of positive degree
        REQUIRE(rep.codimension <= 3);
    }
}
