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

#include "forma/parse.hpp"
#include "test_support.hpp"

using namespace forma;
using forma::testing::ring_of;

TEST_CASE("the four-term quartic parses and reprints canonically") {
    auto r = ring_of("GF(2)[x:1, y:1, u:1, v:1, f:2, g:2, p:2, q:2]");
    Poly h = parse_poly(r, "x^2*f + y^2*g + u^2*p + v^2*q");
    REQUIRE(h.term_count() == 4);
    REQUIRE(print_poly(h) == "x^2*f + y^2*g + u^2*p + v^2*q");
    REQUIRE(parse_poly(r, print_poly(h)) == h);
}

TEST_CASE("canonical printing rules") {
    auto q = ring_of("Q[x:1, y:1]");
    REQUIRE(print_poly(Poly::zero(q)) == "0");
    REQUIRE(print_poly(parse_poly(q, "x^2 - y^2")) == "x^2 + -1*y^2");
    REQUIRE(print_poly(parse_poly(q, "(x+y)*(x-y)")) == "x^2 + -1*y^2");
    REQUIRE(print_poly(parse_poly(q, "3")) == "3");
    REQUIRE(print_poly(parse_poly(q, "x/2")) == "1/2*x");
    REQUIRE(print_poly(parse_poly(q, "1 + x")) == "x + 1");
    REQUIRE(print_poly(parse_poly(q, "2*x*x*y")) == "2*x^2*y");
}

TEST_CASE("unknown symbols are reported with their position") {
    auto r = ring_of("Q[x:1, y:1]");
    try {
        parse_poly(r, "x + w");
        FAIL("expected UnknownSymbol");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::UnknownSymbol);
        REQUIRE(e.position() == 4);
    }
}

TEST_CASE("syntax errors carry positions") {
    auto r = ring_of("Q[x:1, y:1]");
    REQUIRE_THROWS_AS(parse_poly(r, "x +"), Error);
    REQUIRE_THROWS_AS(parse_poly(r, "(x"), Error);
    REQUIRE_THROWS_AS(parse_poly(r, "x ^"), Error);
    REQUIRE_THROWS_AS(parse_poly(r, "x y"), Error);
    try {
        parse_poly(r, "x * (y + )");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::SyntaxError);
        REQUIRE(e.position() >= 8);
    }
}

TEST_CASE("field literal errors") {
    auto gf2 = ring_of("GF(2)[x:1]");
    try {
        parse_poly(gf2, "1/2");
        FAIL("expected FieldLiteralError");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::FieldLiteralError);
    }
    auto q = ring_of("Q[x:1]");
    REQUIRE(parse_poly(q, "1/2 + 1/2") == parse_poly(q, "1"));
    REQUIRE_THROWS_AS(parse_poly(q, "x/y"), Error);  // '/' only divides by scalars
    REQUIRE_THROWS_AS(parse_poly(q, "1/0"), Error);
}

TEST_CASE("scalar division literals reduce in prime fields") {
    auto gf7 = ring_of("GF(7)[x:1]");
    REQUIRE(parse_poly(gf7, "1/2") == parse_poly(gf7, "4"));
    REQUIRE(parse_poly(gf7, "x/2") == parse_poly(gf7, "4*x"));
}

TEST_CASE("ring declarations round trip") {
    for (const char* decl :
         {"GF(2)[x:1, y:1, u:1, v:1, f:2, g:2, p:2, q:2; t]", "Q[x:1, y:1]",
          "GF(65521)[a:3, b:2, c:1]"}) {
        auto r = parse_ring(decl);
        REQUIRE(print_ring(r) == decl);
        REQUIRE(parse_ring(print_ring(r))->structurally_equal(*r));
    }
    // leading keyword and loose whitespace are accepted
    auto r = parse_ring("ring GF(2)[ x:1 ,y:1 ; t ]");
    REQUIRE(print_ring(r) == "GF(2)[x:1, y:1; t]");
    REQUIRE(parse_field("GF(5)") == FieldSpec::gf(5));
    REQUIRE(parse_field("Q") == FieldSpec::rationals());
    REQUIRE_THROWS_AS(parse_ring("GF(6)[x:1]"), Error);
    REQUIRE_THROWS_AS(parse_ring("GF(2)[x:0]"), Error);
    REQUIRE_THROWS_AS(parse_ring("GF(2)[x:1] junk"), Error);
}

TEST_CASE("round trip on random polynomials") {
    testing::Rng rng(5150);
    for (const char* decl : {"GF(5)[x:1, y:1, f:2; t]", "Q[x:1, y:1, f:2; t]"}) {
        auto r = ring_of(decl);
        for (int it = 0; it < 120; ++it) {
            Poly a = testing::random_poly(rng, r, 4, 6);
            Poly back = parse_poly(r, print_poly(a));
            REQUIRE(back == a);
            // canonical print is a fixed point
            REQUIRE(print_poly(back) == print_poly(a));
        }
    }
}
