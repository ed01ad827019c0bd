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

#ifndef FORMA_TEST_SUPPORT_HPP
#define FORMA_TEST_SUPPORT_HPP

#include <cstdlib>
#include <random>
#include <string>

#include "forma/parse.hpp"
#include "forma/poly.hpp"

namespace forma::testing {

using Rng = std::mt19937_64;

inline RingPtr ring_of(const std::string& decl) { return parse_ring(decl); }

inline Scalar random_scalar(Rng& rng, const FieldSpec& f, bool nonzero = false) {
    for (;;) {
        Scalar s = Scalar::zero(f);
        if (f.is_prime_field()) {
            s = Scalar::of_int(f, static_cast<long long>(rng() % f.characteristic()));
        } else {
            long long num = static_cast<long long>(rng() % 19) - 9;
            long long den = 1 + static_cast<long long>(rng() % 9);
            s = Scalar::of_rational(f, BigRational(num, den));
        }
        if (!nonzero || !s.is_zero()) return s;
    }
}

/// Random polynomial with terms drawn from the degree-d basis.
inline Poly random_homogeneous(Rng& rng, const RingPtr& ring, long degree, size_t max_terms,
                               bool nonzero = false) {
    auto basis = basis_of_degree(ring, degree);
    for (;;) {
        std::vector<Poly::Term> terms;
        size_t k = 1 + rng() % max_terms;
        for (size_t i = 0; i < k; ++i) {
            const Monomial& m = basis[rng() % basis.size()];
            terms.emplace_back(m, random_scalar(rng, ring->field(), true));
        }
        Poly p = Poly::from_terms(ring, std::move(terms));
        if (!nonzero || !p.is_zero()) return p;
    }
}

/// Random not-necessarily-homogeneous polynomial of degree <= maxdeg.
inline Poly random_poly(Rng& rng, const RingPtr& ring, long maxdeg, size_t max_terms) {
    std::vector<Poly::Term> terms;
    size_t k = 1 + rng() % max_terms;
    for (size_t i = 0; i < k; ++i) {
        long d = static_cast<long>(rng() % (maxdeg + 1));
        auto basis = basis_of_degree(ring, d);
        if (basis.empty()) continue;
        terms.emplace_back(basis[rng() % basis.size()], random_scalar(rng, ring->field()));
    }
    return Poly::from_terms(ring, std::move(terms));
}

inline std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("FORMA_FIXTURES");
    return std::string(dir ? dir : "tests/fixtures") + "/" + name;
}

}  // namespace forma::testing

#endif
