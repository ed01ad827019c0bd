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

#ifndef FORMA_SCALAR_HPP
#define FORMA_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "forma/error.hpp"

namespace forma {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Coefficient field: GF(p) for a prime p < 2^16, or the rationals (p = 0).
class FieldSpec {
public:
    static FieldSpec gf(uint32_t p) {
        if (!is_small_prime(p))
            throw Error(ErrorKind::InvalidFieldSpec,
                        "characteristic must be a prime below 2^16, got " + std::to_string(p));
        return FieldSpec(p);
    }
    static FieldSpec rationals() { return FieldSpec(0); }

    uint32_t characteristic() const noexcept { return p_; }
    bool is_prime_field() const noexcept { return p_ != 0; }
    bool is_rationals() const noexcept { return p_ == 0; }
    bool is_finite() const noexcept { return p_ != 0; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept { return a.p_ == b.p_; }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) noexcept { return a.p_ != b.p_; }

    std::string to_string() const {
        return p_ == 0 ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
    }

    static bool is_small_prime(uint32_t p) {
        if (p < 2 || p >= (1u << 16)) return false;
        for (uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

private:
    explicit FieldSpec(uint32_t p) : p_(p) {}
    uint32_t p_ = 0;
};

/// Exact field element in canonical form: a residue in [0, p) for GF(p), a
/// reduced fraction for Q. All operations are pure; scalars are value types.
class Scalar {
public:
    Scalar() : spec_(FieldSpec::rationals()), q_(0) {}

    static Scalar zero(const FieldSpec& s) { return Scalar(s); }
    static Scalar one(const FieldSpec& s) { return of_int(s, 1); }

    static Scalar of_int(const FieldSpec& s, long long v) {
        Scalar r(s);
        if (s.is_prime_field()) {
            long long p = s.characteristic();
            long long m = v % p;
            if (m < 0) m += p;
            r.r_ = static_cast<uint32_t>(m);
        } else {
            r.q_ = v;
        }
        return r;
    }

    static Scalar of_big(const FieldSpec& s, const BigInt& v) {
        Scalar r(s);
        if (s.is_prime_field()) {
            BigInt m = v % s.characteristic();
            if (m < 0) m += s.characteristic();
            r.r_ = m.convert_to<uint32_t>();
        } else {
            r.q_ = v;
        }
        return r;
    }

    static Scalar of_rational(const FieldSpec& s, const BigRational& v) {
        if (s.is_prime_field()) {
            Scalar num = of_big(s, numerator(v));
            Scalar den = of_big(s, denominator(v));
            if (den.is_zero())
                throw Error(ErrorKind::FieldLiteralError,
                            "denominator vanishes in " + s.to_string());
            return num / den;
        }
        Scalar r(s);
        r.q_ = v;
        return r;
    }

    const FieldSpec& spec() const noexcept { return spec_; }

    bool is_zero() const noexcept { return spec_.is_prime_field() ? r_ == 0 : q_.is_zero(); }
    bool is_one() const noexcept {
        return spec_.is_prime_field() ? r_ == 1 : q_ == 1;
    }

    /// Residue value for prime fields.
    uint32_t residue() const {
        if (!spec_.is_prime_field())
            throw Error(ErrorKind::SpecMismatch, "residue() requires a prime field");
        return r_;
    }
    const BigRational& rational() const {
        if (!spec_.is_rationals())
            throw Error(ErrorKind::SpecMismatch, "rational() requires Q");
        return q_;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.require_same(b);
        Scalar r(a.spec_);
        if (a.spec_.is_prime_field()) {
            uint64_t s = static_cast<uint64_t>(a.r_) + b.r_;
            uint32_t p = a.spec_.characteristic();
            r.r_ = static_cast<uint32_t>(s >= p ? s - p : s);
        } else {
            r.q_ = a.q_ + b.q_;
        }
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        a.require_same(b);
        Scalar r(a.spec_);
        if (a.spec_.is_prime_field()) {
            uint32_t p = a.spec_.characteristic();
            r.r_ = a.r_ >= b.r_ ? a.r_ - b.r_ : a.r_ + p - b.r_;
        } else {
            r.q_ = a.q_ - b.q_;
        }
        return r;
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.require_same(b);
        Scalar r(a.spec_);
        if (a.spec_.is_prime_field()) {
            // p < 2^16, so the product fits a native 64-bit word.
            r.r_ = static_cast<uint32_t>((static_cast<uint64_t>(a.r_) * b.r_) %
                                         a.spec_.characteristic());
        } else {
            r.q_ = a.q_ * b.q_;
        }
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar operator-() const {
        Scalar r(spec_);
        if (spec_.is_prime_field()) {
            r.r_ = r_ == 0 ? 0 : spec_.characteristic() - r_;
        } else {
            r.q_ = -q_;
        }
        return r;
    }

    Scalar inverse() const {
        if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
        Scalar r(spec_);
        if (spec_.is_prime_field()) {
            r.r_ = mod_inverse(r_, spec_.characteristic());
        } else {
            r.q_ = 1 / q_;
        }
        return r;
    }

    Scalar pow(uint64_t e) const {
        Scalar acc = one(spec_);
        Scalar base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.spec_ != b.spec_) return false;
        return a.spec_.is_prime_field() ? a.r_ == b.r_ : a.q_ == b.q_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Decimal residue for GF(p), "a/b" (reduced, positive denominator) for Q.
    std::string to_string() const {
        if (spec_.is_prime_field()) return std::to_string(r_);
        std::string s = numerator(q_).str();
        if (denominator(q_) != 1) s += "/" + denominator(q_).str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.to_string();
    }

    static uint32_t mod_inverse(uint32_t a, uint32_t p) {
        // extended Euclid on (a, p); p prime and 0 < a < p
        int64_t t = 0, newt = 1;
        int64_t r = p, newr = a;
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += p;
        return static_cast<uint32_t>(t);
    }

private:
    explicit Scalar(const FieldSpec& s) : spec_(s), r_(0), q_(0) {}

    void require_same(const Scalar& other) const {
        if (spec_ != other.spec_)
            throw Error(ErrorKind::SpecMismatch,
                        "mixed fields " + spec_.to_string() + " and " + other.spec_.to_string());
    }

    FieldSpec spec_;
    uint32_t r_ = 0;
    BigRational q_;
};

enum class ScalarOp { Add, Sub, Mul, Div };

inline Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op) {
    switch (op) {
        case ScalarOp::Add: return a + b;
        case ScalarOp::Sub: return a - b;
        case ScalarOp::Mul: return a * b;
        case ScalarOp::Div:
            if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
            return a / b;
    }
    throw Error(ErrorKind::InvalidInput, "bad scalar op");
}

inline Scalar scalar_inverse(const Scalar& a) { return a.inverse(); }

}  // namespace forma

#endif
