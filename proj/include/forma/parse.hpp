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

#ifndef FORMA_PARSE_HPP
#define FORMA_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "forma/poly.hpp"

namespace forma {

/// Canonical text form: terms joined by " + ", each "c*x^e*y^f" with the
/// coefficient omitted when it is 1 and exponents omitted when 1. Negative
/// rational coefficients stay inside the coefficient ("x^2 + -1*y^2").
inline std::string print_poly(const Poly& a) {
    if (a.is_zero()) return "0";
    const auto& ring = *a.ring();
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) out += " + ";
        first = false;
        std::string mono;
        for (size_t i = 0; i < t.first.exps.size(); ++i) {
            uint16_t e = t.first.exps[i];
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += ring.symbol_name(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += t.second.to_string();
        } else if (t.second.is_one()) {
            out += mono;
        } else {
            out += t.second.to_string() + "*" + mono;
        }
    }
    return out;
}

inline std::string print_ring(const RingPtr& ring) { return ring->to_string(); }

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (text_.substr(pos_, w.size()) == w) {
            size_t end = pos_ + w.size();
            // must not continue as an identifier
            if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                       text_[end] == '_'))
                return false;
            pos_ = end;
            return true;
        }
        return false;
    }
    std::string identifier() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                    text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }
    bool at_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }
    BigInt integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }
    long small_integer(long max) {
        BigInt v = integer();
        if (v > max) fail("integer out of range");
        return v.convert_to<long>();
    }
    size_t position() const { return pos_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::SyntaxError,
                    what + " at offset " + std::to_string(pos_), static_cast<long>(pos_));
    }
    [[noreturn]] void fail_symbol(const std::string& name, size_t at) const {
        throw Error(ErrorKind::UnknownSymbol,
                    "unknown symbol '" + name + "' at offset " + std::to_string(at),
                    static_cast<long>(at));
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
};

class PolyParser {
public:
    PolyParser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), cur_(text) {}

    Poly run() {
        Poly p = expression();
        if (!cur_.eof()) cur_.fail("trailing input");
        return p;
    }

private:
    // expression := ['-'] term (('+'|'-') term)*
    Poly expression() {
        Poly acc = cur_.accept('-') ? -term() : term();
        for (;;) {
            if (cur_.accept('+'))
                acc = acc + term();
            else if (cur_.accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    // term := factor (('*'|'/') factor)*
    Poly term() {
        Poly acc = factor();
        for (;;) {
            if (cur_.accept('*')) {
                acc = acc * factor();
            } else if (cur_.accept('/')) {
                size_t at = cur_.position();
                Poly d = factor();
                if (!d.is_constant())
                    cur_.fail("'/' only divides by scalar literals");
                Scalar c = d.is_zero() ? Scalar::zero(ring_->field()) : d.terms()[0].second;
                if (c.is_zero())
                    throw Error(ErrorKind::FieldLiteralError,
                                "scalar division by zero in " + ring_->field().to_string() +
                                    " at offset " + std::to_string(at),
                                static_cast<long>(at));
                acc = acc.scaled(c.inverse());
            } else {
                return acc;
            }
        }
    }

    // factor := ['-'] atom ['^' uint]
    Poly factor() {
        if (cur_.accept('-')) return -factor();
        Poly base = atom();
        if (cur_.accept('^')) {
            long e = cur_.small_integer(4096);
            Poly acc = Poly::constant(ring_, Scalar::one(ring_->field()));
            for (long i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    Poly atom() {
        if (cur_.accept('(')) {
            Poly inner = expression();
            cur_.expect(')');
            return inner;
        }
        if (cur_.at_digit()) return Poly::constant(ring_, Scalar::of_big(ring_->field(), cur_.integer()));
        size_t at = cur_.position();
        std::string name = cur_.identifier();
        size_t slot = ring_->find(name);
        if (slot == WeightedRing::npos) cur_.fail_symbol(name, at);
        return Poly::variable(ring_, slot);
    }

    RingPtr ring_;
    Cursor cur_;
};

}  // namespace detail

/// Grammar: identifiers, integer literals, +, -, *, ^, parentheses; '/' is
/// accepted between a polynomial and a scalar literal. Products and powers
/// are expanded, so the result is always a canonical sum of monomials.
inline Poly parse_poly(const RingPtr& ring, std::string_view text) {
    return detail::PolyParser(ring, text).run();
}

/// Ring declarations look like "GF(2)[x:1, y:1, f:2; t]" with parameters
/// after the optional semicolon; "Q[...]" selects rational coefficients.
/// A leading keyword "ring" is permitted.
inline RingPtr parse_ring(std::string_view text) {
    detail::Cursor cur(text);
    cur.accept_word("ring");
    FieldSpec field = FieldSpec::rationals();
    if (cur.accept_word("GF")) {
        cur.expect('(');
        long p = cur.small_integer(1 << 16);
        cur.expect(')');
        field = FieldSpec::gf(static_cast<uint32_t>(p));
    } else if (cur.accept_word("QQ") || cur.accept_word("Q")) {
        field = FieldSpec::rationals();
    } else {
        cur.fail("expected field (GF(p) or Q)");
    }
    cur.expect('[');
    std::vector<VarDecl> vars;
    for (;;) {
        std::string name = cur.identifier();
        cur.expect(':');
        long d = cur.small_integer(1 << 16);
        if (d < 1) cur.fail("variable degree must be positive");
        vars.push_back(VarDecl{name, static_cast<uint32_t>(d)});
        if (!cur.accept(',')) break;
    }
    std::vector<std::string> params;
    if (cur.accept(';')) {
        for (;;) {
            params.push_back(cur.identifier());
            if (!cur.accept(',')) break;
        }
    }
    cur.expect(']');
    if (!cur.eof()) cur.fail("trailing input");
    return WeightedRing::make(field, std::move(vars), std::move(params));
}

inline FieldSpec parse_field(std::string_view text) {
    detail::Cursor cur(text);
    FieldSpec field = FieldSpec::rationals();
    if (cur.accept_word("GF")) {
        cur.expect('(');
        long p = cur.small_integer(1 << 16);
        cur.expect(')');
        field = FieldSpec::gf(static_cast<uint32_t>(p));
    } else if (cur.accept_word("QQ") || cur.accept_word("Q")) {
        field = FieldSpec::rationals();
    } else {
        cur.fail("expected field (GF(p) or Q)");
    }
    if (!cur.eof()) cur.fail("trailing input");
    return field;
}

}  // namespace forma

#endif
