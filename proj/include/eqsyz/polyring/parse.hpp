#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace eqsyz {

namespace detail {

/// Recursive-descent parser for `3/2*x^2*y - (x+y)^3`.
class PolynomialParser {
public:
    PolynomialParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    Polynomial expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = get() == '-';
        }
        Polynomial acc = term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            Polynomial t = term();
            if (c == '+') acc += t;
            else acc -= t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = power();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                get();
                acc = acc * power();
            } else if (c == '/') {
                get();
                skip_ws();
                Integer d = integer();
                if (d == 0) fail("division by zero");
                acc *= Rational(1) / Rational(d);
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial power() {
        Polynomial base = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            Integer e = integer();
            if (e < 0 || e > 10000) fail("exponent out of range");
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Polynomial p = expr();
            skip_ws();
            if (get() != ')') fail("expected ')'");
            return p;
        }
        if (c == '-') {
            get();
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Polynomial::constant(ring_, Rational(integer()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            auto idx = ring_->index_of(name);
            if (!idx) fail("unknown variable '" + name + "'");
            return Polynomial::variable(ring_, *idx);
        }
        fail(c == '\0' ? "unexpected end of input" : "unexpected character '" + std::string(1, c) + "'");
    }

    Integer integer() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InvalidInput("polynomial parse error at offset " + std::to_string(pos_) + " in '" +
                           std::string(text_) + "': " + msg);
    }

    const RingPtr& ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
    return detail::PolynomialParser(ring, text).parse();
}

inline Rational parse_rational(const std::string& text) {
    try {
        Rational q(text);
        if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidInput("invalid rational number '" + text + "'");
    }
}

} // namespace eqsyz
