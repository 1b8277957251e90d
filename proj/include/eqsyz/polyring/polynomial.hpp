#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace eqsyz {

struct PolyTerm {
    Monomial mono;
    Rational coeff;
};

/// Sparse polynomial over Q; terms are kept sorted by decreasing monomial order
/// and carry nonzero coefficients only.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, const Rational& c) {
        Polynomial p(ring);
        if (c != 0) p.terms_.push_back({Monomial{}, c});
        return p;
    }

    static Polynomial variable(RingPtr ring, std::size_t i) {
        Polynomial p(ring);
        p.terms_.push_back({ring->variable(i), Rational(1)});
        return p;
    }

    static Polynomial term(RingPtr ring, const Monomial& m, const Rational& c) {
        Polynomial p(std::move(ring));
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    /// Builds from arbitrary (monomial, coefficient) pairs; sorts and merges.
    static Polynomial from_terms(RingPtr ring, std::vector<PolyTerm> terms) {
        Polynomial p(std::move(ring));
        std::sort(terms.begin(), terms.end(), [](const PolyTerm& a, const PolyTerm& b) {
            return compare_monomials(a.mono, b.mono) > 0;
        });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff == 0) p.terms_.pop_back();
            } else if (t.coeff != 0) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<PolyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const PolyTerm& leading() const { return terms_.front(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    Rational constant_term() const {
        if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
        return Rational(0);
    }

    bool is_homogeneous() const {
        for (const auto& t : terms_) {
            if (t.mono.degree != terms_.front().mono.degree) return false;
        }
        return true;
    }

    /// Common weighted degree, or nullopt for the zero polynomial.
    /// Throws NotHomogeneous when terms have different degrees.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        if (!is_homogeneous()) throw NotHomogeneous("polynomial is not homogeneous: " + to_string());
        return terms_.front().mono.degree;
    }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& t : p.terms_) t.coeff = -t.coeff;
        return p;
    }

    Polynomial& operator+=(const Polynomial& o) { return axpy(Rational(1), Monomial{}, o); }
    Polynomial& operator-=(const Polynomial& o) { return axpy(Rational(-1), Monomial{}, o); }

    /// this += c * m * o
    Polynomial& axpy(const Rational& c, const Monomial& m, const Polynomial& o) {
        adopt_ring(o);
        if (c == 0 || o.is_zero()) return *this;
        std::vector<PolyTerm> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size()) {
                out.push_back(std::move(terms_[i++]));
                continue;
            }
            Monomial mj = o.terms_[j].mono * m;
            int cmp = i == terms_.size() ? -1 : compare_monomials(terms_[i].mono, mj);
            if (cmp > 0) {
                out.push_back(std::move(terms_[i++]));
            } else if (cmp < 0) {
                out.push_back({mj, c * o.terms_[j].coeff});
                ++j;
            } else {
                Rational s = terms_[i].coeff + c * o.terms_[j].coeff;
                if (s != 0) out.push_back({mj, std::move(s)});
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    Polynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& t : terms_) t.coeff *= c;
        }
        return *this;
    }

    Polynomial operator*(const Polynomial& o) const {
        require_same_ring(ring_, o.ring_, "polynomial multiplication");
        std::vector<PolyTerm> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_) {
            for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, a.coeff * b.coeff});
        }
        return from_terms(ring_, std::move(prod));
    }

    Polynomial operator*(const Rational& c) const {
        Polynomial p = *this;
        p *= c;
        return p;
    }

    Polynomial mul_term(const Monomial& m, const Rational& c) const {
        Polynomial p(ring_);
        if (c == 0) return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
        return p;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

    Polynomial pow(unsigned n) const {
        Polynomial result = constant(ring_, Rational(1));
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1U) result = result * base;
            n >>= 1U;
            if (n > 0) base = base * base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) {
                return false;
            }
        }
        return true;
    }

    /// Makes the leading coefficient 1 (no-op on zero).
    Polynomial monic() const {
        if (is_zero()) return *this;
        Rational inv = 1 / leading().coeff;
        return *this * inv;
    }

    /// Substitutes `images[i]` for the i-th variable; all images share `target`.
    Polynomial substitute(const std::vector<Polynomial>& images, const RingPtr& target) const {
        if (images.size() != ring_->num_vars()) {
            throw InvalidInput("substitute: expected one image per variable");
        }
        std::vector<std::vector<Polynomial>> powers(images.size());
        Polynomial result(target);
        for (const auto& t : terms_) {
            Polynomial term = constant(target, t.coeff);
            for (std::size_t i = 0; i < images.size(); ++i) {
                int e = t.mono.exp[i];
                if (e == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(constant(target, Rational(1)));
                while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
                term = term * pw[e];
            }
            result += term;
        }
        return result;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            Rational a = abs(c);
            bool unit = a == 1;
            bool one = t.mono.is_one();
            if (!unit || one) {
                os << a.get_str();
                if (!one) os << "*";
            }
            bool first_var = true;
            for (std::size_t i = 0; i < ring_->num_vars(); ++i) {
                int e = t.mono.exp[i];
                if (e == 0) continue;
                if (!first_var) os << "*";
                first_var = false;
                os << ring_->names()[i];
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    void adopt_ring(const Polynomial& o) {
        if (!ring_) {
            ring_ = o.ring_;
        } else if (o.ring_) {
            require_same_ring(ring_, o.ring_, "polynomial arithmetic");
        }
    }

    RingPtr ring_;
    std::vector<PolyTerm> terms_;
};

/// Exact multivariate division. Returns the quotient when `divisor` divides `dividend`.
inline std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
    if (divisor.is_zero()) throw InvalidInput("division by the zero polynomial");
    require_same_ring(dividend.ring(), divisor.ring(), "divide_exact");
    Polynomial rest = dividend;
    Polynomial quotient(dividend.ring());
    const PolyTerm& lead = divisor.leading();
    while (!rest.is_zero()) {
        const PolyTerm& top = rest.leading();
        if (!lead.mono.divides(top.mono)) return std::nullopt;
        Monomial m = top.mono / lead.mono;
        Rational c = top.coeff / lead.coeff;
        quotient += Polynomial::term(dividend.ring(), m, c);
        rest.axpy(-c, m, divisor);
    }
    return quotient;
}

} // namespace eqsyz
