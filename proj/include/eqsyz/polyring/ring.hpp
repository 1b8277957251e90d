#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"

namespace eqsyz {

using Rational = mpq_class;
using Integer = mpz_class;

/// Upper bound on the number of ring variables; exponent vectors are stored inline.
inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector with its cached weighted degree.
struct Monomial {
    std::array<std::int32_t, kMaxVars> exp{};
    std::int32_t degree = 0;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }

    bool is_one() const {
        return std::all_of(exp.begin(), exp.end(), [](std::int32_t e) { return e == 0; });
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (exp[i] > other.exp[i]) return false;
        }
        return true;
    }

    Monomial operator*(const Monomial& other) const {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = exp[i] + other.exp[i];
        m.degree = degree + other.degree;
        return m;
    }

    /// Quotient; requires `other.divides(*this)`.
    Monomial operator/(const Monomial& other) const {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = exp[i] - other.exp[i];
        m.degree = degree - other.degree;
        return m;
    }

    bool coprime(const Monomial& other) const {
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (exp[i] != 0 && other.exp[i] != 0) return false;
        }
        return true;
    }
};

/// Weighted degree-reverse-lexicographic comparison: -1, 0 or 1.
inline int compare_monomials(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
    for (std::size_t i = kMaxVars; i-- > 0;) {
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
    }
    return 0;
}

/// Polynomial ring Q[x_1, ..., x_r] with positive even variable degrees.
class GradedPolynomialRing {
public:
    GradedPolynomialRing(std::vector<std::string> names, std::vector<int> degrees)
        : names_(std::move(names)), degrees_(std::move(degrees)) {
        if (names_.size() != degrees_.size()) {
            throw InvalidInput("ring: number of names and degrees differ");
        }
        if (names_.size() > kMaxVars) {
            throw InvalidInput("ring: at most " + std::to_string(kMaxVars) + " variables supported");
        }
        for (int d : degrees_) {
            if (d <= 0 || d % 2 != 0) {
                throw InvalidInput("ring: variable degrees must be positive and even, got " +
                                   std::to_string(d));
            }
        }
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw InvalidInput("ring: empty variable name");
            for (std::size_t j = 0; j < i; ++j) {
                if (names_[i] == names_[j]) {
                    throw InvalidInput("ring: duplicate variable name '" + names_[i] + "'");
                }
            }
        }
    }

    std::size_t num_vars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& degrees() const { return degrees_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    Monomial one() const { return Monomial{}; }

    Monomial monomial(const std::vector<int>& exps) const {
        if (exps.size() != num_vars()) {
            throw InvalidInput("monomial: expected " + std::to_string(num_vars()) + " exponents");
        }
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0) throw InvalidInput("monomial: negative exponent");
            m.exp[i] = exps[i];
            m.degree += exps[i] * degrees_[i];
        }
        return m;
    }

    Monomial variable(std::size_t i) const {
        Monomial m;
        m.exp[i] = 1;
        m.degree = degrees_[i];
        return m;
    }

    Monomial lcm(const Monomial& a, const Monomial& b) const {
        Monomial m;
        for (std::size_t i = 0; i < num_vars(); ++i) {
            m.exp[i] = std::max(a.exp[i], b.exp[i]);
            m.degree += m.exp[i] * degrees_[i];
        }
        return m;
    }

    Monomial gcd(const Monomial& a, const Monomial& b) const {
        Monomial m;
        for (std::size_t i = 0; i < num_vars(); ++i) {
            m.exp[i] = std::min(a.exp[i], b.exp[i]);
            m.degree += m.exp[i] * degrees_[i];
        }
        return m;
    }

    friend bool operator==(const GradedPolynomialRing& a, const GradedPolynomialRing& b) {
        return a.names_ == b.names_ && a.degrees_ == b.degrees_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
};

using RingPtr = std::shared_ptr<const GradedPolynomialRing>;

inline RingPtr make_ring(std::vector<std::string> names, std::vector<int> degrees) {
    return std::make_shared<const GradedPolynomialRing>(std::move(names), std::move(degrees));
}

/// Ring with all variables of degree 2.
inline RingPtr make_ring(std::vector<std::string> names) {
    std::vector<int> degrees(names.size(), 2);
    return make_ring(std::move(names), std::move(degrees));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what) {
    if (!same_ring(a, b)) throw RingMismatch(std::string(what) + ": operands live in different rings");
}

} // namespace eqsyz
