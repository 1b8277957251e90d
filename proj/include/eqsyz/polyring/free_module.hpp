#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace eqsyz {

/// Graded free module R(-d_1) + ... + R(-d_n): generator i sits in degree d_i.
struct GradedFreeModule {
    RingPtr ring;
    std::vector<int> degrees;

    std::size_t rank() const { return degrees.size(); }

    friend bool operator==(const GradedFreeModule& a, const GradedFreeModule& b) {
        return same_ring(a.ring, b.ring) && a.degrees == b.degrees;
    }

    /// Direct sum; generators of `other` come after ours.
    GradedFreeModule operator+(const GradedFreeModule& other) const {
        require_same_ring(ring, other.ring, "direct sum");
        GradedFreeModule s{ring, degrees};
        s.degrees.insert(s.degrees.end(), other.degrees.begin(), other.degrees.end());
        return s;
    }

    /// Hom(F, R): generator degrees negated.
    GradedFreeModule dual() const {
        GradedFreeModule d{ring, degrees};
        for (int& x : d.degrees) x = -x;
        return d;
    }

    /// Every generator degree moved up by `k`.
    GradedFreeModule shifted(int k) const {
        GradedFreeModule d{ring, degrees};
        for (int& x : d.degrees) x += k;
        return d;
    }
};

struct VecTerm {
    std::size_t comp;
    Monomial mono;
    Rational coeff;
};

/// Position-over-term comparison: earlier components are greater.
inline int compare_vec_terms(std::size_t ca, const Monomial& ma, std::size_t cb, const Monomial& mb) {
    if (ca != cb) return ca < cb ? 1 : -1;
    return compare_monomials(ma, mb);
}

/// Element of a free module, stored as sorted sparse terms (largest first).
class ModuleElement {
public:
    ModuleElement() = default;

    static ModuleElement unit(std::size_t comp, const Rational& c = Rational(1)) {
        ModuleElement v;
        if (c != 0) v.terms_.push_back({comp, Monomial{}, c});
        return v;
    }

    /// Trusted constructor: `terms` must already be sorted, merged and nonzero.
    static ModuleElement from_sorted_terms(std::vector<VecTerm> terms) {
        ModuleElement v;
        v.terms_ = std::move(terms);
        return v;
    }

    static ModuleElement from_polynomial(std::size_t comp, const Polynomial& p) {
        ModuleElement v;
        v.terms_.reserve(p.size());
        for (const auto& t : p.terms()) v.terms_.push_back({comp, t.mono, t.coeff});
        return v;
    }

    /// Builds from a dense column of polynomials (component i = entries[i]).
    static ModuleElement from_column(const std::vector<Polynomial>& entries) {
        ModuleElement v;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (const auto& t : entries[i].terms()) v.terms_.push_back({i, t.mono, t.coeff});
        }
        return v;
    }

    const std::vector<VecTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const VecTerm& leading() const { return terms_.front(); }

    /// Component `i` as a polynomial over `ring`.
    Polynomial component(std::size_t i, const RingPtr& ring) const {
        std::vector<PolyTerm> pts;
        for (const auto& t : terms_) {
            if (t.comp == i) pts.push_back({t.mono, t.coeff});
        }
        Polynomial p(ring);
        p = Polynomial::from_terms(ring, std::move(pts));
        return p;
    }

    std::vector<Polynomial> to_column(const RingPtr& ring, std::size_t rank) const {
        std::vector<Polynomial> col(rank, Polynomial(ring));
        std::vector<std::vector<PolyTerm>> parts(rank);
        for (const auto& t : terms_) {
            if (t.comp >= rank) throw InvalidInput("module element has a component beyond the rank");
            parts[t.comp].push_back({t.mono, t.coeff});
        }
        for (std::size_t i = 0; i < rank; ++i) col[i] = Polynomial::from_terms(ring, std::move(parts[i]));
        return col;
    }

    /// this += c * m * o
    ModuleElement& axpy(const Rational& c, const Monomial& m, const ModuleElement& o) {
        if (c == 0 || o.is_zero()) return *this;
        std::vector<VecTerm> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size()) {
                out.push_back(std::move(terms_[i++]));
                continue;
            }
            const VecTerm& b = o.terms_[j];
            Monomial mj = b.mono * m;
            int cmp = i == terms_.size() ? -1 : compare_vec_terms(terms_[i].comp, terms_[i].mono, b.comp, mj);
            if (cmp > 0) {
                out.push_back(std::move(terms_[i++]));
            } else if (cmp < 0) {
                out.push_back({b.comp, mj, c * b.coeff});
                ++j;
            } else {
                Rational s = terms_[i].coeff + c * b.coeff;
                if (s != 0) out.push_back({b.comp, mj, std::move(s)});
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    /// this += p * o  (polynomial scalar)
    ModuleElement& add_scaled(const Polynomial& p, const ModuleElement& o) {
        for (const auto& t : p.terms()) axpy(t.coeff, t.mono, o);
        return *this;
    }

    ModuleElement& operator+=(const ModuleElement& o) { return axpy(Rational(1), Monomial{}, o); }
    ModuleElement& operator-=(const ModuleElement& o) { return axpy(Rational(-1), Monomial{}, o); }
    friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
    friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }

    ModuleElement scaled(const Rational& c) const {
        ModuleElement v;
        if (c == 0) return v;
        v.terms_ = terms_;
        for (auto& t : v.terms_) t.coeff *= c;
        return v;
    }

    ModuleElement mul_term(const Monomial& m, const Rational& c) const {
        ModuleElement v;
        if (c == 0) return v;
        v.terms_.reserve(terms_.size());
        for (const auto& t : terms_) v.terms_.push_back({t.comp, t.mono * m, t.coeff * c});
        return v;
    }

    ModuleElement monic() const {
        if (is_zero()) return *this;
        return scaled(1 / leading().coeff);
    }

    /// Component indices moved by `offset` (embedding into a direct sum).
    ModuleElement shifted_components(std::size_t offset) const {
        ModuleElement v = *this;
        for (auto& t : v.terms_) t.comp += offset;
        return v;
    }

    /// Keeps components in [lo, hi), renumbered from 0. Order is preserved.
    ModuleElement slice(std::size_t lo, std::size_t hi) const {
        ModuleElement v;
        for (const auto& t : terms_) {
            if (t.comp >= lo && t.comp < hi) v.terms_.push_back({t.comp - lo, t.mono, t.coeff});
        }
        return v;
    }

    /// Homogeneous degree inside `F` (nullopt for zero); throws if inhomogeneous.
    std::optional<int> degree_in(const GradedFreeModule& F) const {
        if (terms_.empty()) return std::nullopt;
        int d = 0;
        bool first = true;
        for (const auto& t : terms_) {
            if (t.comp >= F.rank()) throw InvalidInput("module element has a component beyond the rank");
            int e = t.mono.degree + F.degrees[t.comp];
            if (first) {
                d = e;
                first = false;
            } else if (e != d) {
                throw NotHomogeneous("module element is not homogeneous");
            }
        }
        return d;
    }

    friend bool operator==(const ModuleElement& a, const ModuleElement& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            const auto& x = a.terms_[i];
            const auto& y = b.terms_[i];
            if (x.comp != y.comp || !(x.mono == y.mono) || x.coeff != y.coeff) return false;
        }
        return true;
    }

    std::string to_string(const RingPtr& ring, std::size_t rank) const {
        auto col = to_column(ring, rank);
        std::string s = "(";
        for (std::size_t i = 0; i < rank; ++i) {
            if (i) s += ", ";
            s += col[i].to_string();
        }
        return s + ")";
    }

private:
    std::vector<VecTerm> terms_;
};

} // namespace eqsyz
