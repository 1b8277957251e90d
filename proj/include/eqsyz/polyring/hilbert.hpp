#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "groebner.hpp"

namespace eqsyz {

/// Laurent polynomial in q with integer coefficients.
using QPolynomial = std::map<int, std::int64_t>;

inline void qpoly_add(QPolynomial& a, const QPolynomial& b, std::int64_t scale = 1) {
    for (const auto& [e, c] : b) {
        auto& slot = a[e];
        slot += scale * c;
        if (slot == 0) a.erase(e);
    }
}

inline QPolynomial qpoly_mul(const QPolynomial& a, const QPolynomial& b) {
    QPolynomial out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            auto& slot = out[ea + eb];
            slot += ca * cb;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

inline QPolynomial qpoly_shift(const QPolynomial& a, int k) {
    QPolynomial out;
    for (const auto& [e, c] : a) out[e + k] = c;
    return out;
}

/// Hilbert series numerator(q) / prod_i (1 - q^{d_i}).
struct HilbertSeries {
    QPolynomial numerator;
    std::vector<int> denominator;

    bool is_zero() const { return numerator.empty(); }

    /// Coefficients of q^lo ... q^hi of the power-series expansion.
    std::vector<std::int64_t> coefficients(int lo, int hi) const {
        if (hi < lo) return {};
        int start = numerator.empty() ? lo : std::min(lo, numerator.begin()->first);
        int n = hi - start + 1;
        // 1 / prod (1 - q^d) as a power series in degrees 0 .. n-1
        std::vector<std::int64_t> inv(static_cast<std::size_t>(n), 0);
        if (n > 0) inv[0] = 1;
        for (int d : denominator) {
            for (int k = d; k < n; ++k) inv[static_cast<std::size_t>(k)] += inv[static_cast<std::size_t>(k - d)];
        }
        std::vector<std::int64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
        for (const auto& [e, c] : numerator) {
            for (int k = lo; k <= hi; ++k) {
                int off = k - e;
                if (off >= 0 && off < n) out[static_cast<std::size_t>(k - lo)] += c * inv[static_cast<std::size_t>(off)];
            }
        }
        return out;
    }

    /// Order of the pole at q = 1 (Krull dimension); nullopt for the zero series.
    std::optional<int> pole_order() const {
        if (numerator.empty()) return std::nullopt;
        int lo = numerator.begin()->first;
        int hi = numerator.rbegin()->first;
        std::vector<std::int64_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
        for (const auto& [e, v] : numerator) c[static_cast<std::size_t>(e - lo)] = v;
        int mult = 0;
        // divide by (q - 1) while q = 1 is a root
        while (true) {
            std::int64_t s = 0;
            for (auto v : c) s += v;
            if (s != 0 || c.size() <= 1) break;
            std::vector<std::int64_t> quo(c.size() - 1, 0);
            std::int64_t carry = 0;
            for (std::size_t k = c.size(); k-- > 1;) {
                carry += c[k];
                quo[k - 1] = carry;
            }
            c = std::move(quo);
            ++mult;
        }
        return static_cast<int>(denominator.size()) - mult;
    }

    /// Series of the module with every degree raised by `k`.
    HilbertSeries shifted(int k) const { return {qpoly_shift(numerator, k), denominator}; }

    HilbertSeries operator+(const HilbertSeries& o) const {
        HilbertSeries a = *this, b = o;
        a.bring_to_common(b);
        qpoly_add(a.numerator, b.numerator);
        return a;
    }

    HilbertSeries operator*(const QPolynomial& p) const { return {qpoly_mul(numerator, p), denominator}; }

    /// Exact equality as rational functions.
    friend bool operator==(const HilbertSeries& x, const HilbertSeries& y) {
        HilbertSeries a = x, b = y;
        a.bring_to_common(b);
        return a.numerator == b.numerator;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(" << qpoly_to_string(numerator) << ")";
        if (!denominator.empty()) {
            os << " / (";
            for (std::size_t i = 0; i < denominator.size(); ++i) {
                if (i) os << "*";
                os << "(1-q^" << denominator[i] << ")";
            }
            os << ")";
        }
        return os.str();
    }

    static std::string qpoly_to_string(const QPolynomial& p) {
        if (p.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : p) {
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            std::int64_t a = c < 0 ? -c : c;
            if (e == 0) {
                os << a;
            } else {
                if (a != 1) os << a << "*";
                os << "q^" << e;
            }
        }
        return os.str();
    }

private:
    /// Multiplies both fractions so they share one denominator multiset.
    void bring_to_common(HilbertSeries& o) {
        std::vector<int> a = denominator, b = o.denominator;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<int> only_a, only_b;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
        for (int d : only_b) {
            numerator = qpoly_mul(numerator, {{0, 1}, {d, -1}});
            denominator.push_back(d);
        }
        for (int d : only_a) {
            o.numerator = qpoly_mul(o.numerator, {{0, 1}, {d, -1}});
            o.denominator.push_back(d);
        }
        std::sort(denominator.begin(), denominator.end());
        std::sort(o.denominator.begin(), o.denominator.end());
    }
};

namespace detail {

inline std::vector<Monomial> minimal_monomials(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        return compare_monomials(a, b) < 0;
    });
    std::vector<Monomial> out;
    for (const auto& g : gens) {
        bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& m) { return m.divides(g); });
        if (!redundant) out.push_back(g);
    }
    return out;
}

/// Numerator N with HS(R/I) = N / prod(1 - q^{d_i}) for a monomial ideal I.
inline QPolynomial monomial_ideal_numerator(const GradedPolynomialRing& ring, std::vector<Monomial> gens) {
    gens = minimal_monomials(std::move(gens));
    if (gens.empty()) return {{0, 1}};
    for (const auto& g : gens) {
        if (g.is_one()) return {};
    }
    // pairwise coprime: product of (1 - q^deg)
    std::size_t pivot_var = kMaxVars;
    std::size_t best_count = 1;
    for (std::size_t v = 0; v < ring.num_vars(); ++v) {
        std::size_t count = 0;
        for (const auto& g : gens) count += g.exp[v] > 0 ? 1 : 0;
        if (count > best_count) {
            best_count = count;
            pivot_var = v;
        }
    }
    if (pivot_var == kMaxVars) {
        QPolynomial n{{0, 1}};
        for (const auto& g : gens) n = qpoly_mul(n, {{0, 1}, {g.degree, -1}});
        return n;
    }
    Monomial x = ring.variable(pivot_var);
    // N(I) = N(I + (x)) + q^{deg x} N(I : x)
    std::vector<Monomial> plus{x};
    std::vector<Monomial> colon;
    for (const auto& g : gens) {
        if (g.exp[pivot_var] == 0) plus.push_back(g);
        colon.push_back(g.exp[pivot_var] > 0 ? g / x : g);
    }
    QPolynomial a = monomial_ideal_numerator(ring, std::move(plus));
    QPolynomial b = qpoly_shift(monomial_ideal_numerator(ring, std::move(colon)), x.degree);
    qpoly_add(a, b);
    return a;
}

} // namespace detail

/// Hilbert series of F / (submodule with Groebner basis `gb`), read off the leading terms.
inline HilbertSeries hilbert_series_from_gb(const GradedFreeModule& F, const std::vector<ModuleElement>& gb) {
    HilbertSeries hs;
    hs.denominator = F.ring->degrees();
    std::vector<std::vector<Monomial>> leads(F.rank());
    for (const auto& g : gb) leads[g.leading().comp].push_back(g.leading().mono);
    for (std::size_t c = 0; c < F.rank(); ++c) {
        QPolynomial n = detail::monomial_ideal_numerator(*F.ring, leads[c]);
        qpoly_add(hs.numerator, qpoly_shift(n, F.degrees[c]));
    }
    return hs;
}

/// Hilbert series of F / <gens>.
inline HilbertSeries hilbert_series(const GradedFreeModule& F, const std::vector<ModuleElement>& gens) {
    return hilbert_series_from_gb(F, groebner_basis(F, gens));
}

/// Hilbert series of the ring itself, 1 / prod(1 - q^{d_i}).
inline HilbertSeries hilbert_series(const RingPtr& ring) {
    return HilbertSeries{{{0, 1}}, ring->degrees()};
}

} // namespace eqsyz
