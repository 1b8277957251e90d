#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../gradmod/change_of_rings.hpp"
#include "../polyring/linalg.hpp"
#include "../polyring/parse.hpp"

namespace eqsyz {

inline constexpr std::size_t kDefaultClosureBound = 10080;

namespace detail {

struct MatrixLess {
    bool operator()(const QMatrix& a, const QMatrix& b) const {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                int c = cmp(a(i, j), b(i, j));
                if (c != 0) return c < 0;
            }
        }
        return false;
    }
};

} // namespace detail

/// All products of the generators, identity first, in breadth-first order.
inline std::vector<QMatrix> group_closure(const std::vector<QMatrix>& generators, std::size_t rank,
                                          std::size_t bound = kDefaultClosureBound) {
    for (const auto& g : generators) {
        if (g.rows() != rank || g.cols() != rank) throw InvalidInput("group generator has the wrong shape");
        if (g.determinant() == 0) throw InvalidInput("group generator is not invertible");
    }
    std::vector<QMatrix> elements{QMatrix::identity(rank)};
    std::map<QMatrix, std::size_t, detail::MatrixLess> seen{{elements[0], 0}};
    for (std::size_t k = 0; k < elements.size(); ++k) {
        for (const auto& g : generators) {
            QMatrix h = g * elements[k];
            if (seen.count(h)) continue;
            if (elements.size() >= bound) {
                throw PreconditionFailed("group closure exceeded the bound of " + std::to_string(bound) + " elements");
            }
            seen.emplace(h, elements.size());
            elements.push_back(std::move(h));
        }
    }
    return elements;
}

/// w . f: substitutes t_i -> sum_j w(j, i) t_j. This is a left action.
inline Polynomial act(const QMatrix& w, const Polynomial& f) {
    const RingPtr& R = f.ring();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < R->num_vars(); ++i) {
        Polynomial img(R);
        for (std::size_t j = 0; j < R->num_vars(); ++j) {
            if (w(j, i) != 0) img += Polynomial::variable(R, j) * w(j, i);
        }
        images.push_back(std::move(img));
    }
    return f.substitute(images, R);
}

inline Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
    std::vector<PolyTerm> ts;
    for (const auto& t : f.terms()) {
        if (t.mono.exp[var] == 0) continue;
        std::vector<int> e(t.mono.exp.begin(), t.mono.exp.begin() + static_cast<std::ptrdiff_t>(f.ring()->num_vars()));
        Rational c = t.coeff * e[var];
        --e[var];
        ts.push_back({f.ring()->monomial(e), c});
    }
    return Polynomial::from_terms(f.ring(), std::move(ts));
}

/// A finite reflection group acting on the degree-2 generators of R_T, with
/// candidate fundamental invariants defining R_G.
class ReflectionGroupDatum {
public:
    ReflectionGroupDatum(RingPtr ring_T, std::vector<QMatrix> generators, std::vector<Polynomial> invariants,
                         std::size_t bound = kDefaultClosureBound)
        : ring_T_(std::move(ring_T)), generators_(std::move(generators)), invariants_(std::move(invariants)) {
        std::size_t r = ring_T_->num_vars();
        for (int d : ring_T_->degrees()) {
            if (d != 2) throw InvalidInput("reflection group: the polynomial ring must be generated in degree 2");
        }
        elements_ = group_closure(generators_, r, bound);
        std::vector<std::string> names;
        std::vector<int> degs;
        for (std::size_t i = 0; i < invariants_.size(); ++i) {
            require_same_ring(invariants_[i].ring(), ring_T_, "fundamental invariant");
            auto d = invariants_[i].degree();
            if (!d || *d <= 0) throw InvalidInput("fundamental invariants must be homogeneous of positive degree");
            if (*d % 2 != 0) throw InvalidInput("fundamental invariant of odd degree " + std::to_string(*d));
            names.push_back(invariants_.size() == 1 ? std::string("c") : "c" + std::to_string(i + 1));
            degs.push_back(*d);
        }
        if (invariants_.size() != r) {
            throw InvalidInput("expected " + std::to_string(r) + " fundamental invariants, got " +
                               std::to_string(invariants_.size()));
        }
        ring_G_ = make_ring(names, degs);
        embedding_ = RingMap(ring_G_, ring_T_, invariants_);
    }

    const RingPtr& ring_T() const { return ring_T_; }
    const RingPtr& ring_G() const { return ring_G_; }
    const RingMap& embedding() const { return embedding_; }
    std::size_t rank() const { return ring_T_->num_vars(); }
    std::size_t order() const { return elements_.size(); }
    const std::vector<QMatrix>& generators() const { return generators_; }
    const std::vector<QMatrix>& elements() const { return elements_; }
    const std::vector<Polynomial>& invariants() const { return invariants_; }

    /// Degrees 2d_i of the fundamental invariants.
    std::vector<int> invariant_degrees() const { return ring_G_->degrees(); }

private:
    RingPtr ring_T_;
    RingPtr ring_G_;
    RingMap embedding_;
    std::vector<QMatrix> generators_;
    std::vector<QMatrix> elements_;
    std::vector<Polynomial> invariants_;
};

/// (1/|W|) sum_w w . f
inline Polynomial reynolds(const Polynomial& f, const ReflectionGroupDatum& W) {
    require_same_ring(f.ring(), W.ring_T(), "reynolds");
    Polynomial sum(f.ring());
    for (const auto& w : W.elements()) sum += act(w, f);
    sum *= Rational(1) / Rational(static_cast<long>(W.order()));
    return sum;
}

/// Power series coefficients (in s) of 1/p(s) up to s^n, p(0) = 1.
inline std::vector<Rational> invert_series(const std::vector<Rational>& p, int n) {
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
    out[0] = 1 / p[0];
    for (int k = 1; k <= n; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k && static_cast<std::size_t>(j) < p.size(); ++j) {
            acc += p[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
        }
        out[static_cast<std::size_t>(k)] = -acc / p[0];
    }
    return out;
}

/// Molien series (1/|W|) sum_w 1/det(1 - q^2 w), coefficients of q^0 .. q^{2n}.
inline std::vector<Rational> molien_series(const ReflectionGroupDatum& W, int n) {
    std::vector<Rational> acc(static_cast<std::size_t>(n) + 1);
    for (const auto& w : W.elements()) {
        auto s = invert_series(w.reversed_characteristic_polynomial(), n);
        for (int k = 0; k <= n; ++k) acc[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k)];
    }
    std::vector<Rational> out(2 * static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        out[2 * static_cast<std::size_t>(k)] = acc[static_cast<std::size_t>(k)] / Rational(static_cast<long>(W.order()));
    }
    return out;
}

struct InvariantCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct InvariantsReport {
    std::vector<InvariantCheck> checks;
    std::size_t order = 0;
    std::vector<int> degrees;

    bool accepted() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

/// Checks W-invariance, prod d_i = |W|, algebraic independence (Jacobian) and the
/// Molien identity through `num_coefficients` coefficients in q^2.
inline InvariantsReport verify_invariants(const ReflectionGroupDatum& W, int num_coefficients = 20) {
    InvariantsReport rep;
    rep.order = W.order();
    rep.degrees = W.invariant_degrees();
    for (std::size_t i = 0; i < W.invariants().size(); ++i) {
        const auto& f = W.invariants()[i];
        InvariantCheck c{"invariance of " + f.to_string(), true, ""};
        for (const auto& g : W.generators()) {
            Polynomial gf = act(g, f);
            if (!(gf == f)) {
                c.pass = false;
                c.detail = "w . f = " + gf.to_string();
                break;
            }
        }
        rep.checks.push_back(c);
    }
    long prod = 1;
    for (int d : rep.degrees) prod *= d / 2;
    rep.checks.push_back({"product of degrees equals group order", prod == static_cast<long>(W.order()),
                          "prod d_i = " + std::to_string(prod) + ", |W| = " + std::to_string(W.order())});

    std::size_t r = W.rank();
    std::vector<std::vector<Polynomial>> jac(r, std::vector<Polynomial>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) jac[i][j] = partial_derivative(W.invariants()[i], j);
    }
    Polynomial jdet = polynomial_determinant(jac, W.ring_T());
    rep.checks.push_back({"algebraic independence (Jacobian)", !jdet.is_zero(), "det = " + jdet.to_string()});

    auto molien = molien_series(W, num_coefficients);
    HilbertSeries rg = hilbert_series(W.ring_G());
    auto expect = rg.coefficients(0, 2 * num_coefficients);
    bool ok = true;
    std::string where;
    for (std::size_t k = 0; k < molien.size(); ++k) {
        if (molien[k] != Rational(static_cast<long>(expect[k]))) {
            ok = false;
            where = "q^" + std::to_string(k) + ": Molien " + molien[k].get_str() + " vs " + std::to_string(expect[k]);
            break;
        }
    }
    rep.checks.push_back({"Molien identity", ok, ok ? std::to_string(num_coefficients) + " coefficients" : where});
    return rep;
}

/// Standard monomials of R_T modulo the fundamental invariants.
struct CoinvariantBasis {
    std::vector<Polynomial> monomials;
    std::vector<int> degrees;

    /// Degree generating function sum q^{deg b}.
    QPolynomial poincare() const {
        QPolynomial p;
        for (int d : degrees) qpoly_add(p, {{d, 1}});
        return p;
    }
};

inline CoinvariantBasis coinvariant_basis(const ReflectionGroupDatum& W) {
    const RingPtr& R = W.ring_T();
    auto gb = groebner_basis(R, W.invariants());
    std::vector<Monomial> leads;
    for (const auto& g : gb) leads.push_back(g.leading().mono);
    auto standard = [&](const Monomial& m) {
        for (const auto& l : leads) {
            if (l.divides(m)) return false;
        }
        return true;
    };
    std::vector<Monomial> found;
    std::deque<Monomial> queue{Monomial{}};
    std::map<std::vector<int>, bool> seen;
    while (!queue.empty()) {
        Monomial m = queue.front();
        queue.pop_front();
        std::vector<int> key(m.exp.begin(), m.exp.end());
        if (seen.count(key)) continue;
        seen[key] = true;
        if (!standard(m)) continue;
        found.push_back(m);
        if (found.size() > W.order()) break;
        for (std::size_t v = 0; v < R->num_vars(); ++v) queue.push_back(m * R->variable(v));
    }
    if (found.size() != W.order()) {
        throw PreconditionFailed("coinvariant algebra has dimension " +
                                 (found.size() > W.order() ? "greater than " : std::to_string(found.size()) + ", not ") +
                                 std::to_string(W.order()));
    }
    std::sort(found.begin(), found.end(), [](const Monomial& a, const Monomial& b) { return compare_monomials(a, b) < 0; });
    CoinvariantBasis B;
    for (const auto& m : found) {
        B.monomials.push_back(Polynomial::term(R, m, Rational(1)));
        B.degrees.push_back(m.degree);
    }
    return B;
}

/// R_T as a free R_G-module on the coinvariant basis (Hilbert identity checked).
inline FreeExtension free_extension(const ReflectionGroupDatum& W) {
    return FreeExtension(W.embedding(), coinvariant_basis(W).monomials);
}

inline FPModule restrict_scalars(const FPModule& M, const ReflectionGroupDatum& W) {
    return restrict_scalars(M, free_extension(W));
}

namespace builtin {

inline std::vector<std::string> default_names(std::size_t r) {
    if (r == 1) return {"t"};
    if (r == 2) return {"x", "y"};
    if (r == 3) return {"x", "y", "z"};
    std::vector<std::string> n;
    for (std::size_t i = 0; i < r; ++i) n.push_back("t" + std::to_string(i + 1));
    return n;
}

inline RingPtr ring_for(std::size_t r, std::vector<std::string> names) {
    if (names.empty()) names = default_names(r);
    if (names.size() != r) throw InvalidInput("wrong number of variable names");
    return make_ring(names);
}

/// Trivial group on r variables, invariants t_i.
inline ReflectionGroupDatum trivial(std::size_t r, std::vector<std::string> names = {}) {
    RingPtr R = ring_for(r, std::move(names));
    std::vector<Polynomial> inv;
    for (std::size_t i = 0; i < r; ++i) inv.push_back(Polynomial::variable(R, i));
    return ReflectionGroupDatum(R, {}, inv);
}

/// Z/2 acting by t -> -t, invariant t^2.
inline ReflectionGroupDatum z2(std::vector<std::string> names = {}) {
    RingPtr R = ring_for(1, std::move(names));
    return ReflectionGroupDatum(R, {QMatrix::from_rows({{Rational(-1)}})}, {Polynomial::variable(R, 0).pow(2)});
}

/// Symmetric group on n letters acting on the sum-zero coordinates x_1..x_{n-1}
/// (x_n = -sum), invariants e_2, ..., e_n.
inline ReflectionGroupDatum type_a(std::size_t n, std::vector<std::string> names = {}) {
    if (n < 2 || n > 4) throw InvalidInput("type A built-in supports 2 <= n <= 4 letters");
    std::size_t r = n - 1;
    RingPtr R = ring_for(r, std::move(names));
    auto coordinate = [&](std::size_t k) {
        std::vector<Rational> c(r, Rational(0));
        if (k < r) c[k] = 1;
        else std::fill(c.begin(), c.end(), Rational(-1));
        return c;
    };
    std::vector<QMatrix> gens;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        QMatrix g(r, r);
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t img = i == s ? s + 1 : (i == s + 1 ? s : i);
            auto c = coordinate(img);
            for (std::size_t j = 0; j < r; ++j) g(j, i) = c[j];
        }
        gens.push_back(g);
    }
    std::vector<Polynomial> xs;
    Polynomial last(R);
    for (std::size_t i = 0; i < r; ++i) {
        xs.push_back(Polynomial::variable(R, i));
        last -= xs.back();
    }
    xs.push_back(last);
    // elementary symmetric polynomials by the recurrence e_k(x_1..x_m)
    std::vector<Polynomial> e(n + 1, Polynomial(R));
    e[0] = Polynomial::constant(R, Rational(1));
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = m + 1; k >= 1; --k) e[k] += e[k - 1] * xs[m];
    }
    std::vector<Polynomial> inv(e.begin() + 2, e.end());
    return ReflectionGroupDatum(R, gens, inv);
}

/// Signed permutations of n coordinates, invariants elementary symmetric in the squares.
inline ReflectionGroupDatum type_b(std::size_t n, std::vector<std::string> names = {}) {
    if (n < 1 || n > 3) throw InvalidInput("type B built-in supports rank 1 to 3");
    RingPtr R = ring_for(n, std::move(names));
    std::vector<QMatrix> gens;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        QMatrix g = QMatrix::identity(n);
        g(s, s) = 0;
        g(s + 1, s + 1) = 0;
        g(s, s + 1) = 1;
        g(s + 1, s) = 1;
        gens.push_back(g);
    }
    QMatrix flip = QMatrix::identity(n);
    flip(0, 0) = -1;
    gens.push_back(flip);
    std::vector<Polynomial> e(n + 1, Polynomial(R));
    e[0] = Polynomial::constant(R, Rational(1));
    for (std::size_t m = 0; m < n; ++m) {
        Polynomial sq = Polynomial::variable(R, m).pow(2);
        for (std::size_t k = m + 1; k >= 1; --k) e[k] += e[k - 1] * sq;
    }
    return ReflectionGroupDatum(R, gens, std::vector<Polynomial>(e.begin() + 1, e.end()));
}

/// Dihedral group of order 12 as the symmetric group on 3 letters times {+-1};
/// invariants e_2 and e_3^2.
inline ReflectionGroupDatum type_g2(std::vector<std::string> names = {}) {
    auto a2 = type_a(3, std::move(names));
    auto gens = a2.generators();
    gens.push_back(QMatrix::identity(2) * Rational(-1));
    return ReflectionGroupDatum(a2.ring_T(), gens, {a2.invariants()[0], a2.invariants()[1].pow(2)});
}

/// W1 x W2 acting block-diagonally on the concatenated variables.
inline ReflectionGroupDatum product(const ReflectionGroupDatum& a, const ReflectionGroupDatum& b,
                                    std::vector<std::string> names = {}) {
    std::size_t ra = a.rank(), rb = b.rank();
    if (names.empty()) {
        names = a.ring_T()->names();
        for (const auto& n : b.ring_T()->names()) {
            std::string m = n;
            while (std::find(names.begin(), names.end(), m) != names.end()) m += "_";
            names.push_back(m);
        }
    }
    RingPtr R = make_ring(names);
    std::vector<Polynomial> left, right;
    for (std::size_t i = 0; i < ra; ++i) left.push_back(Polynomial::variable(R, i));
    for (std::size_t i = 0; i < rb; ++i) right.push_back(Polynomial::variable(R, ra + i));
    std::vector<QMatrix> gens;
    for (const auto& g : a.generators()) {
        QMatrix h = QMatrix::identity(ra + rb);
        for (std::size_t i = 0; i < ra; ++i) {
            for (std::size_t j = 0; j < ra; ++j) h(i, j) = g(i, j);
        }
        gens.push_back(h);
    }
    for (const auto& g : b.generators()) {
        QMatrix h = QMatrix::identity(ra + rb);
        for (std::size_t i = 0; i < rb; ++i) {
            for (std::size_t j = 0; j < rb; ++j) h(ra + i, ra + j) = g(i, j);
        }
        gens.push_back(h);
    }
    std::vector<Polynomial> inv;
    for (const auto& f : a.invariants()) inv.push_back(f.substitute(left, R));
    for (const auto& f : b.invariants()) inv.push_back(f.substitute(right, R));
    return ReflectionGroupDatum(R, gens, inv);
}

/// Looks up a built-in by name: trivial<r>, z2, a1..a3, b1..b3, b2, g2.
inline ReflectionGroupDatum by_name(const std::string& name, std::vector<std::string> names = {}) {
    if (name == "z2") return z2(std::move(names));
    if (name == "g2") return type_g2(std::move(names));
    if (name.size() == 2 && name[0] == 'a' && name[1] >= '1' && name[1] <= '3') {
        return type_a(static_cast<std::size_t>(name[1] - '0') + 1, std::move(names));
    }
    if (name.size() == 2 && name[0] == 'b' && name[1] >= '1' && name[1] <= '3') {
        return type_b(static_cast<std::size_t>(name[1] - '0'), std::move(names));
    }
    if (name.rfind("trivial", 0) == 0 && name.size() > 7) {
        return trivial(static_cast<std::size_t>(std::stoul(name.substr(7))), std::move(names));
    }
    throw InvalidInput("unknown built-in group '" + name + "'");
}

} // namespace builtin

} // namespace eqsyz
