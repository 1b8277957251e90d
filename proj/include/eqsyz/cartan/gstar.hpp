#pragma once

#include <map>
#include <string>
#include <vector>

#include "../gradmod/invariants.hpp"
#include "../polyring/linalg.hpp"

namespace eqsyz {

/// Finite-dimensional graded complex with contractions iota_1..iota_r (Lie
/// derivatives zero). Matrices act on coordinate columns: entry (i, j) is the
/// coefficient of basis vector i in op(basis vector j).
class GStarModule {
public:
    GStarModule() = default;

    GStarModule(std::vector<int> degrees, QMatrix d, std::vector<QMatrix> iota)
        : degrees_(std::move(degrees)), d_(std::move(d)), iota_(std::move(iota)) {
        std::size_t n = degrees_.size();
        auto check_shape = [&](const QMatrix& m, const std::string& what) {
            if (m.rows() != n || m.cols() != n) throw InvalidInput(what + " must be a " + std::to_string(n) + "x" +
                                                                   std::to_string(n) + " matrix");
        };
        check_shape(d_, "d");
        for (const auto& m : iota_) check_shape(m, "iota");
        check_degree(d_, +1, "d");
        for (std::size_t k = 0; k < iota_.size(); ++k) check_degree(iota_[k], -1, "iota_" + std::to_string(k + 1));
        std::string bad = first_violated_relation();
        if (!bad.empty()) throw PreconditionFailed("G-star relation violated: " + bad);
    }

    std::size_t dim() const { return degrees_.size(); }
    std::size_t rank() const { return iota_.size(); }
    const std::vector<int>& degrees() const { return degrees_; }
    const QMatrix& d() const { return d_; }
    const std::vector<QMatrix>& iota() const { return iota_; }

    /// Empty string if d^2 = 0, iota_k iota_l + iota_l iota_k = 0 and d iota_k + iota_k d = 0.
    std::string first_violated_relation() const {
        if (!(d_ * d_).is_zero()) return "d^2 != 0";
        for (std::size_t k = 0; k < iota_.size(); ++k) {
            for (std::size_t l = k; l < iota_.size(); ++l) {
                if (!(iota_[k] * iota_[l] + iota_[l] * iota_[k]).is_zero()) {
                    return "iota_" + std::to_string(k + 1) + " iota_" + std::to_string(l + 1) + " anticommutator != 0";
                }
            }
            if (!(d_ * iota_[k] + iota_[k] * d_).is_zero()) return "d iota_" + std::to_string(k + 1) + " + iota d != 0";
        }
        return "";
    }

    /// dim H^n(A, d) for each degree n that occurs.
    std::map<int, int> cohomology_dimensions() const {
        std::map<int, int> out;
        std::map<int, std::vector<std::size_t>> by_degree;
        for (std::size_t a = 0; a < dim(); ++a) by_degree[degrees_[a]].push_back(a);
        auto rank_between = [&](int from) -> int {
            auto src = by_degree.find(from);
            auto tgt = by_degree.find(from + 1);
            if (src == by_degree.end() || tgt == by_degree.end()) return 0;
            QMatrix m(tgt->second.size(), src->second.size());
            for (std::size_t i = 0; i < tgt->second.size(); ++i) {
                for (std::size_t j = 0; j < src->second.size(); ++j) m(i, j) = d_(tgt->second[i], src->second[j]);
            }
            return static_cast<int>(m.rank());
        };
        for (const auto& [deg, idx] : by_degree) {
            int h = static_cast<int>(idx.size()) - rank_between(deg) - rank_between(deg - 1);
            if (h != 0) out[deg] = h;
        }
        return out;
    }

    int total_cohomology_dimension() const {
        int s = 0;
        for (const auto& [deg, h] : cohomology_dimensions()) s += h;
        return s;
    }

    friend bool operator==(const GStarModule& a, const GStarModule& b) {
        if (a.degrees_ != b.degrees_ || !(a.d_ == b.d_) || a.iota_.size() != b.iota_.size()) return false;
        for (std::size_t k = 0; k < a.iota_.size(); ++k) {
            if (!(a.iota_[k] == b.iota_[k])) return false;
        }
        return true;
    }

private:
    void check_degree(const QMatrix& m, int step, const std::string& what) const {
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < dim(); ++j) {
                if (m(i, j) != 0 && degrees_[i] != degrees_[j] + step) {
                    throw InvalidInput(what + " does not have degree " + std::to_string(step) + " (entry " +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
        }
    }

    std::vector<int> degrees_;
    QMatrix d_;
    std::vector<QMatrix> iota_;
};

/// Dual module: basis a^v in degree -|a|, each operator O with
/// <O phi, a> = -(-1)^{|phi|} <phi, O a>.
inline GStarModule dualize_gstar(const GStarModule& A) {
    std::size_t n = A.dim();
    std::vector<int> degs;
    for (int d : A.degrees()) degs.push_back(-d);
    auto dual_op = [&](const QMatrix& O) {
        QMatrix D(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (O(b, a) == 0) continue;
                int sign = A.degrees()[b] % 2 == 0 ? -1 : 1;
                D(a, b) = O(b, a) * Rational(sign);
            }
        }
        return D;
    };
    std::vector<QMatrix> iota;
    for (const auto& m : A.iota()) iota.push_back(dual_op(m));
    return GStarModule(degs, dual_op(A.d()), iota);
}

/// Rescales basis vector a by (-1)^{|a|}; identifies the double dual with the original.
inline GStarModule koszul_sign_twist(const GStarModule& A) {
    std::size_t n = A.dim();
    auto twist = [&](const QMatrix& O) {
        QMatrix T(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                bool odd = ((A.degrees()[i] + A.degrees()[j]) % 2) != 0;
                T(i, j) = odd ? Rational(-O(i, j)) : O(i, j);
            }
        }
        return T;
    };
    std::vector<QMatrix> iota;
    for (const auto& m : A.iota()) iota.push_back(twist(m));
    return GStarModule(A.degrees(), twist(A.d()), iota);
}

/// R_T (x) A with D(f (x) a) = f (x) da - sum_k f x_k (x) iota_k a.
struct CartanComplex {
    GradedFreeModule module;  ///< generator a in degree |a|
    ModuleMap D;              ///< source generator a sits in degree |a| + 1
    bool d_squared_zero = false;
};

inline CartanComplex build_cartan(const GStarModule& A, const RingPtr& R) {
    if (A.rank() != R->num_vars()) {
        throw InvalidInput("the ring has " + std::to_string(R->num_vars()) + " variables but the module has " +
                           std::to_string(A.rank()) + " contractions");
    }
    for (int d : R->degrees()) {
        if (d != 2) throw InvalidInput("the Cartan model needs a ring generated in degree 2");
    }
    std::size_t n = A.dim();
    GradedFreeModule F{R, A.degrees()};
    std::vector<ModuleElement> cols;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Polynomial> col(n, Polynomial(R));
        for (std::size_t b = 0; b < n; ++b) {
            if (A.d()(b, a) != 0) col[b] += Polynomial::constant(R, A.d()(b, a));
            for (std::size_t k = 0; k < A.rank(); ++k) {
                if (A.iota()[k](b, a) != 0) col[b] -= Polynomial::variable(R, k) * A.iota()[k](b, a);
            }
        }
        cols.push_back(ModuleElement::from_column(col));
    }
    CartanComplex C{F, ModuleMap(F.shifted(1), F, cols), false};
    C.d_squared_zero = true;
    for (const auto& c : C.D.columns()) {
        if (!C.D.apply(c).is_zero()) C.d_squared_zero = false;
    }
    if (!C.d_squared_zero) throw PreconditionFailed("Cartan differential does not square to zero");
    return C;
}

/// ker D / im D as a graded module.
inline FPModule cartan_cohomology(const CartanComplex& C) {
    ModuleMap K = syzygies(C.D).shifted(-1);
    return subquotient(K, C.D).module;
}

inline FPModule equivariant_cohomology(const GStarModule& A, const RingPtr& R) {
    return cartan_cohomology(build_cartan(A, R));
}

/// Cartan cohomology of the dual module (homological degrees are negative).
inline FPModule equivariant_homology(const GStarModule& A, const RingPtr& R) {
    return cartan_cohomology(build_cartan(dualize_gstar(A), R));
}

struct UCTReport {
    bool applicable = false;
    std::string reason;
    CMReport cm;
    int ext_index = 0;  ///< r - d
    BettiTable homology_betti;
    BettiTable ext_betti;  ///< degrees already raised by r - d
    bool betti_match = false;
    bool hilbert_match = false;
    bool pass() const { return applicable && betti_match && hilbert_match; }
};

/// Compares equivariant homology with Ext^{r-d}(H_T(A), R) raised by r - d in degree,
/// when H_T(A) is Cohen-Macaulay of dimension d (plain dual when free).
inline UCTReport uct_collapse_check(const GStarModule& A, const RingPtr& R) {
    UCTReport rep;
    FPModule H = equivariant_cohomology(A, R);
    rep.cm = is_cohen_macaulay(H);
    if (rep.cm.status == CMStatus::zero) {
        rep.reason = "equivariant cohomology is zero";
        return rep;
    }
    if (!rep.cm.is_cm()) {
        rep.reason = "equivariant cohomology is not Cohen-Macaulay";
        return rep;
    }
    rep.applicable = true;
    int r = static_cast<int>(R->num_vars());
    rep.ext_index = r - *rep.cm.dimension;
    FPModule E = ext_module(H, rep.ext_index);
    FPModule hom = equivariant_homology(A, R);
    rep.homology_betti = betti_table(hom);
    rep.ext_betti = shift_betti(betti_table(E), rep.ext_index);
    rep.betti_match = rep.homology_betti == rep.ext_betti;
    rep.hilbert_match = hom.hilbert_series() == E.hilbert_series().shifted(rep.ext_index);
    return rep;
}

struct RestrictionRankReport {
    int generators = 0;       ///< minimal generators of H_T(A) = dim of H_T(A) (x) Q
    int ordinary_total = 0;   ///< dim H(A, d)
    bool free = false;
    bool bound_holds = false;  ///< Hilbert series of H_T(A) <= Hilb(R) * Poincare(H(A)) coefficientwise
    bool equality_iff_free = false;
};

/// Rank bookkeeping for the restriction H_T(A) -> H(A): at most dim H(A) generators,
/// Hilbert series bounded by Hilb(R) P_A(q), with equality exactly in the free case.
inline RestrictionRankReport restriction_rank_check(const GStarModule& A, const RingPtr& R, int max_degree = 20) {
    RestrictionRankReport rep;
    FPModule H = minimal_presentation(equivariant_cohomology(A, R));
    rep.generators = static_cast<int>(H.generators().rank());
    rep.ordinary_total = A.total_cohomology_dimension();
    rep.free = H.relations().rank() == 0;
    QPolynomial poincare;
    for (const auto& [deg, h] : A.cohomology_dimensions()) qpoly_add(poincare, {{deg, h}});
    HilbertSeries bound = hilbert_series(R) * poincare;
    int lo = -static_cast<int>(A.dim()) - 2;
    for (int d : A.degrees()) lo = std::min(lo, d);
    auto hb = bound.coefficients(lo, max_degree);
    auto hh = H.hilbert_series().coefficients(lo, max_degree);
    rep.bound_holds = true;
    bool equal = true;
    for (std::size_t k = 0; k < hb.size(); ++k) {
        if (hh[k] > hb[k]) rep.bound_holds = false;
        if (hh[k] != hb[k]) equal = false;
    }
    rep.equality_iff_free = equal == rep.free && (rep.generators <= rep.ordinary_total);
    return rep;
}

namespace models {

/// The point: one basis vector in degree 0, r contractions all zero.
inline GStarModule point(std::size_t r = 1) {
    return GStarModule({0}, QMatrix(1, 1), std::vector<QMatrix>(r, QMatrix(1, 1)));
}

/// Free circle: <1, theta>, |theta| = 1, iota theta = 1.
inline GStarModule free_circle() {
    QMatrix iota(2, 2);
    iota(0, 1) = 1;
    return GStarModule({0, 1}, QMatrix(2, 2), {iota});
}

/// Two classes in degrees 0 and 2 with all operators zero (equivariantly formal).
inline GStarModule formal_pair() { return GStarModule({0, 2}, QMatrix(2, 2), {QMatrix(2, 2)}); }

} // namespace models

} // namespace eqsyz
