#pragma once

// Degree-by-degree linear algebra over Q, written without Groebner bases.
// Used as an independent reference for Hilbert functions, kernels and exactness.

#include <array>
#include <map>
#include <random>
#include <vector>

#include <eqsyz/cartan/gstar.hpp>
#include <eqsyz/gradmod/module.hpp>
#include <eqsyz/polyring/linalg.hpp>

namespace oracle {

using namespace eqsyz;
using Exps = std::array<std::int32_t, kMaxVars>;

inline void enumerate(const GradedPolynomialRing& R, std::size_t var, int left, Exps& cur, std::vector<Monomial>& out) {
    if (var == R.num_vars()) {
        if (left == 0) {
            std::vector<int> e(cur.begin(), cur.begin() + static_cast<long>(R.num_vars()));
            out.push_back(R.monomial(e));
        }
        return;
    }
    int d = R.degrees()[var];
    for (int k = 0; k * d <= left; ++k) {
        cur[var] = k;
        enumerate(R, var + 1, left - k * d, cur, out);
    }
    cur[var] = 0;
}

inline std::vector<Monomial> monomials(const RingPtr& R, int degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    Exps cur{};
    enumerate(*R, 0, degree, cur, out);
    return out;
}

/// Coordinates of the degree-d part of a graded free module.
class DegreePiece {
public:
    DegreePiece(const GradedFreeModule& F, int d) {
        for (std::size_t c = 0; c < F.rank(); ++c) {
            for (const auto& m : monomials(F.ring, d - F.degrees[c])) {
                index_[{c, m.exp}] = basis_.size();
                basis_.push_back({c, m});
            }
        }
    }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::pair<std::size_t, Monomial>>& basis() const { return basis_; }

    std::vector<Rational> coordinates(const ModuleElement& v) const {
        std::vector<Rational> x(basis_.size());
        for (const auto& t : v.terms()) x[index_.at({t.comp, t.mono.exp})] += t.coeff;
        return x;
    }

private:
    std::vector<std::pair<std::size_t, Monomial>> basis_;
    std::map<std::pair<std::size_t, Exps>, std::size_t> index_;
};

/// Columns spanning the degree-d part of the submodule generated by `gens` (given with their degrees).
inline QMatrix span_matrix(const GradedFreeModule& F, const std::vector<ModuleElement>& gens, const std::vector<int>& degs,
                           int d) {
    DegreePiece P(F, d);
    std::vector<std::vector<Rational>> cols;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        for (const auto& m : monomials(F.ring, d - degs[j])) cols.push_back(P.coordinates(gens[j].mul_term(m, Rational(1))));
    }
    QMatrix A(P.dim(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < P.dim(); ++i) A(i, j) = cols[j][i];
    }
    return A;
}

inline std::size_t image_rank(const ModuleMap& A, int d) {
    return span_matrix(A.target(), A.columns(), A.source().degrees, d).rank();
}

inline std::size_t free_dim(const GradedFreeModule& F, int d) { return DegreePiece(F, d).dim(); }

/// dim_Q M_d for M = coker(presentation).
inline long dim(const FPModule& M, int d) {
    return static_cast<long>(free_dim(M.generators(), d)) - static_cast<long>(image_rank(M.presentation(), d));
}

inline std::vector<long> hilbert_function(const FPModule& M, int lo, int hi) {
    std::vector<long> out;
    for (int d = lo; d <= hi; ++d) out.push_back(dim(M, d));
    return out;
}

/// dim of the kernel of a map of free modules in degree d.
inline long kernel_dim(const ModuleMap& A, int d) {
    return static_cast<long>(free_dim(A.source(), d)) - static_cast<long>(image_rank(A, d));
}

/// Homology at the middle of F --A--> G --B--> H (free modules) in degree d.
inline long homology_dim(const ModuleMap& A, const ModuleMap& B, int d) {
    return kernel_dim(B, d) - static_cast<long>(image_rank(A, d));
}

/// Whether multiplication by l is injective on M in degree d (M = F / Rel).
inline bool multiplication_injective(const FPModule& M, const Polynomial& l, int d) {
    const auto& F = M.generators();
    int dl = *l.degree();
    QMatrix Rd = span_matrix(F, M.presentation().columns(), M.relations().degrees, d);
    QMatrix Rn = span_matrix(F, M.presentation().columns(), M.relations().degrees, d + dl);
    DegreePiece P(F, d), Q(F, d + dl);
    QMatrix LR(Q.dim(), P.dim() + Rn.cols());
    for (std::size_t j = 0; j < P.dim(); ++j) {
        const auto& [c, m] = P.basis()[j];
        ModuleElement v = ModuleElement::from_polynomial(c, l.mul_term(m, Rational(1)));
        auto x = Q.coordinates(v);
        for (std::size_t i = 0; i < Q.dim(); ++i) LR(i, j) = x[i];
    }
    for (std::size_t j = 0; j < Rn.cols(); ++j) {
        for (std::size_t i = 0; i < Q.dim(); ++i) LR(i, P.dim() + j) = Rn(i, j);
    }
    long pre = static_cast<long>(P.dim()) + static_cast<long>(Rn.rank()) - static_cast<long>(LR.rank());
    return pre == static_cast<long>(Rd.rank());
}

/// Depth through regular sequences of random linear forms, checked on degrees lo..hi.
/// Returns the length of the longest prefix that is regular on M.
inline int depth_by_regular_sequence(const FPModule& M, int lo, int hi, std::uint64_t seed) {
    const RingPtr& R = M.ring();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(1, 7);
    FPModule N = M;
    int k = 0;
    for (; k < static_cast<int>(R->num_vars()); ++k) {
        bool nonzero = false;
        for (int d = lo; d <= hi && !nonzero; ++d) nonzero = dim(N, d) != 0;
        if (!nonzero) break;
        Polynomial l(R);
        for (std::size_t i = 0; i < R->num_vars(); ++i) {
            if (R->degrees()[i] == R->degrees()[0]) l += Polynomial::variable(R, i) * Rational(coeff(rng));
        }
        bool regular = true;
        for (int d = lo; d <= hi && regular; ++d) regular = multiplication_injective(N, l, d);
        if (!regular) break;
        std::vector<ModuleElement> rels = N.presentation().columns();
        std::vector<int> degs = N.relations().degrees;
        for (std::size_t g = 0; g < N.generators().rank(); ++g) {
            rels.push_back(ModuleElement::from_polynomial(g, l));
            degs.push_back(N.generators().degrees[g] + *l.degree());
        }
        N = FPModule(ModuleMap(GradedFreeModule{R, degs}, N.generators(), rels));
    }
    return k;
}

/// Cohomology dimensions of the Cartan complex (R (x) A, d - sum t_k iota_k), built by hand degree by degree.
inline long cartan_dim(const GStarModule& A, const RingPtr& R, int n) {
    auto piece = [&](int deg) {
        std::vector<std::pair<std::size_t, Monomial>> b;
        for (std::size_t a = 0; a < A.dim(); ++a) {
            for (const auto& m : monomials(R, deg - A.degrees()[a])) b.push_back({a, m});
        }
        return b;
    };
    auto differential = [&](int deg) {
        auto src = piece(deg), tgt = piece(deg + 1);
        std::map<std::pair<std::size_t, Exps>, std::size_t> idx;
        for (std::size_t i = 0; i < tgt.size(); ++i) idx[{tgt[i].first, tgt[i].second.exp}] = i;
        QMatrix D(tgt.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            const auto& [a, m] = src[j];
            for (std::size_t b = 0; b < A.dim(); ++b) {
                if (A.d()(b, a) != 0) D(idx.at({b, m.exp}), j) += A.d()(b, a);
                for (std::size_t k = 0; k < A.rank(); ++k) {
                    if (A.iota()[k](b, a) == 0) continue;
                    Monomial tm = m * R->variable(k);
                    D(idx.at({b, tm.exp}), j) -= A.iota()[k](b, a);
                }
            }
        }
        return D;
    };
    long here = static_cast<long>(piece(n).size());
    return here - static_cast<long>(differential(n).rank()) - static_cast<long>(differential(n - 1).rank());
}

/// Random homogeneous polynomial of the given degree.
inline Polynomial random_polynomial(const RingPtr& R, int degree, std::mt19937_64& rng, int bound = 4) {
    std::uniform_int_distribution<int> c(-bound, bound);
    Polynomial p(R);
    for (const auto& m : monomials(R, degree)) p += Polynomial::term(R, m, Rational(c(rng)));
    return p;
}

} // namespace oracle
