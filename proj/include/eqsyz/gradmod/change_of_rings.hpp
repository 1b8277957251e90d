#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "../polyring/linalg.hpp"
#include "homology.hpp"

namespace eqsyz {

/// All monomials of the given weighted degree, in decreasing monomial order.
inline std::vector<Monomial> monomials_of_degree(const GradedPolynomialRing& ring, int degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    std::vector<int> exps(ring.num_vars(), 0);
    auto rec = [&](auto&& self, std::size_t v, int left) -> void {
        if (v == ring.num_vars()) {
            if (left == 0) out.push_back(ring.monomial(exps));
            return;
        }
        int d = ring.degrees()[v];
        for (int e = left / d; e >= 0; --e) {
            exps[v] = e;
            self(self, v + 1, left - e * d);
        }
        exps[v] = 0;
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare_monomials(a, b) > 0; });
    return out;
}

/// Graded ring homomorphism given by the images of the source variables.
struct RingMap {
    RingPtr source;
    RingPtr target;
    std::vector<Polynomial> images;

    RingMap() = default;
    RingMap(RingPtr src, RingPtr tgt, std::vector<Polynomial> imgs)
        : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
        if (images.size() != source->num_vars()) throw InvalidInput("ring map: one image per source variable required");
        for (std::size_t i = 0; i < images.size(); ++i) {
            require_same_ring(images[i].ring() ? images[i].ring() : target, target, "ring map");
            if (images[i].is_zero()) continue;
            auto d = images[i].degree();
            if (!d || *d != source->degrees()[i]) {
                throw NotHomogeneous("ring map: image of " + source->names()[i] + " must be homogeneous of degree " +
                                     std::to_string(source->degrees()[i]));
            }
        }
    }

    Polynomial operator()(const Polynomial& f) const {
        if (f.ring()) require_same_ring(f.ring(), source, "ring map application");
        return f.substitute(images, target);
    }

    ModuleElement apply(const ModuleElement& v, std::size_t rank) const {
        auto col = v.to_column(source, rank);
        for (auto& p : col) p = (*this)(p);
        return ModuleElement::from_column(col);
    }

    ModuleMap apply(const ModuleMap& A) const {
        require_same_ring(A.ring(), source, "base change");
        return A.map_entries(target, [&](const Polynomial& p) { return (*this)(p); });
    }
};

/// R_T (x) M over R_G: the presentation matrix with entries pushed through `phi`.
inline FPModule base_change(const FPModule& M, const RingMap& phi) { return FPModule(phi.apply(M.presentation())); }

/// A ring extension phi: R_G -> R_T that is free with a homogeneous basis.
class FreeExtension {
public:
    FreeExtension(RingMap phi, std::vector<Polynomial> basis) : phi_(std::move(phi)), basis_(std::move(basis)) {
        for (const auto& b : basis_) {
            require_same_ring(b.ring(), phi_.target, "extension basis");
            if (b.is_zero()) throw InvalidInput("extension basis contains zero");
            basis_degrees_.push_back(*b.degree());
        }
        HilbertSeries lhs = hilbert_series(phi_.target);
        QPolynomial poincare;
        for (int d : basis_degrees_) qpoly_add(poincare, {{d, 1}});
        HilbertSeries rhs = hilbert_series(phi_.source) * poincare;
        if (!(lhs == rhs)) {
            throw PreconditionFailed("extension is not free on the given basis: Hilbert series " + lhs.to_string() +
                                     " differs from " + rhs.to_string());
        }
    }

    const RingMap& map() const { return phi_; }
    const RingPtr& base() const { return phi_.source; }
    const RingPtr& top() const { return phi_.target; }
    const std::vector<Polynomial>& basis() const { return basis_; }
    const std::vector<int>& basis_degrees() const { return basis_degrees_; }
    std::size_t degree() const { return basis_.size(); }

    /// Coefficients c_k over the base with f = sum phi(c_k) * b_k (f homogeneous).
    std::vector<Polynomial> expand(const Polynomial& f) const {
        std::vector<Polynomial> out(basis_.size(), Polynomial(base()));
        if (f.is_zero()) return out;
        int d = *f.degree();
        const Block& blk = block(d);
        std::vector<Rational> rhs(blk.monos.size());
        for (const auto& t : f.terms()) rhs[blk.index.at(pack(t.mono))] = t.coeff;
        std::vector<std::vector<PolyTerm>> parts(basis_.size());
        for (std::size_t u = 0; u < blk.unknowns.size(); ++u) {
            Rational c = 0;
            for (std::size_t k = 0; k < rhs.size(); ++k) {
                if (rhs[k] != 0) c += blk.inverse(u, k) * rhs[k];
            }
            if (c != 0) parts[blk.unknowns[u].first].push_back({blk.unknowns[u].second, c});
        }
        for (std::size_t k = 0; k < basis_.size(); ++k) out[k] = Polynomial::from_terms(base(), std::move(parts[k]));
        return out;
    }

private:
    struct Block {
        std::vector<Monomial> monos;
        std::map<std::vector<int>, std::size_t> index;
        std::vector<std::pair<std::size_t, Monomial>> unknowns;
        QMatrix inverse;
    };

    static std::vector<int> pack(const Monomial& m) { return std::vector<int>(m.exp.begin(), m.exp.end()); }

    const Block& block(int d) const {
        std::lock_guard<std::mutex> lock(*mutex_);
        auto it = cache_->find(d);
        if (it != cache_->end()) return it->second;
        Block blk;
        blk.monos = monomials_of_degree(*top(), d);
        for (std::size_t k = 0; k < blk.monos.size(); ++k) blk.index[pack(blk.monos[k])] = k;
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            for (const auto& m : monomials_of_degree(*base(), d - basis_degrees_[b])) blk.unknowns.push_back({b, m});
        }
        if (blk.unknowns.size() != blk.monos.size()) {
            throw PreconditionFailed("extension basis does not span degree " + std::to_string(d) + " freely");
        }
        QMatrix A(blk.monos.size(), blk.unknowns.size());
        for (std::size_t u = 0; u < blk.unknowns.size(); ++u) {
            Polynomial p = phi_(Polynomial::term(base(), blk.unknowns[u].second, Rational(1))) *
                           basis_[blk.unknowns[u].first];
            for (const auto& t : p.terms()) A(blk.index.at(pack(t.mono)), u) = t.coeff;
        }
        auto inv = A.inverse();
        if (!inv) throw PreconditionFailed("extension basis is linearly dependent in degree " + std::to_string(d));
        blk.inverse = std::move(*inv);
        return cache_->emplace(d, std::move(blk)).first->second;
    }

    RingMap phi_;
    std::vector<Polynomial> basis_;
    std::vector<int> basis_degrees_;
    std::shared_ptr<std::map<int, Block>> cache_ = std::make_shared<std::map<int, Block>>();
    std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
};

/// Free module over the base with generators (i, b), i major.
inline GradedFreeModule restrict_free(const GradedFreeModule& F, const FreeExtension& ext) {
    GradedFreeModule G{ext.base(), {}};
    for (int d : F.degrees) {
        for (int e : ext.basis_degrees()) G.degrees.push_back(d + e);
    }
    return G;
}

/// Coordinates of an element of F (over the top ring) in restrict_free(F).
inline ModuleElement restrict_element(const ModuleElement& v, const GradedFreeModule& F, const FreeExtension& ext) {
    auto col = v.to_column(F.ring, F.rank());
    std::vector<Polynomial> out;
    for (const auto& p : col) {
        auto c = ext.expand(p);
        out.insert(out.end(), c.begin(), c.end());
    }
    return ModuleElement::from_column(out);
}

/// Inverse of restrict_element.
inline ModuleElement extend_element(const ModuleElement& v, const GradedFreeModule& F, const FreeExtension& ext) {
    std::size_t nb = ext.degree();
    auto col = v.to_column(ext.base(), F.rank() * nb);
    std::vector<Polynomial> out(F.rank(), Polynomial(F.ring));
    for (std::size_t i = 0; i < F.rank(); ++i) {
        for (std::size_t k = 0; k < nb; ++k) out[i] += ext.map()(col[i * nb + k]) * ext.basis()[k];
    }
    return ModuleElement::from_column(out);
}

/// M viewed as a module over the base ring.
inline FPModule restrict_scalars(const FPModule& M, const FreeExtension& ext) {
    require_same_ring(M.ring(), ext.top(), "restrict_scalars");
    const auto& F = M.generators();
    GradedFreeModule G = restrict_free(F, ext);
    std::vector<ModuleElement> rels;
    for (const auto& p : M.presentation().columns()) {
        for (const auto& b : ext.basis()) {
            ModuleElement bp;
            bp.add_scaled(b, p);
            rels.push_back(restrict_element(bp, F, ext));
        }
    }
    return FPModule::quotient(G, rels);
}

} // namespace eqsyz
