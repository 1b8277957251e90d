#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "../polyring/linalg.hpp"
#include "filtration.hpp"

namespace eqsyz {

struct GKMEdge {
    std::size_t v = 0;
    std::size_t w = 0;
    std::vector<long> weight;
};

/// Moment graph of a torus action: fixed points, invariant 2-spheres with their
/// isotropy weights, and optional Euler classes at the fixed points.
class GKMGraph {
public:
    GKMGraph(RingPtr ring, std::vector<std::string> vertices, std::vector<GKMEdge> edges,
             std::map<std::string, Polynomial> euler = {})
        : ring_(std::move(ring)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::size_t r = ring_->num_vars();
        for (int d : ring_->degrees()) {
            if (d != 2) throw InvalidInput("GKM graph needs a ring generated in degree 2");
        }
        for (std::size_t a = 0; a < vertices_.size(); ++a) {
            for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
                if (vertices_[a] == vertices_[b]) throw InvalidInput("duplicate vertex '" + vertices_[a] + "'");
            }
        }
        for (const auto& e : edges_) {
            if (e.v >= vertices_.size() || e.w >= vertices_.size()) throw InvalidInput("edge refers to an unknown vertex");
            if (e.v == e.w) throw InvalidInput("edge is a loop at '" + vertices_[e.v] + "'");
            if (e.weight.size() != r) throw InvalidInput("edge weight must have length " + std::to_string(r));
            long g = 0;
            for (long a : e.weight) g = std::gcd(g, a < 0 ? -a : a);
            if (g == 0) throw InvalidInput("edge weight is zero");
            if (g != 1) throw InvalidInput("edge weight is not primitive");
        }
        for (auto& [name, e] : euler) {
            auto idx = vertex_index(name);
            if (!idx) throw InvalidInput("Euler class for unknown vertex '" + name + "'");
            require_same_ring(e.ring(), ring_, "Euler class");
            euler_[*idx] = e;
        }
    }

    const RingPtr& ring() const { return ring_; }
    int rank() const { return static_cast<int>(ring_->num_vars()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<GKMEdge>& edges() const { return edges_; }

    std::optional<std::size_t> vertex_index(const std::string& name) const {
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            if (vertices_[k] == name) return k;
        }
        return std::nullopt;
    }

    Polynomial weight(std::size_t e) const {
        Polynomial p(ring_);
        for (std::size_t i = 0; i < edges_[e].weight.size(); ++i) {
            if (edges_[e].weight[i] != 0) p += Polynomial::variable(ring_, i) * Rational(edges_[e].weight[i]);
        }
        return p;
    }

    /// Supplied Euler class, or the product of incident weights pointing away from v.
    Polynomial euler(std::size_t v) const {
        auto it = euler_.find(v);
        if (it != euler_.end()) return it->second;
        Polynomial e = Polynomial::constant(ring_, Rational(1));
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            if (edges_[k].v == v) e = e * weight(k);
            else if (edges_[k].w == v) e = e * (-weight(k));
        }
        return e;
    }

    bool has_supplied_euler() const { return !euler_.empty(); }

private:
    RingPtr ring_;
    std::vector<std::string> vertices_;
    std::vector<GKMEdge> edges_;
    std::map<std::size_t, Polynomial> euler_;
};

struct ChangSkjelbred {
    FPModule ab0;      ///< R^V, generators in degree 0
    FPModule ab1;      ///< sum over edges of R/(alpha_e), generators in degree 0
    ModuleMap delta0;  ///< (f_v - f_w) on edge (v, w)
};

inline ChangSkjelbred chang_skjelbred(const GKMGraph& G) {
    const RingPtr& R = G.ring();
    GradedFreeModule F0{R, std::vector<int>(G.vertices().size(), 0)};
    GradedFreeModule F1{R, std::vector<int>(G.edges().size(), 0)};
    std::vector<ModuleElement> rels;
    for (std::size_t e = 0; e < G.edges().size(); ++e) rels.push_back(ModuleElement::from_polynomial(e, G.weight(e)));
    std::vector<ModuleElement> cols;
    for (std::size_t v = 0; v < G.vertices().size(); ++v) {
        ModuleElement c;
        for (std::size_t e = 0; e < G.edges().size(); ++e) {
            if (G.edges()[e].v == v) c += ModuleElement::unit(e);
            if (G.edges()[e].w == v) c -= ModuleElement::unit(e);
        }
        cols.push_back(c);
    }
    return {FPModule::free(F0), FPModule::quotient(F1, rels), ModuleMap(F0, F1, cols)};
}

/// ker(delta_0) as a submodule of R^V.
struct GKMCohomology {
    ModuleMap inclusion;  ///< generators -> R^V
    FPModule module;      ///< abstract presentation on those generators

    bool is_free() const { return module.relations().rank() == 0; }
};

inline GKMCohomology gkm_cohomology(const GKMGraph& G) {
    auto cs = chang_skjelbred(G);
    ModuleMap K = kernel_into(cs.delta0, cs.ab1.presentation());
    FPModule M = minimal_presentation(FPModule(syzygies(K)));
    return {K, M};
}

/// The Chang-Skjelbred part of the Atiyah-Bredon complex, augmented by the kernel.
inline FiltrationDatum filtration_from_gkm(const GKMGraph& G, const std::string& name = "gkm") {
    auto cs = chang_skjelbred(G);
    auto H = gkm_cohomology(G);
    FiltrationDatum D;
    D.name = name;
    D.ring = G.ring();
    D.ab = {cs.ab0, cs.ab1};
    D.delta = {cs.delta0};
    D.H = FPModule(syzygies(H.inclusion));
    D.iota = H.inclusion;
    return D;
}

/// Whether the tuple satisfies the edge congruences.
inline bool is_gkm_class(const GKMGraph& G, const ModuleElement& f) {
    auto cs = chang_skjelbred(G);
    return detail::maps_into({cs.delta0.apply(f)}, cs.ab1.presentation());
}

/// Localization formula sum_v f_v / e_v; throws if the class is not in the kernel
/// or the sum is not a polynomial.
inline Polynomial integrate(const GKMGraph& G, const ModuleElement& f) {
    if (!is_gkm_class(G, f)) throw PreconditionFailed("tuple does not satisfy the edge congruences");
    const RingPtr& R = G.ring();
    std::size_t n = G.vertices().size();
    auto col = f.to_column(R, n);
    Polynomial denom = Polynomial::constant(R, Rational(1));
    std::vector<Polynomial> e;
    for (std::size_t v = 0; v < n; ++v) {
        e.push_back(G.euler(v));
        if (e.back().is_zero()) throw PreconditionFailed("Euler class at '" + G.vertices()[v] + "' is zero");
        denom = denom * e.back();
    }
    Polynomial num(R);
    for (std::size_t v = 0; v < n; ++v) {
        if (col[v].is_zero()) continue;
        Polynomial term = col[v];
        for (std::size_t u = 0; u < n; ++u) {
            if (u != v) term = term * e[u];
        }
        num += term;
    }
    auto q = divide_exact(num, denom);
    if (!q) throw PreconditionFailed("localization sum is not a polynomial: wrong Euler data or not a class");
    return *q;
}

inline ModuleElement pointwise_product(const ModuleElement& a, const ModuleElement& b, const RingPtr& R, std::size_t n) {
    auto ca = a.to_column(R, n), cb = b.to_column(R, n);
    for (std::size_t v = 0; v < n; ++v) ca[v] = ca[v] * cb[v];
    return ModuleElement::from_column(ca);
}

struct PairingReport {
    bool applicable = false;
    std::string reason;
    std::vector<ModuleElement> basis;
    std::vector<std::vector<Polynomial>> gram;
    Polynomial determinant;
    bool perfect = false;
    bool reflexive = false;
    bool agree = false;  ///< perfect <=> reflexive
};

/// Gram matrix of the localization pairing on a free basis of the GKM cohomology.
inline PairingReport pairing_perfection(const GKMGraph& G, std::optional<std::vector<ModuleElement>> basis = std::nullopt) {
    PairingReport rep;
    auto H = gkm_cohomology(G);
    rep.reflexive = biduality(H.module).reflexive();
    if (!H.is_free()) {
        rep.reason = "equivariant cohomology is not free; use the syzygy test";
        rep.agree = !rep.reflexive;
        return rep;
    }
    rep.applicable = true;
    rep.basis = basis ? *basis : H.inclusion.columns();
    const RingPtr& R = G.ring();
    std::size_t n = G.vertices().size();
    std::size_t m = rep.basis.size();
    rep.gram.assign(m, std::vector<Polynomial>(m, Polynomial(R)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            rep.gram[i][j] = integrate(G, pointwise_product(rep.basis[i], rep.basis[j], R, n));
            rep.gram[j][i] = rep.gram[i][j];
        }
    }
    rep.determinant = polynomial_determinant(rep.gram, R);
    rep.perfect = !rep.determinant.is_zero() && rep.determinant.is_constant();
    rep.agree = rep.perfect == rep.reflexive;
    return rep;
}

} // namespace eqsyz
