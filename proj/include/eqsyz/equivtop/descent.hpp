#pragma once

#include <string>
#include <vector>

#include "../weyl/equivariant.hpp"
#include "gkm.hpp"

namespace eqsyz {

/// Vertex permutation per group generator, compatible with the weights.
struct GKMSymmetry {
    std::vector<std::vector<std::size_t>> vertex_perms;
};

struct EquivariantCS {
    WEquivariantFreeModule vertices;
    WEquivariantFreeModule edges;
};

/// Actions on R^V and on R^E (edges pick up a sign when reversed) making delta_0 equivariant.
inline EquivariantCS equivariant_structure(const GKMGraph& G, const GKMSymmetry& S, const ReflectionGroupDatum& W) {
    require_same_ring(G.ring(), W.ring_T(), "GKM symmetry");
    if (S.vertex_perms.size() != W.generators().size()) {
        throw InvalidInput("one vertex permutation per group generator required");
    }
    std::size_t nv = G.vertices().size(), ne = G.edges().size();
    std::vector<SignedPermutation> on_vertices, on_edges;
    for (std::size_t g = 0; g < S.vertex_perms.size(); ++g) {
        const auto& pi = S.vertex_perms[g];
        if (pi.size() != nv) throw InvalidInput("vertex permutation has the wrong length");
        on_vertices.push_back({pi, std::vector<int>(nv, 1)});
        SignedPermutation pe;
        for (std::size_t e = 0; e < ne; ++e) {
            const auto& edge = G.edges()[e];
            Polynomial moved = act(W.generators()[g], G.weight(e));
            std::size_t a = pi.at(edge.v), b = pi.at(edge.w);
            std::optional<std::size_t> target;
            int sign = 0;
            for (std::size_t f = 0; f < ne && !target; ++f) {
                const auto& o = G.edges()[f];
                bool same = o.v == a && o.w == b, flipped = o.v == b && o.w == a;
                if (!same && !flipped) continue;
                Polynomial wf = G.weight(f);
                if (!(moved == wf) && !(moved == -wf)) continue;
                target = f;
                sign = same ? 1 : -1;
            }
            if (!target) {
                throw PreconditionFailed("symmetry does not map edge " + G.vertices()[edge.v] + "-" +
                                         G.vertices()[edge.w] + " to an edge with the transformed weight");
            }
            pe.perm.push_back(*target);
            pe.sign.push_back(sign);
        }
        on_edges.push_back(pe);
    }
    GradedFreeModule F0{G.ring(), std::vector<int>(nv, 0)};
    GradedFreeModule F1{G.ring(), std::vector<int>(ne, 0)};
    return {WEquivariantFreeModule(F0, W, on_vertices), WEquivariantFreeModule(F1, W, on_edges)};
}

struct DescentReport {
    InvariantModule H_G;          ///< (ker delta_0)^W over R_G
    FPModule kernel;              ///< ker delta_0 over R_T
    FiltrationDatum descended;    ///< AB^0_G -> AB^1_G with augmentation H_G
    int order_G = 0;
    int order_T = 0;
    bool orders_agree = false;
    bool hilbert_match = false;   ///< base change of H_G against the kernel
    bool free_G = false;
    bool pass() const { return orders_agree && hilbert_match; }
};

/// Invariant (R_G) version of the Chang-Skjelbred complex of a W-symmetric GKM graph,
/// compared with the torus version.
inline DescentReport descend_invariants(const GKMGraph& G, const GKMSymmetry& S, const ReflectionGroupDatum& W) {
    auto eq = equivariant_structure(G, S, W);
    auto cs = chang_skjelbred(G);
    auto gk = gkm_cohomology(G);
    FreeExtension ext = free_extension(W);
    const auto& F0 = eq.vertices.module();
    const auto& F1 = eq.edges.module();

    DescentReport rep;
    rep.kernel = gk.module;
    rep.H_G = module_invariants(eq.vertices, gk.inclusion.columns());
    InvariantModule ab0 = module_invariants(eq.vertices, {});
    InvariantModule ab1 = module_invariants(eq.edges, {}, cs.ab1.presentation().columns());

    auto coordinates = [&](const InvariantModule& target, const ModuleElement& v, const GradedFreeModule& F) {
        auto c = invariant_coordinates(target, v, F, ext);
        if (!c) throw PreconditionFailed("invariant element outside the invariant span");
        return *c;
    };
    std::vector<ModuleElement> dcols, icols;
    for (const auto& g : ab0.generators) dcols.push_back(coordinates(ab1, cs.delta0.apply(g), F1));
    for (const auto& h : rep.H_G.generators) icols.push_back(coordinates(ab0, h, F0));

    FiltrationDatum& D = rep.descended;
    D.name = "descended";
    D.ring = W.ring_G();
    D.ab = {ab0.module, ab1.module};
    D.delta = {ModuleMap(ab0.module.generators(), ab1.module.generators(), dcols)};
    D.H = rep.H_G.module;
    D.iota = ModuleMap(rep.H_G.module.generators(), ab0.module.generators(), icols);
    D.assumptions = {"finitely many infinitesimal orbit types", "finite-dimensional ordinary cohomology"};
    validate(D);

    rep.order_G = syzygy_order(rep.H_G.module).order;
    rep.order_T = syzygy_order(rep.kernel).order;
    rep.orders_agree = rep.order_G == rep.order_T;
    rep.hilbert_match = base_change(rep.H_G.module, W.embedding()).hilbert_series() == rep.kernel.hilbert_series();
    rep.free_G = minimal_presentation(rep.H_G.module).relations().rank() == 0;
    return rep;
}

} // namespace eqsyz
