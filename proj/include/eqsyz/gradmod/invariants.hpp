#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homology.hpp"

namespace eqsyz {

inline int num_vars(const FPModule& M) { return static_cast<int>(M.ring()->num_vars()); }

/// Krull dimension via the pole order of the Hilbert series; nullopt for the zero module.
inline std::optional<int> dimension(const FPModule& M) { return M.hilbert_series().pole_order(); }

/// Length of the minimal resolution; nullopt for the zero module.
inline std::optional<int> projective_dimension(const FPModule& M) {
    int len = minimal_resolution(M).length();
    if (len < 0) return std::nullopt;
    return len;
}

inline int depth_from_resolution(const Resolution& res, int r) {
    int len = res.length();
    if (len < 0) throw UndefinedDepth();
    return r - len;
}

/// Auslander-Buchsbaum: depth = r - pd.
inline int depth(const FPModule& M) { return depth_from_resolution(minimal_resolution(M), num_vars(M)); }

/// Ext^i(M, R) from a minimal resolution of M.
inline FPModule ext_from_resolution(const Resolution& res, int i) {
    const RingPtr& ring = res.modules.front().ring;
    if (i < 0 || static_cast<std::size_t>(i) >= res.modules.size()) return FPModule::zero(ring);
    auto k = static_cast<std::size_t>(i);
    GradedFreeModule Fi_dual = res.modules[k].dual();
    ModuleMap kernel = k < res.maps.size() ? syzygies(res.maps[k].transpose()) : ModuleMap::identity(Fi_dual);
    ModuleMap incoming = k > 0 ? res.maps[k - 1].transpose() : ModuleMap::zero(GradedFreeModule{ring, {}}, Fi_dual);
    return subquotient(kernel, incoming).module;
}

inline FPModule ext_module(const FPModule& M, int i) {
    if (i < 0 || i > num_vars(M)) throw InvalidInput("Ext index out of range");
    return ext_from_resolution(minimal_resolution(M), i);
}

/// Ext^0 .. Ext^r.
inline std::vector<FPModule> ext_modules(const FPModule& M) {
    Resolution res = minimal_resolution(M);
    std::vector<FPModule> out;
    for (int i = 0; i <= num_vars(M); ++i) out.push_back(ext_from_resolution(res, i));
    return out;
}

enum class CMStatus { zero, cohen_macaulay, not_cohen_macaulay };

inline std::string to_string(CMStatus s) {
    switch (s) {
    case CMStatus::zero: return "zero";
    case CMStatus::cohen_macaulay: return "cohen-macaulay";
    case CMStatus::not_cohen_macaulay: return "not cohen-macaulay";
    }
    return "?";
}

struct CMReport {
    CMStatus status = CMStatus::zero;
    std::optional<int> dimension;
    std::optional<int> depth;
    std::vector<int> nonzero_ext;   ///< indices i with Ext^i(M,R) != 0
    bool ext_concentrated = false;  ///< Ext nonzero exactly at i = r - dim
    bool depth_equals_dim = false;
    bool tests_agree = true;

    bool is_cm() const { return status == CMStatus::cohen_macaulay; }
};

/// Runs both Cohen-Macaulay tests (Ext concentration and depth = dim) and records whether they agree.
inline CMReport is_cohen_macaulay(const FPModule& M) {
    CMReport rep;
    int r = num_vars(M);
    Resolution res = minimal_resolution(M);
    rep.dimension = dimension(M);
    if (res.length() < 0) {
        rep.status = CMStatus::zero;
        return rep;
    }
    rep.depth = depth_from_resolution(res, r);
    for (int i = 0; i <= r; ++i) {
        if (!is_zero(ext_from_resolution(res, i))) rep.nonzero_ext.push_back(i);
    }
    int d = rep.dimension.value_or(-1);
    rep.ext_concentrated = rep.nonzero_ext.size() == 1 && rep.nonzero_ext[0] == r - d;
    rep.depth_equals_dim = *rep.depth == d;
    rep.tests_agree = rep.ext_concentrated == rep.depth_equals_dim;
    rep.status = rep.ext_concentrated && rep.depth_equals_dim ? CMStatus::cohen_macaulay
                                                              : CMStatus::not_cohen_macaulay;
    return rep;
}

/// M* = Hom(M, R) for M = coker(P: F1 -> F0).
struct DualModule {
    ModuleMap generators;  ///< K: G0 -> F0*, image = ker(P^T)
    ModuleMap relations;   ///< S: G1 -> G0, image = ker K
    FPModule module() const { return FPModule(relations); }
};

inline DualModule dual_module(const FPModule& M) {
    FPModule P = minimal_presentation(M);
    ModuleMap K = syzygies(P.presentation().transpose());
    ModuleMap S = syzygies(K);
    return DualModule{K, S};
}

/// The natural map M -> M** with its kernel (torsion) and cokernel.
struct Biduality {
    FPModule source;        ///< minimal presentation of M
    DualModule dual;        ///< M*
    ModuleMap map;          ///< F0 -> G0*, lands in M** = ker(S^T)
    FPModule kernel;
    FPModule cokernel;
    FPModule double_dual;

    bool torsion_free() const { return is_zero(kernel); }
    bool reflexive() const { return torsion_free() && is_zero(cokernel); }
};

inline Biduality biduality(const FPModule& M) {
    Biduality b;
    b.source = minimal_presentation(M);
    b.dual = dual_module(b.source);
    b.map = b.dual.generators.transpose();
    ModuleMap St = b.dual.relations.transpose();
    ModuleMap ker_St = syzygies(St);
    b.kernel = subquotient(syzygies(b.map), b.source.presentation()).module;
    b.cokernel = subquotient(ker_St, b.map).module;
    b.double_dual = subquotient(ker_St, ModuleMap::zero(GradedFreeModule{M.ring(), {}}, St.source())).module;
    return b;
}

/// The embedding complex  M -> G0* -> G1* -> ...  dual to a resolution of M*,
/// together with the homology at each position.
struct SyzygyWitness {
    Biduality bidual;
    Resolution dual_resolution;        ///< resolution G of M*
    std::vector<ModuleMap> maps;       ///< maps[0] = M -> G0*, maps[k] = G_{k-1}* -> G_k*
    std::vector<FPModule> homology;    ///< homology at M, G0*, G1*, ...
    std::vector<bool> exact;
};

struct SyzygyOrder {
    int order = 0;
    int cross_check = 0;
    bool agree = true;
    bool free = false;
    SyzygyWitness witness;
};

/// Largest j <= r such that M is a j-th syzygy, certified by the witness complex
/// and cross-checked against reflexivity plus vanishing of Ext^i(M*, R).
inline SyzygyOrder syzygy_order(const FPModule& M) {
    int r = num_vars(M);
    SyzygyOrder out;
    FPModule P = minimal_presentation(M);
    if (P.relations().rank() == 0) {
        out.order = out.cross_check = r;
        out.free = true;
        return out;
    }
    auto& w = out.witness;
    w.bidual = biduality(P);
    w.dual_resolution = minimal_resolution(w.bidual.dual.module());
    const auto& G = w.dual_resolution;

    w.maps.push_back(w.bidual.map);
    for (const auto& g : G.maps) w.maps.push_back(g.transpose());
    // position 0: injectivity of M -> G0*
    w.homology.push_back(w.bidual.kernel);
    // position k+1: at G_k*, between maps[k] and maps[k+1]
    for (std::size_t k = 0; k < G.modules.size(); ++k) {
        const auto& here = G.modules[k].dual();
        ModuleMap out_map = k + 1 < w.maps.size()
                                ? w.maps[k + 1]
                                : ModuleMap::zero(here, GradedFreeModule{M.ring(), {}});
        ModuleMap none_target = ModuleMap::zero(GradedFreeModule{M.ring(), {}}, out_map.target());
        w.homology.push_back(homology(w.maps[k], out_map, ModuleMap::zero(GradedFreeModule{M.ring(), {}}, here),
                                      none_target)
                                 .module);
        if (static_cast<int>(w.homology.size()) > r) break;
    }
    int count = 0;
    for (const auto& h : w.homology) {
        bool ex = is_zero(h);
        w.exact.push_back(ex);
    }
    while (count < static_cast<int>(w.exact.size()) && w.exact[static_cast<std::size_t>(count)]) ++count;
    out.order = std::min(count, r);

    // independent route through Ext of the dual
    int cc;
    if (!w.bidual.torsion_free()) {
        cc = 0;
    } else if (!w.bidual.reflexive()) {
        cc = 1;
    } else {
        cc = 2;
        for (int i = 1; cc < r; ++i) {
            if (!is_zero(ext_from_resolution(G, i))) break;
            ++cc;
        }
    }
    out.cross_check = std::min(cc, r);
    out.agree = out.cross_check == out.order;
    return out;
}

} // namespace eqsyz
