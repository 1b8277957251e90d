#pragma once

#include <optional>
#include <string>
#include <vector>

#include "../gradmod/change_of_rings.hpp"
#include "../gradmod/invariants.hpp"

namespace eqsyz {

/// Homology-side truncation: N_i = H^G_*(X_i) and Q_i = H^G_*(X, X_i).
struct Truncation {
    int index = 0;
    FPModule sub;
    FPModule quotient;
};

/// Atiyah-Bredon data: modules AB^0..AB^k with maps delta_i between their free
/// covers, an optional augmentation iota: H -> AB^0 and an optional homology-side module N.
struct FiltrationDatum {
    std::string name;
    RingPtr ring;
    std::vector<FPModule> ab;
    std::vector<ModuleMap> delta;   ///< delta[i]: cover(AB^i) -> cover(AB^{i+1})
    std::optional<FPModule> H;
    std::optional<ModuleMap> iota;  ///< cover(H) -> cover(AB^0)
    std::optional<FPModule> N;
    bool poincare_duality = false;
    std::vector<Truncation> truncations;
    std::vector<std::string> assumptions;

    int rank() const { return static_cast<int>(ring->num_vars()); }
    bool augmented() const { return H.has_value() && iota.has_value(); }

    /// AB^i, zero beyond the supplied range.
    FPModule piece(int i) const {
        if (i < 0 || i >= static_cast<int>(ab.size())) return FPModule::zero(ring);
        return ab[static_cast<std::size_t>(i)];
    }

    /// delta_i, the zero map when either end is absent.
    ModuleMap map(int i) const {
        if (i >= 0 && i < static_cast<int>(delta.size())) return delta[static_cast<std::size_t>(i)];
        return ModuleMap::zero(piece(i).generators(), piece(i + 1).generators());
    }
};

namespace detail {

inline bool maps_into(const std::vector<ModuleElement>& vs, const ModuleMap& P) {
    GroebnerBasis gb(P.target());
    for (const auto& c : P.columns()) gb.add(c);
    gb.complete();
    for (const auto& v : vs) {
        if (!gb.contains(v)) return false;
    }
    return true;
}

inline void check_map(const ModuleMap& f, const FPModule& src, const FPModule& tgt, const std::string& what) {
    if (!(f.source() == src.generators()) || !(f.target() == tgt.generators())) {
        throw InvalidInput(what + ": map does not match the generators of its source and target");
    }
    std::vector<ModuleElement> imgs;
    for (const auto& c : src.presentation().columns()) imgs.push_back(f.apply(c));
    if (!maps_into(imgs, tgt.presentation())) throw InvalidInput(what + ": map is not well defined on the quotient");
}

} // namespace detail

/// Structural checks: ring agreement, well-defined maps, delta o delta = 0, delta_0 o iota = 0.
inline void validate(const FiltrationDatum& D) {
    if (!D.ring) throw InvalidInput("filtration datum has no ring");
    if (D.ab.size() > static_cast<std::size_t>(D.rank()) + 1) {
        throw InvalidInput("filtration datum has more than r + 1 modules");
    }
    if (D.delta.size() + 1 != D.ab.size() && !(D.ab.empty() && D.delta.empty())) {
        throw InvalidInput("filtration datum needs exactly one map between consecutive modules");
    }
    for (const auto& M : D.ab) require_same_ring(M.ring(), D.ring, "filtration module");
    for (std::size_t i = 0; i < D.delta.size(); ++i) {
        detail::check_map(D.delta[i], D.ab[i], D.ab[i + 1], "delta_" + std::to_string(i));
    }
    for (std::size_t i = 0; i + 1 < D.delta.size(); ++i) {
        ModuleMap composite = D.delta[i + 1].after(D.delta[i]);
        if (!detail::maps_into(composite.columns(), D.ab[i + 2].presentation())) {
            throw InvalidInput("delta_" + std::to_string(i + 1) + " o delta_" + std::to_string(i) + " is not zero");
        }
    }
    if (D.H.has_value() != D.iota.has_value()) throw InvalidInput("augmentation needs both a module and a map");
    if (D.augmented()) {
        FPModule ab0 = D.piece(0);
        detail::check_map(*D.iota, *D.H, ab0, "augmentation");
        ModuleMap composite = D.map(0).after(*D.iota);
        if (!detail::maps_into(composite.columns(), D.piece(1).presentation())) {
            throw InvalidInput("delta_0 o augmentation is not zero");
        }
    }
    if (D.N) require_same_ring(D.N->ring(), D.ring, "homology module");
}

/// Cohomology H^0..H^r of the (non-augmented) complex.
inline std::vector<FPModule> ab_cohomology(const FiltrationDatum& D) {
    validate(D);
    std::vector<FPModule> out;
    for (int i = 0; i <= D.rank(); ++i) {
        FPModule here = D.piece(i);
        FPModule next = D.piece(i + 1);
        ModuleMap in = i == 0 ? ModuleMap::zero(GradedFreeModule{D.ring, {}}, here.generators()) : D.map(i - 1);
        out.push_back(homology(in, D.map(i), here.presentation(), next.presentation()).module);
    }
    return out;
}

/// Cohomology of the augmented complex at positions -1, 0, ..., r (index shifted by one).
inline std::vector<FPModule> augmented_cohomology(const FiltrationDatum& D) {
    validate(D);
    if (!D.augmented()) throw InvalidInput("datum has no augmentation");
    std::vector<FPModule> out;
    FPModule ab0 = D.piece(0);
    out.push_back(homology(ModuleMap::zero(GradedFreeModule{D.ring, {}}, D.H->generators()), *D.iota,
                           D.H->presentation(), ab0.presentation())
                      .module);
    for (int i = 0; i <= D.rank(); ++i) {
        FPModule here = D.piece(i);
        FPModule next = D.piece(i + 1);
        ModuleMap in = i == 0 ? *D.iota : D.map(i - 1);
        out.push_back(homology(in, D.map(i), here.presentation(), next.presentation()).module);
    }
    return out;
}

struct PieceCheck {
    int index = 0;
    CMReport cm;
    int expected_dimension = 0;
    bool pass = false;
};

struct CMFiltrationReport {
    std::vector<PieceCheck> pieces;
    bool pass() const {
        for (const auto& p : pieces) {
            if (!p.pass) return false;
        }
        return true;
    }
};

/// Each AB^i must be zero or Cohen-Macaulay of dimension r - i.
inline CMFiltrationReport cm_filtration_check(const FiltrationDatum& D) {
    CMFiltrationReport rep;
    for (int i = 0; i <= D.rank(); ++i) {
        PieceCheck pc;
        pc.index = i;
        pc.expected_dimension = D.rank() - i;
        pc.cm = is_cohen_macaulay(D.piece(i));
        pc.pass = pc.cm.status == CMStatus::zero ||
                  (pc.cm.is_cm() && pc.cm.dimension && *pc.cm.dimension == pc.expected_dimension);
        rep.pieces.push_back(pc);
    }
    return rep;
}

struct DualityEntry {
    int j = 0;
    BettiTable cohomology_betti;
    BettiTable ext_betti;
    std::string cohomology_hilbert;
    std::string ext_hilbert;
    bool betti_match = false;
    bool hilbert_match = false;
    bool pass() const { return betti_match && hilbert_match; }
};

struct ExtDualityReport {
    bool cm_filtration = false;
    std::vector<DualityEntry> entries;
    bool pass() const {
        if (!cm_filtration) return false;
        for (const auto& e : entries) {
            if (!e.pass()) return false;
        }
        return true;
    }
};

/// H^j(AB) against Ext^j(N, R) for every j.
inline ExtDualityReport verify_ext_duality(const FiltrationDatum& D) {
    if (!D.N) throw InvalidInput("datum has no homology module");
    ExtDualityReport rep;
    rep.cm_filtration = cm_filtration_check(D).pass();
    auto H = ab_cohomology(D);
    auto E = ext_modules(*D.N);
    for (int j = 0; j <= D.rank(); ++j) {
        DualityEntry e;
        e.j = j;
        const auto& h = H[static_cast<std::size_t>(j)];
        const auto& x = E[static_cast<std::size_t>(j)];
        e.cohomology_betti = betti_table(h);
        e.ext_betti = betti_table(x);
        HilbertSeries hh = h.hilbert_series(), hx = x.hilbert_series();
        e.cohomology_hilbert = hh.to_string();
        e.ext_hilbert = hx.to_string();
        e.betti_match = e.cohomology_betti == e.ext_betti;
        e.hilbert_match = hh == hx;
        rep.entries.push_back(e);
    }
    return rep;
}

struct PartialExactnessReport {
    std::vector<bool> vanishing;  ///< augmented cohomology zero at positions -1, 0, ..., r
    int j_exact = 0;
    int j_syzygy = 0;
    SyzygyOrder syzygy;
    bool pass() const { return j_exact == j_syzygy && syzygy.agree; }
};

inline PartialExactnessReport partial_exactness_vs_syzygy(const FiltrationDatum& D) {
    if (!D.augmented()) throw InvalidInput("datum has no augmentation");
    PartialExactnessReport rep;
    for (const auto& h : augmented_cohomology(D)) rep.vanishing.push_back(is_zero(h));
    // j is admissible when positions -1 .. j-2 all vanish
    int r = D.rank();
    rep.j_exact = 0;
    for (int j = 1; j <= r; ++j) {
        bool ok = true;
        for (int i = -1; i <= j - 2; ++i) ok = ok && rep.vanishing[static_cast<std::size_t>(i + 1)];
        if (ok) rep.j_exact = j;
    }
    rep.syzygy = syzygy_order(*D.H);
    rep.j_syzygy = rep.syzygy.order;
    return rep;
}

struct SyzygyGapReport {
    bool applicable = false;  ///< Poincare duality datum with j >= ceil(r/2)
    int j_syzygy = 0;
    int threshold = 0;
    bool pass = true;
};

/// On Poincare duality data a syzygy of order at least r/2 must be free.
inline SyzygyGapReport syzygy_gap_check(const FiltrationDatum& D) {
    SyzygyGapReport rep;
    int r = D.rank();
    rep.threshold = (r + 1) / 2;
    if (!D.poincare_duality || !D.H) return rep;
    rep.j_syzygy = syzygy_order(*D.H).order;
    rep.applicable = rep.j_syzygy >= rep.threshold;
    rep.pass = !rep.applicable || rep.j_syzygy == r;
    return rep;
}

struct TruncationReport {
    int index = 0;
    bool pass = false;
    std::string total;
    std::string parts;
};

/// Hilbert series additivity along 0 -> N_i -> N -> Q_i -> 0.
inline std::vector<TruncationReport> truncation_check(const FiltrationDatum& D) {
    std::vector<TruncationReport> out;
    if (!D.N) return out;
    HilbertSeries total = D.N->hilbert_series();
    for (const auto& t : D.truncations) {
        TruncationReport rep;
        rep.index = t.index;
        HilbertSeries sum = t.sub.hilbert_series() + t.quotient.hilbert_series();
        rep.total = total.to_string();
        rep.parts = sum.to_string();
        rep.pass = sum == total;
        out.push_back(rep);
    }
    return out;
}

/// Every presentation and map pushed along a ring map.
inline FiltrationDatum base_change(const FiltrationDatum& D, const RingMap& phi) {
    FiltrationDatum out;
    out.name = D.name;
    out.ring = phi.target;
    for (const auto& M : D.ab) out.ab.push_back(base_change(M, phi));
    for (const auto& f : D.delta) out.delta.push_back(phi.apply(f));
    if (D.H) out.H = base_change(*D.H, phi);
    if (D.iota) out.iota = phi.apply(*D.iota);
    if (D.N) out.N = base_change(*D.N, phi);
    out.poincare_duality = D.poincare_duality;
    for (const auto& t : D.truncations) out.truncations.push_back({t.index, base_change(t.sub, phi), base_change(t.quotient, phi)});
    out.assumptions = D.assumptions;
    return out;
}

} // namespace eqsyz
