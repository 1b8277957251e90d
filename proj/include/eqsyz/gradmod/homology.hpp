#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "module.hpp"

namespace eqsyz {

/// Minimal homogeneous generating set of the submodule of F spanned by `gens`,
/// chosen among the given generators (lowest degrees first).
inline std::vector<ModuleElement> minimize_generators(const GradedFreeModule& F, std::vector<ModuleElement> gens) {
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        auto d = gens[k].degree_in(F);
        if (d) order.push_back({*d, k});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    GroebnerBasis gb(F);
    std::vector<ModuleElement> out;
    for (const auto& [d, k] : order) {
        gb.complete_up_to(d);
        if (gb.contains(gens[k])) continue;
        gb.add(gens[k]);
        out.push_back(std::move(gens[k]));
    }
    return out;
}

/// Map whose image is the kernel of `A`, with a minimal set of generators.
inline ModuleMap syzygies(const ModuleMap& A) {
    const auto& S = A.source();
    const auto& T = A.target();
    std::size_t m = T.rank();
    GradedFreeModule big = T + S;
    std::vector<ModuleElement> rows;
    for (std::size_t j = 0; j < S.rank(); ++j) {
        rows.push_back(A.columns()[j] + ModuleElement::unit(m + j));
    }
    std::vector<ModuleElement> kernel;
    for (const auto& g : groebner_basis(big, rows)) {
        if (g.leading().comp >= m) kernel.push_back(g.slice(m, m + S.rank()));
    }
    kernel = minimize_generators(S, std::move(kernel));
    std::vector<int> degs;
    for (const auto& k : kernel) degs.push_back(*k.degree_in(S));
    return ModuleMap(GradedFreeModule{S.ring, degs}, S, std::move(kernel));
}

/// A presentation together with the images of the original generators.
struct PrunedModule {
    FPModule module;
    /// express[i] = image of original generator i in the new free cover.
    std::vector<ModuleElement> express;
    /// New generator k is the image of original generator kept[k].
    std::vector<std::size_t> kept;
};

/// Minimal presentation: removes generators that are killed by a relation with
/// a unit entry, then minimizes the relations.
inline PrunedModule prune(const FPModule& M) {
    const auto& F = M.generators();
    std::size_t n = F.rank();
    std::vector<ModuleElement> cols = M.presentation().columns();
    std::vector<ModuleElement> express;
    for (std::size_t i = 0; i < n; ++i) express.push_back(ModuleElement::unit(i));
    std::vector<bool> alive(n, true);

    while (true) {
        std::size_t pj = cols.size(), pi = n;
        Rational c;
        for (std::size_t j = 0; j < cols.size() && pj == cols.size(); ++j) {
            for (const auto& t : cols[j].terms()) {
                if (t.mono.is_one()) {
                    pj = j;
                    pi = t.comp;
                    c = t.coeff;
                    break;
                }
            }
        }
        if (pj == cols.size()) break;
        ModuleElement pivot = cols[pj];
        auto eliminate = [&](ModuleElement& v) {
            Polynomial p = v.component(pi, F.ring);
            if (p.is_zero()) return;
            p *= Rational(-1) / c;
            v.add_scaled(p, pivot);
        };
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pj));
        for (auto& col : cols) eliminate(col);
        for (auto& e : express) eliminate(e);
        alive[pi] = false;
    }

    std::vector<std::size_t> renumber(n, 0);
    std::vector<std::size_t> kept;
    std::vector<int> degs;
    for (std::size_t i = 0, k = 0; i < n; ++i) {
        if (!alive[i]) continue;
        renumber[i] = k++;
        degs.push_back(F.degrees[i]);
        kept.push_back(i);
    }
    auto remap = [&](const ModuleElement& v) {
        std::vector<VecTerm> ts;
        for (const auto& t : v.terms()) ts.push_back({renumber[t.comp], t.mono, t.coeff});
        return ModuleElement::from_sorted_terms(std::move(ts));
    };
    GradedFreeModule G{F.ring, degs};
    std::vector<ModuleElement> rels;
    for (const auto& col : cols) {
        if (!col.is_zero()) rels.push_back(remap(col));
    }
    rels = minimize_generators(G, std::move(rels));
    PrunedModule out{FPModule::quotient(G, rels), {}, std::move(kept)};
    for (const auto& e : express) out.express.push_back(remap(e));
    return out;
}

inline FPModule minimal_presentation(const FPModule& M) { return prune(M).module; }

inline bool is_zero(const FPModule& M) { return prune(M).module.generators().rank() == 0; }

/// (im K + im Q) / im Q for maps K: F' -> F, Q: F'' -> F, presented on the
/// generators of F' (before pruning).
inline PrunedModule subquotient(const ModuleMap& K, const ModuleMap& Q) {
    ModuleMap both = K.hstack(Q);
    ModuleMap syz = syzygies(both);
    std::size_t k = K.source().rank();
    std::vector<ModuleElement> rels;
    for (const auto& c : syz.columns()) {
        auto part = c.slice(0, k);
        if (!part.is_zero()) rels.push_back(std::move(part));
    }
    return prune(FPModule::quotient(K.source(), rels));
}

/// Generators of {v in F_N : B v lies in the image of P_L}.
inline ModuleMap kernel_into(const ModuleMap& B, const ModuleMap& P_L) {
    ModuleMap syz = syzygies(B.hstack(P_L));
    std::size_t n = B.source().rank();
    std::vector<ModuleElement> gens;
    for (const auto& c : syz.columns()) {
        auto part = c.slice(0, n);
        if (!part.is_zero()) gens.push_back(std::move(part));
    }
    gens = minimize_generators(B.source(), std::move(gens));
    std::vector<int> degs;
    for (const auto& g : gens) degs.push_back(*g.degree_in(B.source()));
    return ModuleMap(GradedFreeModule{B.ring(), degs}, B.source(), std::move(gens));
}

/// Homology at N of  M --A--> N --B--> L  where N = coker P_N and L = coker P_L;
/// A and B are maps between the free covers.
inline PrunedModule homology(const ModuleMap& A, const ModuleMap& B, const ModuleMap& P_N, const ModuleMap& P_L) {
    return subquotient(kernel_into(B, P_L), A.hstack(P_N));
}

/// Minimal graded free resolution; its length is at most the number of variables.
inline Resolution minimal_resolution(const FPModule& M) {
    FPModule P = minimal_presentation(M);
    Resolution res;
    res.modules.push_back(P.generators());
    if (P.generators().rank() == 0) return res;
    ModuleMap current = P.presentation();
    std::size_t limit = P.ring()->num_vars() + 1;
    while (current.source().rank() > 0) {
        res.modules.push_back(current.source());
        res.maps.push_back(current);
        if (res.maps.size() > limit) throw Error("resolution exceeded the Hilbert syzygy bound");
        current = syzygies(current);
    }
    return res;
}

inline BettiTable betti_table(const FPModule& M) { return minimal_resolution(M).betti(); }

/// Betti table plus Hilbert series: the isomorphism surrogate used throughout.
inline bool same_betti_and_hilbert(const FPModule& a, const FPModule& b) {
    return betti_table(a) == betti_table(b) && a.hilbert_series() == b.hilbert_series();
}

/// Cokernel of a map whose target is the free cover of another module.
inline FPModule cokernel(const ModuleMap& A, const ModuleMap& P_target) {
    return minimal_presentation(FPModule(A.hstack(P_target)));
}

/// Image of the map F -> coker(P) given by `A`, presented on the source generators.
inline FPModule image(const ModuleMap& A, const ModuleMap& P_target) { return subquotient(A, P_target).module; }

/// Coefficients c with sum c_i * gens[i] = v, if v lies in the span.
inline std::optional<std::vector<Polynomial>> lift(const ModuleElement& v, const std::vector<ModuleElement>& gens,
                                                   const GradedFreeModule& F) {
    std::vector<Polynomial> zero(gens.size(), Polynomial(F.ring));
    auto dv = v.degree_in(F);
    if (!dv) return zero;
    std::vector<int> degs;
    std::vector<ModuleElement> cols;
    for (const auto& g : gens) {
        auto d = g.degree_in(F);
        degs.push_back(d ? *d : *dv);
        cols.push_back(g);
    }
    degs.push_back(*dv);
    cols.push_back(v);
    ModuleMap A(GradedFreeModule{F.ring, degs}, F, std::move(cols));
    std::size_t last = gens.size();
    ModuleMap syz = syzygies(A);
    for (const auto& s : syz.columns()) {
        Polynomial c = s.component(last, F.ring);
        if (c.is_zero() || !c.is_constant()) continue;
        Rational scale = Rational(-1) / c.constant_term();
        auto col = s.to_column(F.ring, last + 1);
        col.pop_back();
        for (auto& p : col) p *= scale;
        return col;
    }
    return std::nullopt;
}

} // namespace eqsyz
