#pragma once

#include <map>
#include <string>
#include <vector>

#include "group.hpp"

namespace eqsyz {

/// Signed permutation of a finite index set: (g . f)_{perm[v]} = sign[v] * (g . f_v).
struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<int> sign;

    static SignedPermutation identity(std::size_t n) {
        SignedPermutation p;
        for (std::size_t v = 0; v < n; ++v) {
            p.perm.push_back(v);
            p.sign.push_back(1);
        }
        return p;
    }

    /// this o inner
    SignedPermutation after(const SignedPermutation& inner) const {
        SignedPermutation p;
        for (std::size_t v = 0; v < inner.perm.size(); ++v) {
            p.perm.push_back(perm[inner.perm[v]]);
            p.sign.push_back(sign[inner.perm[v]] * inner.sign[v]);
        }
        return p;
    }

    friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
        return a.perm == b.perm && a.sign == b.sign;
    }
};

/// sum_v R_T e_v with a W-action combining the matrix action on coefficients and
/// a signed permutation of the summands, given per group generator.
class WEquivariantFreeModule {
public:
    WEquivariantFreeModule(GradedFreeModule F, const ReflectionGroupDatum& W, std::vector<SignedPermutation> on_generators)
        : F_(std::move(F)), W_(&W), gen_actions_(std::move(on_generators)) {
        require_same_ring(F_.ring, W.ring_T(), "equivariant module");
        if (gen_actions_.size() != W.generators().size()) {
            throw InvalidInput("one summand permutation per group generator required");
        }
        for (const auto& p : gen_actions_) {
            if (p.perm.size() != F_.rank() || p.sign.size() != F_.rank()) {
                throw InvalidInput("summand permutation has the wrong length");
            }
            std::vector<bool> hit(F_.rank(), false);
            for (std::size_t v = 0; v < F_.rank(); ++v) {
                if (p.perm[v] >= F_.rank() || hit[p.perm[v]]) throw InvalidInput("summand map is not a permutation");
                hit[p.perm[v]] = true;
                if (F_.degrees[p.perm[v]] != F_.degrees[v]) throw InvalidInput("summand permutation changes degrees");
                if (p.sign[v] != 1 && p.sign[v] != -1) throw InvalidInput("summand signs must be +1 or -1");
            }
        }
        close();
    }

    /// Permutation action of W on the summands, no signs.
    static WEquivariantFreeModule permutation(GradedFreeModule F, const ReflectionGroupDatum& W,
                                              const std::vector<std::vector<std::size_t>>& perms) {
        std::vector<SignedPermutation> acts;
        for (const auto& p : perms) acts.push_back({p, std::vector<int>(p.size(), 1)});
        return WEquivariantFreeModule(std::move(F), W, std::move(acts));
    }

    /// Every summand fixed.
    static WEquivariantFreeModule trivial(GradedFreeModule F, const ReflectionGroupDatum& W) {
        std::vector<SignedPermutation> acts(W.generators().size(), SignedPermutation::identity(F.rank()));
        return WEquivariantFreeModule(std::move(F), W, std::move(acts));
    }

    const GradedFreeModule& module() const { return F_; }
    const ReflectionGroupDatum& group() const { return *W_; }
    const std::vector<SignedPermutation>& element_actions() const { return actions_; }

    ModuleElement act(std::size_t element, const ModuleElement& v) const {
        const auto& w = W_->elements()[element];
        const auto& p = actions_[element];
        auto col = v.to_column(F_.ring, F_.rank());
        std::vector<Polynomial> out(F_.rank(), Polynomial(F_.ring));
        for (std::size_t i = 0; i < F_.rank(); ++i) {
            out[p.perm[i]] = eqsyz::act(w, col[i]) * Rational(p.sign[i]);
        }
        return ModuleElement::from_column(out);
    }

    ModuleElement reynolds(const ModuleElement& v) const {
        ModuleElement sum;
        for (std::size_t k = 0; k < W_->order(); ++k) sum += act(k, v);
        return sum.scaled(Rational(1) / Rational(static_cast<long>(W_->order())));
    }

    bool is_invariant(const ModuleElement& v) const {
        for (std::size_t k = 0; k < W_->generators().size(); ++k) {
            if (!(act_generator(k, v) == v)) return false;
        }
        return true;
    }

    /// Whether the submodule spanned by `gens` is mapped into itself.
    bool is_stable(const std::vector<ModuleElement>& gens) const {
        GroebnerBasis gb(F_);
        for (const auto& g : gens) gb.add(g);
        gb.complete();
        for (std::size_t k = 0; k < W_->generators().size(); ++k) {
            for (const auto& g : gens) {
                if (!gb.contains(act_generator(k, g))) return false;
            }
        }
        return true;
    }

private:
    ModuleElement act_generator(std::size_t k, const ModuleElement& v) const {
        const auto& w = W_->generators()[k];
        const auto& p = gen_actions_[k];
        auto col = v.to_column(F_.ring, F_.rank());
        std::vector<Polynomial> out(F_.rank(), Polynomial(F_.ring));
        for (std::size_t i = 0; i < F_.rank(); ++i) out[p.perm[i]] = eqsyz::act(w, col[i]) * Rational(p.sign[i]);
        return ModuleElement::from_column(out);
    }

    /// Extends the generator actions along the group closure, checking that
    /// each group element receives a single summand action.
    void close() {
        const auto& elems = W_->elements();
        std::map<QMatrix, std::size_t, detail::MatrixLess> index;
        for (std::size_t k = 0; k < elems.size(); ++k) index[elems[k]] = k;
        std::vector<std::optional<SignedPermutation>> acts(elems.size());
        acts[0] = SignedPermutation::identity(F_.rank());
        std::vector<std::size_t> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            std::size_t k = queue[q];
            for (std::size_t g = 0; g < W_->generators().size(); ++g) {
                std::size_t h = index.at(W_->generators()[g] * elems[k]);
                SignedPermutation p = gen_actions_[g].after(*acts[k]);
                if (!acts[h]) {
                    acts[h] = p;
                    queue.push_back(h);
                } else if (!(*acts[h] == p)) {
                    throw PreconditionFailed("summand action is not compatible with the group relations");
                }
            }
        }
        for (auto& a : acts) actions_.push_back(*a);
    }

    GradedFreeModule F_;
    const ReflectionGroupDatum* W_;
    std::vector<SignedPermutation> gen_actions_;
    std::vector<SignedPermutation> actions_;
};

/// The R_G-module of invariants together with representing tuples over R_T.
struct InvariantModule {
    FPModule module;                          ///< over R_G
    std::vector<ModuleElement> generators;    ///< invariant tuples in F, one per generator of `module`
    std::vector<ModuleElement> relation_span; ///< invariant tuples spanning the invariant relations
};

/// Invariants of (U + N) / N for W-stable submodules U and N of F (N inside U);
/// empty U means all of F. Generators are Reynolds images of (generator x coinvariant
/// basis element), relations come from syzygies after restricting scalars.
inline InvariantModule module_invariants(const WEquivariantFreeModule& M, const std::vector<ModuleElement>& submodule,
                                         const std::vector<ModuleElement>& relations = {}) {
    const auto& F = M.module();
    const auto& W = M.group();
    FreeExtension ext = free_extension(W);
    std::vector<ModuleElement> U = submodule;
    if (U.empty()) {
        for (std::size_t v = 0; v < F.rank(); ++v) U.push_back(ModuleElement::unit(v));
    }
    if (!M.is_stable(U)) throw PreconditionFailed("submodule is not stable under the group");
    if (!relations.empty() && !M.is_stable(relations)) throw PreconditionFailed("relations are not stable under the group");

    auto invariant_span = [&](const std::vector<ModuleElement>& gens) {
        std::vector<ModuleElement> out;
        for (const auto& g : gens) {
            for (const auto& b : ext.basis()) {
                ModuleElement bg;
                bg.add_scaled(b, g);
                ModuleElement r = M.reynolds(bg);
                if (!r.is_zero()) out.push_back(r);
            }
        }
        return out;
    };
    std::vector<ModuleElement> gens = invariant_span(U);
    std::vector<ModuleElement> rels = invariant_span(relations);

    GradedFreeModule FG = restrict_free(F, ext);
    auto to_map = [&](const std::vector<ModuleElement>& vs) {
        std::vector<int> degs;
        std::vector<ModuleElement> cols;
        for (const auto& v : vs) {
            cols.push_back(restrict_element(v, F, ext));
            degs.push_back(*v.degree_in(F));
        }
        return ModuleMap(GradedFreeModule{ext.base(), degs}, FG, std::move(cols));
    };
    PrunedModule pm = subquotient(to_map(gens), to_map(rels));
    InvariantModule out;
    out.module = pm.module;
    for (std::size_t k : pm.kept) out.generators.push_back(gens[k]);
    out.relation_span = rels;
    return out;
}

/// Element of the invariant module, in generator coordinates over R_G, representing
/// the invariant tuple v (nullopt if v is not in the span).
inline std::optional<ModuleElement> invariant_coordinates(const InvariantModule& inv, const ModuleElement& v,
                                                          const GradedFreeModule& F, const FreeExtension& ext) {
    GradedFreeModule FG = restrict_free(F, ext);
    std::vector<ModuleElement> span;
    for (const auto& g : inv.generators) span.push_back(restrict_element(g, F, ext));
    for (const auto& r : inv.relation_span) span.push_back(restrict_element(r, F, ext));
    auto c = lift(restrict_element(v, F, ext), span, FG);
    if (!c) return std::nullopt;
    c->resize(inv.generators.size());
    return ModuleElement::from_column(*c);
}

/// Molien-type series of the invariants of a free equivariant module:
/// (1/|W|) sum_w [sum over summands fixed by w of sign * q^deg] / det(1 - q^2 w).
inline std::vector<Rational> equivariant_molien(const WEquivariantFreeModule& M, int lo, int hi) {
    const auto& W = M.group();
    int n = (hi - lo) / 2 + 2;
    std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 0; k < W.order(); ++k) {
        auto s = invert_series(W.elements()[k].reversed_characteristic_polynomial(), n);
        const auto& p = M.element_actions()[k];
        for (std::size_t v = 0; v < p.perm.size(); ++v) {
            if (p.perm[v] != v) continue;
            int d0 = M.module().degrees[v];
            for (int j = 0; j <= n; ++j) {
                int deg = d0 + 2 * j;
                if (deg < lo || deg > hi) continue;
                out[static_cast<std::size_t>(deg - lo)] += Rational(p.sign[v]) * s[static_cast<std::size_t>(j)];
            }
        }
    }
    for (auto& x : out) x /= Rational(static_cast<long>(W.order()));
    return out;
}

} // namespace eqsyz
