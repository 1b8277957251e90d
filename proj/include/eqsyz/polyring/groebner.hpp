#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "free_module.hpp"

namespace eqsyz {

/// Pair selection for Buchberger's algorithm.
enum class Selection {
    normal, ///< smallest (degree, lcm) first
    sugar,  ///< smallest (sugar degree, lcm) first
};

struct GroebnerOptions {
    Selection selection = Selection::normal;
};

/// Incremental Buchberger completion for homogeneous submodules of a graded
/// free module, position-over-term order with earlier components greater.
class GroebnerBasis {
public:
    explicit GroebnerBasis(GradedFreeModule F, GroebnerOptions opts = {})
        : F_(std::move(F)), opts_(opts) {}

    const GradedFreeModule& module() const { return F_; }
    const std::vector<ModuleElement>& elements() const { return basis_; }

    /// Adds a generator; the basis is complete again only after `complete()`.
    void add(const ModuleElement& v) {
        auto deg = v.degree_in(F_);
        if (!deg) return;
        ModuleElement r = normal_form(v);
        if (r.is_zero()) return;
        insert(r.monic(), *deg);
    }

    void add_all(const std::vector<ModuleElement>& vs) {
        for (const auto& v : vs) {
            if (v.is_zero()) continue;
            v.degree_in(F_);
            insert_raw(v);
        }
    }

    /// Runs Buchberger's algorithm until every S-pair reduces to zero.
    void complete() { complete_up_to(std::numeric_limits<int>::max()); }

    /// Processes only S-pairs of degree <= `max_degree`; the result is a Groebner basis
    /// in all degrees up to `max_degree` (homogeneous input).
    void complete_up_to(int max_degree) {
        while (!pending_.empty()) {
            std::size_t best = select_pair();
            if (pending_[best].degree > max_degree) {
                // sugar order may not put the lowest degree first
                best = lowest_degree_pair();
                if (pending_[best].degree > max_degree) break;
            }
            Pair p = pending_[best];
            pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(best));
            pending_keys_.erase({p.i, p.j});
            if (skip_pair(p)) continue;
            ModuleElement s = s_vector(p);
            ModuleElement r = normal_form(s);
            if (!r.is_zero()) insert(r.monic(), p.sugar);
        }
    }

    /// Fully reduced remainder of `v`: no term is divisible by a leading term of the basis.
    ModuleElement normal_form(const ModuleElement& v) const {
        ModuleElement rest = v;
        std::vector<VecTerm> done;
        while (!rest.is_zero()) {
            const auto& ts = rest.terms();
            std::size_t k = 0;
            const ModuleElement* divisor = nullptr;
            for (; k < ts.size(); ++k) {
                divisor = find_divisor(ts[k].comp, ts[k].mono);
                if (divisor) break;
            }
            for (std::size_t q = 0; q < k; ++q) done.push_back(ts[q]);
            if (!divisor) break;
            VecTerm head = ts[k];
            rest = drop_prefix(rest, k);
            const VecTerm& lt = divisor->leading();
            rest.axpy(-head.coeff / lt.coeff, head.mono / lt.mono, *divisor);
        }
        return assemble(std::move(done));
    }

    bool contains(const ModuleElement& v) const { return normal_form(v).is_zero(); }

    /// The reduced Groebner basis (monic, minimal, tail-reduced), sorted by leading term.
    std::vector<ModuleElement> reduced() const {
        std::vector<std::size_t> keep;
        for (std::size_t a = 0; a < basis_.size(); ++a) {
            const VecTerm& la = basis_[a].leading();
            bool redundant = false;
            for (std::size_t b = 0; b < basis_.size() && !redundant; ++b) {
                if (a == b) continue;
                const VecTerm& lb = basis_[b].leading();
                if (lb.comp != la.comp || !lb.mono.divides(la.mono)) continue;
                redundant = !(lb.mono == la.mono) || b < a;
            }
            if (!redundant) keep.push_back(a);
        }
        GroebnerBasis minimal(F_, opts_);
        for (std::size_t a : keep) minimal.basis_.push_back(basis_[a]);
        std::vector<ModuleElement> out;
        for (std::size_t idx = 0; idx < minimal.basis_.size(); ++idx) {
            const ModuleElement& g = minimal.basis_[idx];
            ModuleElement tail = drop_prefix(g, 1);
            ModuleElement head;
            head.axpy(g.leading().coeff, g.leading().mono, ModuleElement::unit(g.leading().comp));
            out.push_back((head + minimal.normal_form(tail)).monic());
        }
        std::sort(out.begin(), out.end(), [](const ModuleElement& a, const ModuleElement& b) {
            const auto& x = a.leading();
            const auto& y = b.leading();
            return compare_vec_terms(x.comp, x.mono, y.comp, y.mono) > 0;
        });
        return out;
    }

private:
    struct Pair {
        std::size_t i, j;
        std::size_t comp;
        Monomial lcm;
        int degree;
        int sugar;
    };

    static ModuleElement drop_prefix(const ModuleElement& v, std::size_t k) {
        std::vector<VecTerm> ts(v.terms().begin() + static_cast<std::ptrdiff_t>(k), v.terms().end());
        return assemble(std::move(ts));
    }

    static ModuleElement assemble(std::vector<VecTerm> sorted_terms) {
        return ModuleElement::from_sorted_terms(std::move(sorted_terms));
    }

    const ModuleElement* find_divisor(std::size_t comp, const Monomial& m) const {
        for (const auto& g : basis_) {
            const VecTerm& lt = g.leading();
            if (lt.comp == comp && lt.mono.divides(m)) return &g;
        }
        return nullptr;
    }

    void insert_raw(const ModuleElement& v) {
        auto deg = v.degree_in(F_);
        insert(v.monic(), *deg);
    }

    void insert(ModuleElement g, int sugar) {
        std::size_t n = basis_.size();
        const VecTerm& lt = g.leading();
        for (std::size_t i = 0; i < n; ++i) {
            const VecTerm& li = basis_[i].leading();
            if (li.comp != lt.comp) continue;
            Monomial l = F_.ring->lcm(li.mono, lt.mono);
            int deg = l.degree + F_.degrees[lt.comp];
            int s = std::max(sugars_[i] + (l.degree - li.mono.degree), sugar + (l.degree - lt.mono.degree));
            pending_.push_back({i, n, lt.comp, l, deg, s});
            pending_keys_.insert({i, n});
        }
        basis_.push_back(std::move(g));
        sugars_.push_back(sugar);
    }

    std::size_t select_pair() const {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending_.size(); ++k) {
            if (better(pending_[k], pending_[best])) best = k;
        }
        return best;
    }

    std::size_t lowest_degree_pair() const {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending_.size(); ++k) {
            if (pending_[k].degree < pending_[best].degree) best = k;
        }
        return best;
    }

    bool better(const Pair& a, const Pair& b) const {
        int ka = opts_.selection == Selection::sugar ? a.sugar : a.degree;
        int kb = opts_.selection == Selection::sugar ? b.sugar : b.degree;
        if (ka != kb) return ka < kb;
        int c = compare_vec_terms(a.comp, a.lcm, b.comp, b.lcm);
        if (c != 0) return c < 0;
        return std::pair(a.j, a.i) < std::pair(b.j, b.i);
    }

    bool is_pending(std::size_t a, std::size_t b) const {
        if (a > b) std::swap(a, b);
        return pending_keys_.count({a, b}) > 0;
    }

    bool skip_pair(const Pair& p) const {
        const Monomial& mi = basis_[p.i].leading().mono;
        const Monomial& mj = basis_[p.j].leading().mono;
        // Product criterion only holds for ideals (rank one).
        if (F_.rank() == 1 && mi.coprime(mj)) return true;
        // Chain criterion.
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (k == p.i || k == p.j) continue;
            const VecTerm& lk = basis_[k].leading();
            if (lk.comp != p.comp || !lk.mono.divides(p.lcm)) continue;
            if (!is_pending(p.i, k) && !is_pending(p.j, k)) return true;
        }
        return false;
    }

    ModuleElement s_vector(const Pair& p) const {
        const ModuleElement& a = basis_[p.i];
        const ModuleElement& b = basis_[p.j];
        ModuleElement s = a.mul_term(p.lcm / a.leading().mono, Rational(1) / a.leading().coeff);
        s.axpy(Rational(-1) / b.leading().coeff, p.lcm / b.leading().mono, b);
        return s;
    }

    GradedFreeModule F_;
    GroebnerOptions opts_;
    std::vector<ModuleElement> basis_;
    std::vector<int> sugars_;
    std::vector<Pair> pending_;
    std::set<std::pair<std::size_t, std::size_t>> pending_keys_;
};

/// Reduced Groebner basis of the submodule generated by `gens`.
inline std::vector<ModuleElement> groebner_basis(const GradedFreeModule& F,
                                                 const std::vector<ModuleElement>& gens,
                                                 GroebnerOptions opts = {}) {
    GroebnerBasis gb(F, opts);
    for (const auto& g : gens) gb.add(g);
    gb.complete();
    return gb.reduced();
}

/// Normal form with respect to a Groebner basis `basis` of a submodule of `F`.
inline ModuleElement normal_form(const GradedFreeModule& F, const ModuleElement& v,
                                 const std::vector<ModuleElement>& basis) {
    GroebnerBasis gb(F);
    gb.add_all(basis);
    return gb.normal_form(v);
}

/// Ideal convenience wrappers (rank-one free module generated in degree 0).
inline std::vector<Polynomial> groebner_basis(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                              GroebnerOptions opts = {}) {
    GradedFreeModule R{ring, {0}};
    std::vector<ModuleElement> vs;
    for (const auto& g : gens) {
        require_same_ring(ring, g.ring(), "groebner_basis");
        g.degree();
        vs.push_back(ModuleElement::from_polynomial(0, g));
    }
    std::vector<Polynomial> out;
    for (const auto& v : groebner_basis(R, vs, opts)) out.push_back(v.component(0, ring));
    return out;
}

inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
    const RingPtr& ring = f.ring();
    GradedFreeModule R{ring, {0}};
    std::vector<ModuleElement> vs;
    for (const auto& g : basis) vs.push_back(ModuleElement::from_polynomial(0, g));
    return normal_form(R, ModuleElement::from_polynomial(0, f), vs).component(0, ring);
}

} // namespace eqsyz
