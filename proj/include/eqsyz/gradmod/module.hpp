#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "../polyring/hilbert.hpp"

namespace eqsyz {

/// Degree-preserving map between graded free modules. Column j is the image of
/// source generator j, so entry (i, j) is zero or homogeneous of degree
/// src_deg(j) - tgt_deg(i).
class ModuleMap {
public:
    ModuleMap() = default;

    ModuleMap(GradedFreeModule source, GradedFreeModule target, std::vector<ModuleElement> columns)
        : source_(std::move(source)), target_(std::move(target)), columns_(std::move(columns)) {
        require_same_ring(source_.ring, target_.ring, "module map");
        if (columns_.size() != source_.rank()) {
            throw InvalidInput("module map: expected " + std::to_string(source_.rank()) + " columns, got " +
                               std::to_string(columns_.size()));
        }
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            auto d = columns_[j].degree_in(target_);
            if (d && *d != source_.degrees[j]) {
                throw NotHomogeneous("module map: column " + std::to_string(j) + " has degree " +
                                     std::to_string(*d) + " but its source generator has degree " +
                                     std::to_string(source_.degrees[j]));
            }
        }
    }

    /// From a dense target-rank x source-rank matrix of polynomials.
    static ModuleMap from_matrix(GradedFreeModule source, GradedFreeModule target,
                                 const std::vector<std::vector<Polynomial>>& rows) {
        if (rows.size() != target.rank()) throw InvalidInput("module map: row count differs from target rank");
        std::vector<ModuleElement> cols;
        for (std::size_t j = 0; j < source.rank(); ++j) {
            std::vector<Polynomial> col;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != source.rank()) {
                    throw InvalidInput("module map: row length differs from source rank");
                }
                require_same_ring(rows[i][j].ring() ? rows[i][j].ring() : target.ring, target.ring, "module map");
                col.push_back(rows[i][j]);
            }
            cols.push_back(ModuleElement::from_column(col));
        }
        return ModuleMap(std::move(source), std::move(target), std::move(cols));
    }

    static ModuleMap zero(GradedFreeModule source, GradedFreeModule target) {
        std::vector<ModuleElement> cols(source.rank());
        return ModuleMap(std::move(source), std::move(target), std::move(cols));
    }

    static ModuleMap identity(const GradedFreeModule& F) {
        std::vector<ModuleElement> cols;
        for (std::size_t j = 0; j < F.rank(); ++j) cols.push_back(ModuleElement::unit(j));
        return ModuleMap(F, F, std::move(cols));
    }

    const GradedFreeModule& source() const { return source_; }
    const GradedFreeModule& target() const { return target_; }
    const std::vector<ModuleElement>& columns() const { return columns_; }
    const RingPtr& ring() const { return target_.ring; }

    Polynomial entry(std::size_t i, std::size_t j) const { return columns_[j].component(i, ring()); }

    std::vector<std::vector<Polynomial>> matrix() const {
        std::vector<std::vector<Polynomial>> rows(target_.rank(), std::vector<Polynomial>(source_.rank()));
        for (std::size_t j = 0; j < source_.rank(); ++j) {
            auto col = columns_[j].to_column(ring(), target_.rank());
            for (std::size_t i = 0; i < target_.rank(); ++i) rows[i][j] = std::move(col[i]);
        }
        return rows;
    }

    bool is_zero() const {
        for (const auto& c : columns_) {
            if (!c.is_zero()) return false;
        }
        return true;
    }

    /// Image of an element of the source.
    ModuleElement apply(const ModuleElement& v) const {
        ModuleElement out;
        for (const auto& t : v.terms()) out.axpy(t.coeff, t.mono, columns_.at(t.comp));
        return out;
    }

    /// this o inner  (inner: X -> source)
    ModuleMap after(const ModuleMap& inner) const {
        if (!(inner.target() == source_)) throw InvalidInput("composition: module mismatch");
        std::vector<ModuleElement> cols;
        for (const auto& c : inner.columns()) cols.push_back(apply(c));
        return ModuleMap(inner.source(), target_, std::move(cols));
    }

    /// Hom(-, R) of this map: target* -> source*.
    ModuleMap transpose() const {
        auto rows = matrix();
        std::vector<std::vector<Polynomial>> t(source_.rank(), std::vector<Polynomial>(target_.rank()));
        for (std::size_t i = 0; i < target_.rank(); ++i) {
            for (std::size_t j = 0; j < source_.rank(); ++j) t[j][i] = rows[i][j];
        }
        return from_matrix(target_.dual(), source_.dual(), t);
    }

    /// [this | other] with a common target.
    ModuleMap hstack(const ModuleMap& other) const {
        if (!(other.target() == target_)) throw InvalidInput("hstack: targets differ");
        std::vector<ModuleElement> cols = columns_;
        cols.insert(cols.end(), other.columns().begin(), other.columns().end());
        return ModuleMap(source_ + other.source(), target_, std::move(cols));
    }

    /// Same matrix with every generator degree raised by k on both sides.
    ModuleMap shifted(int k) const { return ModuleMap(source_.shifted(k), target_.shifted(k), columns_); }

    /// Substitutes entries through `f`, which must preserve degrees.
    template <class F>
    ModuleMap map_entries(const RingPtr& ring, F&& f) const {
        auto rows = matrix();
        for (auto& r : rows) {
            for (auto& e : r) e = f(e);
        }
        return from_matrix(GradedFreeModule{ring, source_.degrees}, GradedFreeModule{ring, target_.degrees}, rows);
    }

    std::string to_string() const {
        std::ostringstream os;
        auto rows = matrix();
        os << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) os << "; ";
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                if (j) os << ", ";
                os << rows[i][j].to_string();
            }
        }
        os << "]";
        return os.str();
    }

private:
    GradedFreeModule source_;
    GradedFreeModule target_;
    std::vector<ModuleElement> columns_;
};

/// Finitely presented graded module: the cokernel of `presentation`.
class FPModule {
public:
    FPModule() = default;
    explicit FPModule(ModuleMap presentation) : presentation_(std::move(presentation)) {}

    static FPModule free(const GradedFreeModule& F) {
        return FPModule(ModuleMap::zero(GradedFreeModule{F.ring, {}}, F));
    }

    static FPModule zero(const RingPtr& ring) { return free(GradedFreeModule{ring, {}}); }

    /// Quotient of a free module by the submodule generated by `relations`.
    static FPModule quotient(const GradedFreeModule& F, const std::vector<ModuleElement>& relations) {
        std::vector<int> degs;
        std::vector<ModuleElement> cols;
        for (const auto& r : relations) {
            auto d = r.degree_in(F);
            if (!d) continue;
            degs.push_back(*d);
            cols.push_back(r);
        }
        return FPModule(ModuleMap(GradedFreeModule{F.ring, degs}, F, std::move(cols)));
    }

    const ModuleMap& presentation() const { return presentation_; }
    const GradedFreeModule& generators() const { return presentation_.target(); }
    const GradedFreeModule& relations() const { return presentation_.source(); }
    const RingPtr& ring() const { return presentation_.ring(); }

    /// Every degree raised by k: M(-k) in the usual notation.
    FPModule shifted(int k) const { return FPModule(presentation_.shifted(k)); }

    HilbertSeries hilbert_series() const { return eqsyz::hilbert_series(generators(), presentation_.columns()); }

private:
    ModuleMap presentation_;
};

/// Direct sum of two modules over the same ring.
inline FPModule direct_sum(const FPModule& a, const FPModule& b) {
    const auto& pa = a.presentation();
    const auto& pb = b.presentation();
    std::vector<ModuleElement> cols = pa.columns();
    std::size_t off = pa.target().rank();
    for (const auto& c : pb.columns()) cols.push_back(c.shifted_components(off));
    return FPModule(ModuleMap(pa.source() + pb.source(), pa.target() + pb.target(), std::move(cols)));
}

/// (homological index, internal degree) -> rank
using BettiTable = std::map<std::pair<int, int>, int>;

/// Free resolution ... -> F_2 -> F_1 -> F_0 (-> M). `maps[k]` is F_{k+1} -> F_k.
struct Resolution {
    std::vector<GradedFreeModule> modules;
    std::vector<ModuleMap> maps;

    /// Index of the last nonzero free module (0 for a free module, -1 for zero).
    int length() const {
        for (std::size_t k = modules.size(); k-- > 0;) {
            if (modules[k].rank() > 0) return static_cast<int>(k);
        }
        return -1;
    }

    BettiTable betti() const {
        BettiTable t;
        for (std::size_t k = 0; k < modules.size(); ++k) {
            for (int d : modules[k].degrees) ++t[{static_cast<int>(k), d}];
        }
        return t;
    }
};

inline BettiTable shift_betti(const BettiTable& t, int k) {
    BettiTable out;
    for (const auto& [key, n] : t) out[{key.first, key.second + k}] = n;
    return out;
}

/// Aligned text grid: rows are internal degrees, columns homological positions.
inline std::string betti_to_string(const BettiTable& t) {
    if (t.empty()) return "(zero)\n";
    int maxk = 0, lo = t.begin()->first.second, hi = lo;
    for (const auto& [key, n] : t) {
        maxk = std::max(maxk, key.first);
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
    }
    std::ostringstream os;
    os << "deg\\i";
    for (int k = 0; k <= maxk; ++k) os << "\t" << k;
    os << "\n";
    for (int d = lo; d <= hi; ++d) {
        bool any = false;
        for (int k = 0; k <= maxk; ++k) any = any || t.count({k, d});
        if (!any) continue;
        os << d;
        for (int k = 0; k <= maxk; ++k) {
            auto it = t.find({k, d});
            os << "\t" << (it == t.end() ? std::string(".") : std::to_string(it->second));
        }
        os << "\n";
    }
    return os.str();
}

} // namespace eqsyz
