#pragma once

#include <random>
#include <string>
#include <vector>

#include "change_of_rings.hpp"
#include "invariants.hpp"

namespace eqsyz {

enum class RandomKind { cokernel, image, dual };

inline std::string to_string(RandomKind k) {
    switch (k) {
    case RandomKind::cokernel: return "cokernel";
    case RandomKind::image: return "image";
    case RandomKind::dual: return "dual";
    }
    return "?";
}

struct RandomModuleOptions {
    std::size_t max_generators = 3;
    std::size_t max_relations = 4;
    int max_gap = 3;         ///< relation degree minus generator degree, in steps of the smallest variable degree
    int coefficient_bound = 3;
    double density = 0.7;
};

/// Seeded source of small graded modules over a fixed ring.
class RandomModules {
public:
    RandomModules(RingPtr ring, std::uint64_t seed, RandomModuleOptions opt = {})
        : ring_(std::move(ring)), rng_(seed), opt_(opt) {
        step_ = ring_->degrees().empty() ? 2 : ring_->degrees()[0];
        for (int d : ring_->degrees()) step_ = std::min(step_, d);
    }

    Polynomial polynomial(int degree) {
        Polynomial p(ring_);
        if (degree < 0) return p;
        std::uniform_int_distribution<int> coeff(-opt_.coefficient_bound, opt_.coefficient_bound);
        std::bernoulli_distribution keep(opt_.density);
        for (const auto& m : monomials_of_degree(*ring_, degree)) {
            if (!keep(rng_)) continue;
            p += Polynomial::term(ring_, m, Rational(coeff(rng_)));
        }
        return p;
    }

    /// Homogeneous matrix target <- source with the given generator degrees.
    ModuleMap map(const GradedFreeModule& source, const GradedFreeModule& target) {
        std::vector<std::vector<Polynomial>> rows(target.rank(), std::vector<Polynomial>(source.rank(), Polynomial(ring_)));
        for (std::size_t i = 0; i < target.rank(); ++i) {
            for (std::size_t j = 0; j < source.rank(); ++j) {
                rows[i][j] = polynomial(source.degrees[j] - target.degrees[i]);
            }
        }
        return ModuleMap::from_matrix(source, target, rows);
    }

    GradedFreeModule free_module(std::size_t lo_rank, std::size_t hi_rank, int base) {
        std::uniform_int_distribution<std::size_t> rank(lo_rank, hi_rank);
        std::uniform_int_distribution<int> offset(0, 2);
        std::vector<int> degs(rank(rng_));
        for (int& d : degs) d = base + step_ * offset(rng_);
        return {ring_, degs};
    }

    GradedFreeModule relations_over(const GradedFreeModule& F, std::size_t max_count) {
        std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_count));
        std::uniform_int_distribution<std::size_t> pick(0, F.rank() - 1);
        std::uniform_int_distribution<int> gap(1, opt_.max_gap);
        std::vector<int> degs(F.rank() == 0 ? 0 : count(rng_));
        for (int& d : degs) d = F.degrees[pick(rng_)] + step_ * gap(rng_);
        return {ring_, degs};
    }

    FPModule module(RandomKind kind) {
        if (kind == RandomKind::dual) {
            // fewer relations than generators keeps the dual nonzero
            GradedFreeModule F = free_module(2, std::max<std::size_t>(2, opt_.max_generators), 0);
            return dual_module(FPModule(map(relations_over(F, F.rank() - 1), F))).module();
        }
        GradedFreeModule F = free_module(1, opt_.max_generators, 0);
        ModuleMap A = map(relations_over(F, opt_.max_relations), F);
        switch (kind) {
        case RandomKind::cokernel: return FPModule(A);
        case RandomKind::image: return image(A, ModuleMap::zero(GradedFreeModule{ring_, {}}, F));
        case RandomKind::dual: break;
        }
        return FPModule(A);
    }

    RandomKind kind() {
        std::uniform_int_distribution<int> k(0, 2);
        return static_cast<RandomKind>(k(rng_));
    }

private:
    RingPtr ring_;
    std::mt19937_64 rng_;
    RandomModuleOptions opt_;
    int step_ = 2;
};

} // namespace eqsyz
