// Co-artinian monomial modules -- lattice modules M_L and finitely generated
// monomial modules -- with their Koszul simplicial complexes K^b, multigraded
// Betti numbers (rank of H̃_{i-1} K^b), and Betti-support enumeration.
#pragma once

#include "latres/lattice.hpp"
#include "latres/simplicial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace latres {

class MonomialModule {
  public:
    static MonomialModule lattice_module(Lattice l);
    // Prunes to the minimal generators (pairwise incomparable).  Exponents
    // may be negative: these are translates of monomial submodules.
    static MonomialModule generated_module(std::size_t n, std::vector<Vec> gens);

    bool is_lattice() const { return lattice_.has_value(); }
    const Lattice& lattice() const { return *lattice_; }
    const std::vector<Vec>& gens() const { return gens_; }
    std::size_t n() const { return n_; }

    // Degrees are compared modulo L for a lattice module; the identity map
    // for a generated module (the grading group is all of Z^n).
    Vec degree_normal_form(const Vec& b) const;
    // Strictly positive grading: the lattice certificate or all-ones.
    const Vec& grading() const { return grading_; }
    Int degree_value(const Vec& b) const { return dot(grading_, b); }

    bool member(const Vec& c) const;

  private:
    MonomialModule() = default;
    std::size_t n_ = 0;
    std::optional<Lattice> lattice_;
    std::vector<Vec> gens_;
    Vec grading_;

    friend SimplicialComplex koszul_complex(const MonomialModule&, const Vec&, bool);
    struct Memo {
        std::mutex mu;
        std::map<Vec, SimplicialComplex> table;
    };
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// K^b M = {τ ⊆ {1..n} : x^{b-τ} ∈ M}; void exactly when x^b ∉ M.  Lattice
// modules are memoized by coset normal form (sound: K^b depends only on the
// coset of b); use_memo=false forces a literal recomputation.
SimplicialComplex koszul_complex(const MonomialModule& m, const Vec& b, bool use_memo = true);

// β_{i,b} = dim H̃_{i-1}(K^b M) over the field.
std::size_t betti_number(const MonomialModule& m, std::size_t i, const Vec& b,
                         const FieldSpec& field);

struct BettiEntry {
    std::size_t i = 0;
    Vec coset;  // class coordinates in the grading group
    Vec rep;    // representative degree (coset normal form)
    std::size_t rank = 0;
};

struct BettiSupportOptions {
    // Lattice-module deepening: start at 2*max|basis entry|, grow by 1, give
    // up at cap_multiplier times the start.
    std::optional<Int> initial_radius;
    Int cap_multiplier = 10;
};

struct BettiSupport {
    std::vector<BettiEntry> entries;  // rank > 0 only; sorted by (i, rep)
    bool enumeration_stable = true;   // false: radius cap hit, result UNCERTIFIED
    Int final_radius = 0;             // lattice case only
};

// All degrees with nonzero Betti numbers.  Generated modules: candidates
// are joins of at most n+1 generators (complete: every Betti degree is a
// componentwise join of generator degrees, one witness per coordinate).
// Lattice modules: joins of 0 with at most n lattice points in a growing
// sup-norm ball, stopping after two radii add nothing.
BettiSupport betti_support(const MonomialModule& m, const FieldSpec& field,
                           const BettiSupportOptions& opt = {});

}  // namespace latres
