// Hedge combinatorics of a simplicial complex: shrubberies (independent
// i-face sets of full boundary rank), stake sets ((i-1)-face sets the
// boundary image projects onto injectively), their subgroup indices τ(T)
// and σ(S), the squared sums τ_i and σ_i, torsion orders, bad-prime sets,
// and a deterministic community of hedges.
#pragma once

#include "latres/koszul.hpp"
#include "latres/simplicial.hpp"

#include <set>
#include <vector>

namespace latres {

// All maximal i-face sets with independent boundaries; each has exactly
// rank ∂_i faces.  Lex order over the lex-sorted face list.
std::vector<std::vector<FaceMask>> shrubberies(const SimplicialComplex& k, int i);

// All minimal (i-1)-face sets S such that projecting the boundary image to
// the S coordinates is injective; each has exactly rank ∂_i faces.
std::vector<std::vector<FaceMask>> stake_sets(const SimplicialComplex& k, int i);

// [im ∂_i : Z·∂_i(T)] for a shrubbery T.  Rejects non-shrubberies.
Int tau_index(const SimplicialComplex& k, int i, const std::vector<FaceMask>& t);

// [Z^S : proj_S(im ∂_i)] for a stake set S.  Rejects non-stake-sets.
Int sigma_index(const SimplicialComplex& k, int i, const std::vector<FaceMask>& s);

struct ForestInvariants {
    // Index 0 holds dimension 0, and so on up to dim(K).
    std::vector<Int> tau;    // τ_i = Σ_T τ(T)^2
    std::vector<Int> sigma;  // σ_i = Σ_S σ(S)^2
    // torsion_orders[i+1] = torsion order of C̃_i / ∂_{i+1}(C̃_{i+1}),
    // starting at i = -1.
    std::vector<Int> torsion_orders;
    std::set<Int> bad_primes;  // primes dividing any τ_i, σ_i, or torsion order
};

ForestInvariants forest_invariants(const SimplicialComplex& k);

// Union of bad primes of K^b M over the given degrees, memoized by the
// labeled face set of the complex.
std::set<Int> bad_primes_for_module(const MonomialModule& m, const std::vector<Vec>& degrees);

struct Hedge {
    int i = 0;
    std::vector<FaceMask> stakes;  // S_{i-1}, (i-1)-faces
    std::vector<FaceMask> shrubs;  // T_i, i-faces
};

// Hedges st_0 .. st_{dim+1} with the disjointness condition
// T_i ∩ S_i = ∅ (S_i being the stake set inside st_{i+1}).
struct Community {
    std::vector<Hedge> hedges;
};

// Deterministic choice: per dimension the lex-least shrubbery admitting a
// disjoint stake set for the next boundary, with lex-least such stake set.
// Throws std::runtime_error if no pair works at some dimension.
Community default_community(const SimplicialComplex& k);

// Checks an explicitly given community: every hedge holds a genuine
// stake-set/shrubbery pair and consecutive hedges are disjoint.
bool validate_community(const SimplicialComplex& k, const Community& c);

}  // namespace latres
