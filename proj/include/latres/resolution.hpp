// Equivariant minimal free resolutions of co-artinian monomial modules by
// degreewise lift-and-solve: at each homological degree and each candidate
// coset the finite slice of the previous stage is assembled, its kernel is
// computed exactly, and new generators are chosen as a canonical basis of
// kernel modulo (variables times lower-degree kernels).  Everything is
// stored per coset representative, so translation equivariance holds by
// construction.
#pragma once

#include "latres/fields.hpp"
#include "latres/forestry.hpp"
#include "latres/koszul.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace latres {

// One basis element of F_i: degree rep (a coset normal form) plus its
// ordinal among the elements sharing that rep.
struct ResBasis {
    Vec rep;
    std::size_t ordinal = 0;

    bool operator==(const ResBasis&) const = default;
};

// One translate-tagged term of a differential: coeff * x^(b(u)-b(v)-ell)
// times the ell-translate of target element v (an index into the basis
// list one homological degree down).
template <class F>
struct ResTerm {
    std::size_t target = 0;
    Vec ell;
    typename F::Elem coeff{};

    bool operator==(const ResTerm&) const = default;
};

enum class BasisMode { CanonicalBasis, Community };

struct ResolveOptions {
    BasisMode mode = BasisMode::CanonicalBasis;
    BettiSupportOptions support;
};

// Per-coset Koszul homology data carried for the face-indexed matrix views:
// the complex at the representative and one cycle representative per basis
// ordinal of each homological degree that lives there.
template <class F>
struct CosetHomology {
    SimplicialComplex complex;
    // cycles[i] = representatives for the ordinals at homological degree i,
    // as coefficient vectors over the (i-1)-faces.
    std::map<std::size_t, std::vector<std::vector<typename F::Elem>>> cycles;
    std::optional<Community> community;  // only in community mode
};

template <class F>
struct EquivariantResolution {
    F field;
    MonomialModule module;
    ResolveOptions options;

    EquivariantResolution(F f, MonomialModule m, ResolveOptions o)
        : field(std::move(f)), module(std::move(m)), options(std::move(o)) {}

    // basis[i] sorted by (rep lex, ordinal); diff[i][j] is the differential
    // of basis[i][j] into basis[i-1] (empty list at i = 0).
    std::vector<std::vector<ResBasis>> basis;
    std::vector<std::vector<std::vector<ResTerm<F>>>> diff;

    std::map<Vec, CosetHomology<F>> homology;  // keyed by coset rep

    bool enumeration_stable = true;  // from the Betti-support deepening
    Int support_radius = 0;

    std::size_t length() const { return basis.empty() ? 0 : basis.size() - 1; }
    std::size_t rank(std::size_t i) const { return i < basis.size() ? basis[i].size() : 0; }
};

// The count of new generators demanded by the kernel computation differed
// from the independently computed Betti number: internal inconsistency.
struct RankMismatchError : std::runtime_error {
    std::size_t i;
    Vec degree;
    std::size_t expected, got;
    RankMismatchError(std::size_t i_, Vec deg, std::size_t want, std::size_t have);
};

template <class F>
EquivariantResolution<F> resolve_equivariant(const MonomialModule& m, const F& f,
                                             const ResolveOptions& opt = {});

// Face-indexed view of the resolution block from (i+1, beta) to (i, alpha):
// rows are the (i-1)-faces of K^alpha, columns the i-faces of K^beta, and
// the induced map on homology classes (through the stored cycle
// representatives) equals the block of the differential.
template <class F>
struct SylvanMatrixView {
    std::size_t i = 0;
    Vec alpha, beta;  // coset reps
    std::vector<FaceMask> rows, cols;
    FMat<F> d;      // the face-indexed matrix
    FMat<F> block;  // the underlying coefficient block, targets x sources
};

template <class F>
SylvanMatrixView<F> sylvan_matrix_view(const EquivariantResolution<F>& res, std::size_t i,
                                       const Vec& alpha, const Vec& beta,
                                       const std::optional<Community>& community = {});

// Recomputes the per-coset complexes and homology representatives from the
// module (used after deserialization, which stores only basis and terms).
template <class F>
void rebuild_homology(EquivariantResolution<F>& res);

struct EquivarianceReport {
    bool pass = true;
    std::size_t samples = 0;
    std::vector<std::string> failures;  // human-readable witnesses
};

// Re-runs the lift-and-solve selection from scratch at random L-translates
// of every stored degree and insists on literal equality after shifting
// back, plus equality of the Koszul complexes themselves.
template <class F>
EquivarianceReport check_equivariance(const EquivariantResolution<F>& res,
                                      std::size_t samples_per_element, std::uint64_t seed);

}  // namespace latres
