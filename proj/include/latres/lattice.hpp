// A co-artinian lattice L in Z^n together with its certified positive
// grading, plus the lattice geometry everything else consumes: membership,
// point enumeration in boxes, coset normal forms, the quotient group Z^n/L,
// and saturated decreasing lattice paths.
#pragma once

#include "latres/int_linalg.hpp"
#include "latres/numeric.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace latres {

// Z^n/L presented through the Smith form of the basis matrix:
// Z^n/L = (+)_i Z/torsion_factors[i]  (+)  Z^free_rank.
struct QuotientGroup {
    std::size_t n = 0;
    std::size_t free_rank = 0;
    std::vector<Int> torsion_factors;  // the invariant factors >= 2

    // Presentation data: u * basis_cols * v = diag(factors).
    IntMat u, uinv;
    std::vector<Int> factors;  // all invariant factors of the basis matrix

    std::size_t class_size() const { return torsion_factors.size() + free_rank; }

    // Class coordinates (torsion residues in [0, f_i), then free coordinates);
    // kills exactly L.
    Vec project(const Vec& b) const;

    // A representative in Z^n with the given class coordinates.
    Vec lift(const Vec& cls) const;
};

class Lattice {
  public:
    std::size_t n() const { return n_; }
    const std::vector<Vec>& basis() const { return basis_; }
    const Vec& grading() const { return grading_; }
    const QuotientGroup& quotient() const { return quotient_; }

    // n x k matrix with the basis vectors as columns.
    const IntMat& basis_cols() const { return cols_; }

    // d-degree; constant on cosets of L.
    Int degree(const Vec& v) const { return dot(grading_, v); }

    // Coordinates z with basis . z = v when v lies in L.
    std::optional<Vec> member(const Vec& v) const;

    // Canonical coset representative: idempotent and L-invariant.
    Vec normal_form(const Vec& b) const;

    // All lattice points dominated by c componentwise, in ascending lex
    // order.  Finite because the grading pins each coordinate from below.
    std::vector<Vec> points_below(const Vec& c) const;

    // All lattice points with lo <= p <= c componentwise.
    std::vector<Vec> points_in_box(const Vec& lo, const Vec& hi) const;

    // Whether any lattice point is dominated by c (short-circuits).
    bool any_point_below(const Vec& c) const;

  private:
    friend std::variant<Lattice, struct Witness> certify_lattice(const std::vector<Vec>&,
                                                                 std::size_t);
    Lattice() = default;

    // DFS over the box; visit returns true to stop early.  Returns whether
    // the walk was stopped.
    bool box_dfs(const Vec& lo, const Vec& hi,
                 const std::function<bool(const Vec&)>& visit) const;

    std::size_t n_ = 0;
    std::vector<Vec> basis_;
    Vec grading_;
    IntMat cols_;
    HermiteCol hnf_;  // of cols_
    QuotientGroup quotient_;
};

// Proof that L is not co-artinian: a nonzero nonnegative lattice element.
struct Witness {
    Vec v;
};

// A nonzero integer relation among the offered basis vectors.
struct DependentBasisError : std::invalid_argument {
    Vec dependency;
    explicit DependentBasisError(Vec z);
};

using CertifyResult = std::variant<Lattice, Witness>;

// Either certifies L (strictly positive integer grading orthogonal to the
// basis, chosen as the lex-least minimizer of sum(d) with entries >= 1,
// cleared to integers and gcd-reduced) or produces a Witness.  A dependent
// basis is rejected by throwing DependentBasisError.
CertifyResult certify_lattice(const std::vector<Vec>& basis, std::size_t n);

// ---- saturated decreasing lattice paths -----------------------------------

// A path from b down to a moving one coordinate down by 1 per step; the
// path is recorded as the sequence of dropped coordinate indices (0-based).
struct LatticePath {
    Vec b, a;
    std::vector<std::size_t> steps;
};

// (sum(b-a))! / prod((b-a)_i !).  Requires a <= b componentwise.
Int saturated_path_count(const Vec& a, const Vec& b);

// All step sequences in ascending lex order.
void for_each_saturated_path(const Vec& a, const Vec& b,
                             const std::function<void(const std::vector<std::size_t>&)>& fn);

}  // namespace latres
