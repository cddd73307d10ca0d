// Exact linear algebra over Z: Smith and Hermite normal forms, integer
// kernels, solving, and subgroup indices.  Dense and deliberately simple;
// the complexes this library meets live on a handful of vertices.
#pragma once

#include "latres/matrix.hpp"
#include "latres/numeric.hpp"

#include <optional>
#include <vector>

namespace latres {

using IntMat = Mat<Int>;

// U*A*V = diag(invariant_factors, 0...), with U, V unimodular and each
// factor dividing the next.  uinv, vinv are the exact inverses, so
// A = uinv * D * vinv.
struct SnfResult {
    IntMat u, v, uinv, vinv;
    std::vector<Int> invariant_factors;
    std::size_t rank = 0;

    IntMat diagonal(std::size_t rows, std::size_t cols) const;
};

// Pivoting: minimal absolute value, ties broken by lowest row then column.
SnfResult smith_normal_form(const IntMat& a);

// Column-style Hermite form: h = a * (unimodular), lower-triangular in the
// sense that column j has its first nonzero (positive) entry in pivot_rows[j],
// pivot-row entries to the left reduced into [0, pivot).
struct HermiteCol {
    IntMat h;
    std::vector<std::size_t> pivot_rows;
    std::size_t rank() const { return pivot_rows.size(); }
};
HermiteCol hermite_col(const IntMat& a);

// Basis of the integer kernel {x : A x = 0}; always a saturated lattice
// (the columns of V beyond the SNF rank).
std::vector<Vec> kernel_basis_z(const IntMat& a);

// One integer solution of A x = b, if any.
std::optional<Vec> solve_z(const IntMat& a, const Vec& b);

// Fraction-free determinant (Bareiss).
Int det(const IntMat& a);

struct SubgroupIndex {
    bool finite = true;
    Int index = 1;  // meaningful when finite
};

// [<ambient> : <sub>] for the column lattices of the two generator matrices.
// Throws std::invalid_argument when sub is not contained in the rational
// span of ambient, or lies in the span but not in the subgroup itself.
SubgroupIndex subgroup_index(const IntMat& ambient_gens, const IntMat& sub_gens);

std::size_t rank_z(const IntMat& a);

}  // namespace latres
