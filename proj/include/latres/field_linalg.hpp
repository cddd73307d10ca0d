// Gaussian elimination written once against the field-object interface
// (QField, Fp64Field).  All pivoting is first-nonzero, so every result is
// deterministic and identical across runs.
#pragma once

#include "latres/matrix.hpp"
#include "latres/numeric.hpp"

#include <optional>
#include <vector>

namespace latres {

template <class F>
using FMat = Mat<typename F::Elem>;

// Entrywise image of an integer matrix in the field.
template <class F>
FMat<F> fmat_from(const F& f, const Mat<Int>& a) {
    FMat<F> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = f.from_integer(a(i, j));
    return r;
}

template <class F>
FMat<F> fmat_mul(const F& f, const FMat<F>& a, const FMat<F>& b) {
    FMat<F> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            auto s = f.zero();
            for (std::size_t k = 0; k < a.cols(); ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
            r(i, j) = s;
        }
    return r;
}

template <class F>
std::vector<typename F::Elem> fmat_vec(const F& f, const FMat<F>& a,
                                       const std::vector<typename F::Elem>& x) {
    std::vector<typename F::Elem> r(a.rows(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] = f.add(r[i], f.mul(a(i, j), x[j]));
    return r;
}

template <class F>
struct Rref {
    FMat<F> r;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

// Reduced row echelon form; pivots are the first nonzero entry in each
// column scan (exact arithmetic needs no magnitude pivoting).
template <class F>
Rref<F> rref(const F& f, FMat<F> m) {
    Rref<F> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && f.is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(row, piv);
        const auto inv = f.inv(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || f.is_zero(m(i, col))) continue;
            const auto c = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    out.r = std::move(m);
    return out;
}

template <class F>
std::size_t frank(const F& f, const FMat<F>& m) {
    return rref(f, m).rank;
}

// Basis of the null space, one vector per free column, in ascending free
// column order; the free coordinate is set to one.
template <class F>
std::vector<std::vector<typename F::Elem>> fkernel(const F& f, const FMat<F>& m) {
    Rref<F> e = rref(f, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elem>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::Elem> x(m.cols(), f.zero());
        x[free] = f.one();
        for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
            if (e.pivot_cols[k] < free) x[e.pivot_cols[k]] = f.neg(e.r(k, free));
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

// One solution of m x = b (free coordinates zero), or nothing.
template <class F>
std::optional<std::vector<typename F::Elem>> fsolve(const F& f, const FMat<F>& m,
                                                    const std::vector<typename F::Elem>& b) {
    FMat<F> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Rref<F> e = rref(f, aug);
    for (auto c : e.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    std::vector<typename F::Elem> x(m.cols(), f.zero());
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) x[e.pivot_cols[k]] = e.r(k, m.cols());
    return x;
}

// For z with full column rank: the canonical left inverse y (y z = id),
// namely the first rank(z) rows of the row-operation matrix that brings z
// to reduced echelon form.  Returns nothing when columns are dependent.
template <class F>
std::optional<FMat<F>> fleft_inverse(const F& f, const FMat<F>& z) {
    FMat<F> aug(z.rows(), z.cols() + z.rows());
    for (std::size_t i = 0; i < z.rows(); ++i) {
        for (std::size_t j = 0; j < z.cols(); ++j) aug(i, j) = z(i, j);
        aug(i, z.cols() + i) = f.one();
    }
    Rref<F> e = rref(f, aug);
    std::size_t zrank = 0;
    for (auto c : e.pivot_cols)
        if (c < z.cols()) ++zrank;
    if (zrank < z.cols()) return std::nullopt;
    FMat<F> y(z.cols(), z.rows());
    for (std::size_t i = 0; i < z.cols(); ++i)
        for (std::size_t j = 0; j < z.rows(); ++j) y(i, j) = e.r(i, z.cols() + j);
    return y;
}

}  // namespace latres
