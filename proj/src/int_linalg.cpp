#include "latres/int_linalg.hpp"

#include <stdexcept>

namespace latres {

IntMat SnfResult::diagonal(std::size_t rows, std::size_t cols) const {
    IntMat d(rows, cols);
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) d(i, i) = invariant_factors[i];
    return d;
}

namespace {

// Elementary operations applied to the working matrix while keeping
// u*a0*v = a and the two inverses in sync.
struct SnfWork {
    IntMat a, u, uinv, v, vinv;

    explicit SnfWork(const IntMat& m)
        : a(m),
          u(IntMat::identity(m.rows())),
          uinv(IntMat::identity(m.rows())),
          v(IntMat::identity(m.cols())),
          vinv(IntMat::identity(m.cols())) {}

    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        a.swap_rows(i, j);
        u.swap_rows(i, j);
        uinv.swap_cols(i, j);
    }
    // row i += m * row j
    void row_axpy(std::size_t i, std::size_t j, const Int& m) {
        if (m == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += m * a(j, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) += m * u(j, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, j) -= m * uinv(r, i);
    }
    void row_negate(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        a.swap_cols(i, j);
        v.swap_cols(i, j);
        vinv.swap_rows(i, j);
    }
    // col i += m * col j
    void col_axpy(std::size_t i, std::size_t j, const Int& m) {
        if (m == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += m * a(r, j);
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) += m * v(r, j);
        for (std::size_t c = 0; c < vinv.cols(); ++c) vinv(j, c) -= m * vinv(i, c);
    }
};

// Smallest nonzero |entry| in a[t.., t..]; ties broken by lowest row, then
// lowest column.
bool find_pivot(const IntMat& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            Int mag = abs(a(i, j));
            if (!found || mag < best) {
                found = true;
                best = mag;
                pr = i;
                pc = j;
            }
        }
    return found;
}

}  // namespace

SnfResult smith_normal_form(const IntMat& a0) {
    SnfWork w(a0);
    const std::size_t steps = std::min(a0.rows(), a0.cols());
    std::size_t t = 0;
    for (; t < steps; ++t) {
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(w.a, t, pr, pc)) break;
        for (;;) {
            w.row_swap(t, pr);
            w.col_swap(t, pc);
            // One Euclidean pass down the column and across the row.
            bool residue = false;
            for (std::size_t i = t + 1; i < w.a.rows(); ++i) {
                if (w.a(i, t) == 0) continue;
                w.row_axpy(i, t, -floor_div(w.a(i, t), w.a(t, t)));
                if (w.a(i, t) != 0) residue = true;
            }
            for (std::size_t j = t + 1; j < w.a.cols(); ++j) {
                if (w.a(t, j) == 0) continue;
                w.col_axpy(j, t, -floor_div(w.a(t, j), w.a(t, t)));
                if (w.a(t, j) != 0) residue = true;
            }
            if (residue) {  // a remainder smaller than the pivot appeared
                find_pivot(w.a, t, pr, pc);
                continue;
            }
            if (w.a(t, t) < 0) w.row_negate(t);
            // The pivot must divide the whole remaining block; if not, pull
            // the offending row in and repeat (the pivot gcd strictly drops).
            bool divides = true;
            for (std::size_t i = t + 1; i < w.a.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < w.a.cols() && divides; ++j)
                    if (w.a(i, j) % w.a(t, t) != 0) {
                        w.row_axpy(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
            find_pivot(w.a, t, pr, pc);
        }
    }

    SnfResult r;
    r.u = std::move(w.u);
    r.uinv = std::move(w.uinv);
    r.v = std::move(w.v);
    r.vinv = std::move(w.vinv);
    for (std::size_t i = 0; i < t; ++i) r.invariant_factors.push_back(w.a(i, i));
    r.rank = t;
    return r;
}

HermiteCol hermite_col(const IntMat& a) {
    HermiteCol out;
    out.h = a;
    IntMat& h = out.h;
    std::size_t next = 0;  // next pivot column
    for (std::size_t r = 0; r < h.rows() && next < h.cols(); ++r) {
        // Collapse row r (columns >= next) to a single nonzero entry.
        for (;;) {
            std::size_t best = h.cols();
            for (std::size_t j = next; j < h.cols(); ++j) {
                if (h(r, j) == 0) continue;
                if (best == h.cols() || abs(h(r, j)) < abs(h(r, best))) best = j;
            }
            if (best == h.cols()) break;  // row is zero here; not a pivot row
            h.swap_cols(next, best);
            bool residue = false;
            for (std::size_t j = next + 1; j < h.cols(); ++j) {
                if (h(r, j) == 0) continue;
                Int q = floor_div(h(r, j), h(r, next));
                for (std::size_t i = 0; i < h.rows(); ++i) h(i, j) -= q * h(i, next);
                if (h(r, j) != 0) residue = true;
            }
            if (!residue) break;
        }
        if (h(r, next) == 0) continue;
        if (h(r, next) < 0)
            for (std::size_t i = 0; i < h.rows(); ++i) h(i, next) = -h(i, next);
        // Reduce earlier pivot columns in this row into [0, pivot).
        for (std::size_t j = 0; j < next; ++j) {
            Int q = floor_div(h(r, j), h(r, next));
            if (q == 0) continue;
            for (std::size_t i = 0; i < h.rows(); ++i) h(i, j) -= q * h(i, next);
        }
        out.pivot_rows.push_back(r);
        ++next;
    }
    return out;
}

std::vector<Vec> kernel_basis_z(const IntMat& a) {
    SnfResult s = smith_normal_form(a);
    std::vector<Vec> basis;
    for (std::size_t j = s.rank; j < a.cols(); ++j) basis.push_back(s.v.col(j));
    return basis;
}

std::optional<Vec> solve_z(const IntMat& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_z: size mismatch");
    SnfResult s = smith_normal_form(a);
    Vec c = mat_vec(s.u, b);
    Vec z(a.cols(), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.invariant_factors[i] != 0) return std::nullopt;
            z[i] = c[i] / s.invariant_factors[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec(s.v, z);
}

Int det(const IntMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = t / prev;  // exact by Bareiss
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::size_t rank_z(const IntMat& a) { return hermite_col(a).rank(); }

SubgroupIndex subgroup_index(const IntMat& ambient_gens, const IntMat& sub_gens) {
    if (ambient_gens.rows() != sub_gens.rows())
        throw std::invalid_argument("subgroup_index: ambient dimension mismatch");
    SnfResult s = smith_normal_form(ambient_gens);
    // Coordinates of each subgroup generator in the basis {d_i * uinv col i}.
    IntMat x(s.rank, sub_gens.cols());
    for (std::size_t j = 0; j < sub_gens.cols(); ++j) {
        Vec y = mat_vec(s.u, sub_gens.col(j));
        for (std::size_t i = s.rank; i < y.size(); ++i)
            if (y[i] != 0)
                throw std::invalid_argument("subgroup_index: generator outside the rational span of the ambient lattice");
        for (std::size_t i = 0; i < s.rank; ++i) {
            if (y[i] % s.invariant_factors[i] != 0)
                throw std::invalid_argument("subgroup_index: generator lies in the rational span but not in the ambient lattice");
            x(i, j) = y[i] / s.invariant_factors[i];
        }
    }
    SnfResult sx = smith_normal_form(x);
    if (sx.rank < s.rank) return SubgroupIndex{false, 0};
    SubgroupIndex r;
    r.finite = true;
    r.index = 1;
    for (const Int& f : sx.invariant_factors) r.index *= f;
    return r;
}

}  // namespace latres
