#include "latres/lattice.hpp"

#include "fm.hpp"

#include <algorithm>

namespace latres {

// ---- quotient group -------------------------------------------------------

Vec QuotientGroup::project(const Vec& b) const {
    if (b.size() != n) throw std::invalid_argument("project: vector has wrong length");
    Vec y = mat_vec(u, b);
    Vec out;
    out.reserve(class_size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] >= 2) {
            Int r = y[i] % factors[i];
            if (r < 0) r += factors[i];
            out.push_back(r);
        }
    }
    for (std::size_t i = factors.size(); i < n; ++i) out.push_back(y[i]);
    return out;
}

Vec QuotientGroup::lift(const Vec& cls) const {
    if (cls.size() != class_size()) throw std::invalid_argument("lift: wrong class arity");
    Vec y(n, Int(0));
    std::size_t at = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i] >= 2) y[i] = cls[at++];
    for (std::size_t i = factors.size(); i < n; ++i) y[i] = cls[at++];
    return mat_vec(uinv, y);
}

// ---- lattice queries ------------------------------------------------------

std::optional<Vec> Lattice::member(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("member: vector has wrong length");
    return solve_z(cols_, v);
}

Vec Lattice::normal_form(const Vec& b) const {
    if (b.size() != n_) throw std::invalid_argument("normal_form: vector has wrong length");
    Vec v = b;
    for (std::size_t j = 0; j < hnf_.pivot_rows.size(); ++j) {
        const std::size_t r = hnf_.pivot_rows[j];
        Int q = floor_div(v[r], hnf_.h(r, j));
        if (q == 0) continue;
        for (std::size_t i = 0; i < n_; ++i) v[i] -= q * hnf_.h(i, j);
    }
    return v;
}

bool Lattice::box_dfs(const Vec& lo, const Vec& hi,
                      const std::function<bool(const Vec&)>& visit) const {
    if (lo.size() != n_ || hi.size() != n_)
        throw std::invalid_argument("points_in_box: vector has wrong length");
    const std::size_t k = hnf_.pivot_rows.size();
    // Rows above the first pivot carry no lattice movement: they are 0.
    const std::size_t first = k == 0 ? n_ : hnf_.pivot_rows[0];
    for (std::size_t r = 0; r < first; ++r)
        if (lo[r] > 0 || hi[r] < 0) return false;
    if (k == 0) return visit(zero_vec(n_));

    Vec val = zero_vec(n_);
    std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
        if (j == k) return visit(val);
        const std::size_t r = hnf_.pivot_rows[j];
        const Int& p = hnf_.h(r, j);
        Int z_lo = ceil_div(lo[r] - val[r], p);
        Int z_hi = floor_div(hi[r] - val[r], p);
        // Rows settled once z_j is chosen: everything before the next pivot.
        const std::size_t settle_end = (j + 1 < k) ? hnf_.pivot_rows[j + 1] : n_;
        for (Int z = z_lo; z <= z_hi; z += 1) {
            Vec saved = val;
            for (std::size_t i = r; i < n_; ++i) val[i] += z * hnf_.h(i, j);
            // Rows strictly between consecutive pivots are final now.
            bool ok = true;
            for (std::size_t i = r + 1; i < settle_end && ok; ++i)
                if (val[i] < lo[i] || val[i] > hi[i]) ok = false;
            if (ok && dfs(j + 1)) return true;
            val = saved;
        }
        return false;
    };
    return dfs(0);
}

std::vector<Vec> Lattice::points_in_box(const Vec& lo, const Vec& hi) const {
    std::vector<Vec> out;
    box_dfs(lo, hi, [&](const Vec& p) {
        out.push_back(p);
        return false;
    });
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

namespace {

// d.p = 0 and p <= c bound each coordinate of a lattice point from below.
std::optional<Vec> below_box_floor(const Vec& c, const Vec& d) {
    const std::size_t n = c.size();
    Vec lo(n);
    Int total = 0;
    for (std::size_t j = 0; j < n; ++j) total += d[j] * c[j];
    for (std::size_t i = 0; i < n; ++i) {
        Int rest = total - d[i] * c[i];  // sum over j != i of d_j c_j
        lo[i] = ceil_div(-rest, d[i]);
        if (lo[i] > c[i]) return std::nullopt;
    }
    return lo;
}

}  // namespace

std::vector<Vec> Lattice::points_below(const Vec& c) const {
    if (c.size() != n_) throw std::invalid_argument("points_below: vector has wrong length");
    auto lo = below_box_floor(c, grading_);
    if (!lo) return {};
    return points_in_box(*lo, c);
}

bool Lattice::any_point_below(const Vec& c) const {
    if (c.size() != n_) throw std::invalid_argument("any_point_below: vector has wrong length");
    auto lo = below_box_floor(c, grading_);
    if (!lo) return false;
    return box_dfs(*lo, c, [](const Vec&) { return true; });
}

// ---- certification --------------------------------------------------------

DependentBasisError::DependentBasisError(Vec z)
    : std::invalid_argument("basis vectors are dependent: " + vec_to_string(z)),
      dependency(std::move(z)) {}

CertifyResult certify_lattice(const std::vector<Vec>& basis, std::size_t n) {
    for (const auto& b : basis)
        if (b.size() != n) throw std::invalid_argument("basis vector has wrong length");
    const std::size_t k = basis.size();
    IntMat cols(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) cols(i, j) = basis[j][i];

    if (auto dep = kernel_basis_z(cols); !dep.empty()) throw DependentBasisError(dep[0]);

    // Feasibility of { d . b = 0 for all basis b, d >= 1 }.
    // Row layout: 2r, 2r+1 = the equality pair for basis[r]; 2k+i = d_i >= 1.
    fm::System sys;
    sys.nvars = n;
    for (const auto& b : basis) {
        std::vector<Rat> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = Rat(b[i]);
        sys.add_eq(a, Rat(0));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> a(n, Rat(0));
        a[i] = 1;
        sys.add(std::move(a), Rat(1));
    }

    fm::Outcome oc = fm::solve(sys);
    if (!oc.feasible) {
        // lambda^T rows = (0 >= positive); the basis-row multipliers combine
        // into a nonnegative rational vector in the span of L.  Clearing
        // denominators produces the witness in L itself.
        std::vector<Rat> coef(k);
        Int scale = 1;
        for (std::size_t r = 0; r < k; ++r) {
            coef[r] = -(oc.certificate[2 * r] - oc.certificate[2 * r + 1]);
            scale = lcm(scale, Int(coef[r].get_den()));
        }
        Vec w = zero_vec(n);
        for (std::size_t r = 0; r < k; ++r) {
            Rat c = coef[r] * Rat(scale);
            Int ci(c.get_num());  // integral: scale clears every denominator
            for (std::size_t i = 0; i < n; ++i) w[i] += ci * basis[r][i];
        }
        return Witness{std::move(w)};
    }

    // Grading: lex-least minimizer of sum(d), then cleared and reduced.
    std::vector<Rat> ones(n, Rat(1));
    Rat total = fm::minimize(sys, ones);
    sys.add_eq(ones, total);
    std::vector<Rat> dq(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> e(n, Rat(0));
        e[i] = 1;
        dq[i] = fm::minimize(sys, e);
        sys.add_eq(e, dq[i]);
    }
    Int denom = 1;
    for (const auto& x : dq) denom = lcm(denom, Int(x.get_den()));
    Vec d(n);
    Int g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = Int(Rat(dq[i] * Rat(denom)).get_num());
        g = gcd(g, d[i]);
    }
    if (g > 1)
        for (auto& x : d) x /= g;

    Lattice L;
    L.n_ = n;
    L.basis_ = basis;
    L.grading_ = std::move(d);
    L.cols_ = cols;
    L.hnf_ = hermite_col(cols);

    SnfResult s = smith_normal_form(cols);
    QuotientGroup& q = L.quotient_;
    q.n = n;
    q.free_rank = n - s.rank;
    q.factors = s.invariant_factors;
    for (const Int& f : q.factors)
        if (f >= 2) q.torsion_factors.push_back(f);
    q.u = std::move(s.u);
    q.uinv = std::move(s.uinv);
    return L;
}

// ---- saturated decreasing lattice paths -----------------------------------

namespace {

std::vector<std::size_t> path_multiset(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("paths: endpoint arity mismatch");
    if (!leq(a, b)) throw std::invalid_argument("paths: need a <= b componentwise");
    std::vector<std::size_t> steps;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int drop = b[i] - a[i];
        for (Int t = 0; t < drop; ++t) steps.push_back(i);
    }
    return steps;
}

}  // namespace

Int saturated_path_count(const Vec& a, const Vec& b) {
    std::vector<std::size_t> steps = path_multiset(a, b);
    Int num;
    mpz_fac_ui(num.get_mpz_t(), steps.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int f;
        mpz_fac_ui(f.get_mpz_t(), Int(b[i] - a[i]).get_ui());
        num /= f;
    }
    return num;
}

void for_each_saturated_path(const Vec& a, const Vec& b,
                             const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> steps = path_multiset(a, b);
    do {
        fn(steps);
    } while (std::next_permutation(steps.begin(), steps.end()));
}

}  // namespace latres
