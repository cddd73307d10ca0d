#include "latres/resolution.hpp"

#include "latres/field_linalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace latres {

RankMismatchError::RankMismatchError(std::size_t i_, Vec deg, std::size_t want, std::size_t have)
    : std::runtime_error("rank mismatch at i=" + std::to_string(i_) + ", degree " +
                         vec_to_string(deg) + ": betti " + std::to_string(want) +
                         " vs kernel quotient " + std::to_string(have)),
      i(i_),
      degree(std::move(deg)),
      expected(want),
      got(have) {}

namespace {

// ---- degree slices --------------------------------------------------------

// One summand x^(c - rep - ell) * (element @ ell) of the degree-c slice.
struct SlicePair {
    std::size_t elt = 0;
    Vec ell;
};

bool pair_less(const SlicePair& a, const SlicePair& b) {
    if (a.elt != b.elt) return a.elt < b.elt;
    return lex_less(a.ell, b.ell);
}

// Translates ell with rep + ell <= rep + gap; only 0 for generated modules.
std::vector<Vec> translates_below(const MonomialModule& m, const Vec& gap) {
    if (m.is_lattice()) return m.lattice().points_below(gap);
    if (!geq_zero(gap)) return {};
    return {zero_vec(m.n())};
}

// Pairs of the degree-c slice of F_level in the canonical slice order:
// target rep lex, then ordinal, then translate lex.  The basis lists are
// stored in (rep lex, ordinal) order, so element index then translate is
// exactly that order.
template <class F>
std::vector<SlicePair> slice_pairs(const EquivariantResolution<F>& st, std::size_t level,
                                   const Vec& c) {
    std::vector<SlicePair> out;
    if (level >= st.basis.size()) return out;
    for (std::size_t j = 0; j < st.basis[level].size(); ++j) {
        for (auto& ell : translates_below(st.module, sub(c, st.basis[level][j].rep)))
            out.push_back(SlicePair{j, std::move(ell)});
    }
    return out;
}

std::size_t pair_index(const std::vector<SlicePair>& pairs, const SlicePair& key) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), key, pair_less);
    if (it == pairs.end() || it->elt != key.elt || it->ell != key.ell)
        throw std::logic_error("slice pair lookup failed");
    return static_cast<std::size_t>(it - pairs.begin());
}

template <class F>
struct SliceKernel {
    std::vector<SlicePair> pairs;                          // slice basis of F_level at c
    std::vector<std::vector<typename F::Elem>> kernel;     // of the slice of the differential
};

// Literal recomputation at the given degree: assembles the slice of
// F_level -> F_{level-1} (the augmentation row of ones when level = 0) and
// takes its kernel.  No memoization, no normal forms.
template <class F>
SliceKernel<F> slice_kernel_raw(const EquivariantResolution<F>& st, const F& f, std::size_t level,
                                const Vec& c) {
    SliceKernel<F> out;
    out.pairs = slice_pairs(st, level, c);
    FMat<F> a;
    if (level == 0) {
        // every pair maps to x^c in the module itself
        a = FMat<F>(1, out.pairs.size());
        for (std::size_t j = 0; j < out.pairs.size(); ++j) a(0, j) = f.one();
    } else {
        auto rows = slice_pairs(st, level - 1, c);
        a = FMat<F>(rows.size(), out.pairs.size());
        for (std::size_t j = 0; j < out.pairs.size(); ++j) {
            const auto& p = out.pairs[j];
            for (const auto& t : st.diff[level][p.elt]) {
                const std::size_t r = pair_index(rows, SlicePair{t.target, add(t.ell, p.ell)});
                a(r, j) = f.add(a(r, j), t.coeff);
            }
        }
    }
    out.kernel = fkernel(f, a);
    return out;
}

// Slices are translation equivariant, so kernels are memoized at the coset
// normal form and shifted back.  Lex order on translates survives the shift,
// so the pair order is preserved verbatim.
template <class F>
struct KernelMemo {
    std::map<std::pair<std::size_t, Vec>, SliceKernel<F>> table;
};

template <class F>
SliceKernel<F> slice_kernel(const EquivariantResolution<F>& st, const F& f, KernelMemo<F>& memo,
                            std::size_t level, const Vec& c) {
    const Vec nf = st.module.degree_normal_form(c);
    const auto key = std::make_pair(level, nf);
    auto it = memo.table.find(key);
    if (it == memo.table.end())
        it = memo.table.emplace(key, slice_kernel_raw(st, f, level, nf)).first;
    SliceKernel<F> out = it->second;
    const Vec shift = sub(c, nf);
    if (!is_zero(shift))
        for (auto& p : out.pairs) p.ell = add(p.ell, shift);
    return out;
}

// ---- incremental elimination over a field ---------------------------------

template <class F>
struct FElim {
    const F* f;
    std::vector<std::vector<typename F::Elem>> rows;
    std::vector<std::size_t> pivots;

    explicit FElim(const F& ff) : f(&ff) {}

    // true iff v was independent of everything absorbed so far
    bool try_add(std::vector<typename F::Elem> v) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const auto c = v[pivots[k]];
            if (f->is_zero(c)) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = f->sub(v[j], f->mul(c, rows[k][j]));
        }
        std::size_t p = 0;
        while (p < v.size() && f->is_zero(v[p])) ++p;
        if (p == v.size()) return false;
        const auto inv = f->inv(v[p]);
        for (auto& x : v) x = f->mul(x, inv);
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
};

template <class F>
std::vector<typename F::Elem> scale_first_one(const F& f,
                                              std::vector<typename F::Elem> v) {
    for (const auto& x : v) {
        if (f.is_zero(x)) continue;
        const auto inv = f.inv(x);
        for (auto& y : v) y = f.mul(y, inv);
        break;
    }
    return v;
}

// ---- generator selection at one degree ------------------------------------

// The lift-and-solve step at (level, degree b): kernel of the slice of
// d_{level-1}, modulo the span of x_j times the kernels at b - e_j.  Earlier
// generators at other degrees already sit inside that span (multiply their
// kernel representative through intermediate degrees), so the quotient only
// needs the variable shifts.  Returns the normalized kernel representatives
// of a canonical basis of the quotient together with the slice pair list.
template <class F>
struct Selection {
    std::vector<SlicePair> pairs;
    std::vector<std::vector<typename F::Elem>> chosen;
};

template <class F, class KernelAt>
Selection<F> select_generators(const EquivariantResolution<F>& st, const F& f, std::size_t level,
                               const Vec& b, KernelAt&& kernel_at) {
    SliceKernel<F> k = kernel_at(level - 1, b);
    FElim<F> pool(f);
    for (std::size_t j = 0; j < st.module.n(); ++j) {
        Vec c = b;
        c[j] -= 1;
        SliceKernel<F> kj = kernel_at(level - 1, c);
        for (const auto& z : kj.kernel) {
            std::vector<typename F::Elem> w(k.pairs.size(), f.zero());
            for (std::size_t idx = 0; idx < kj.pairs.size(); ++idx) {
                if (f.is_zero(z[idx])) continue;
                w[pair_index(k.pairs, kj.pairs[idx])] = z[idx];
            }
            pool.try_add(std::move(w));
        }
    }
    Selection<F> out;
    out.pairs = std::move(k.pairs);
    for (const auto& z : k.kernel)
        if (pool.try_add(z)) out.chosen.push_back(scale_first_one(f, z));
    return out;
}

// Differential terms of a chosen representative, in slice-pair order.
template <class F>
std::vector<ResTerm<F>> terms_of(const EquivariantResolution<F>& st, const F& f,
                                 std::size_t level, const Vec& b, const Selection<F>& sel,
                                 const std::vector<typename F::Elem>& z) {
    std::vector<ResTerm<F>> terms;
    for (std::size_t idx = 0; idx < sel.pairs.size(); ++idx) {
        if (f.is_zero(z[idx])) continue;
        const auto& p = sel.pairs[idx];
        const Vec expo = sub(sub(b, st.basis[level - 1][p.elt].rep), p.ell);
        if (is_zero(expo))
            throw std::logic_error("minimality breach: unit coefficient in a differential");
        if (!geq_zero(expo)) throw std::logic_error("negative exponent in a differential");
        terms.push_back(ResTerm<F>{p.elt, p.ell, z[idx]});
    }
    return terms;
}

// ---- per-coset homology data ----------------------------------------------

std::vector<std::size_t> face_rows(const std::vector<FaceMask>& all,
                                   const std::vector<FaceMask>& subset) {
    std::vector<std::size_t> out;
    out.reserve(subset.size());
    for (auto s : subset) {
        auto it = std::lower_bound(all.begin(), all.end(), s, face_lex_less);
        if (it == all.end() || *it != s) throw std::logic_error("stake face not in complex");
        out.push_back(static_cast<std::size_t>(it - all.begin()));
    }
    return out;
}

// Replaces each cycle by the unique representative of its class whose
// coordinates on the stake set vanish: the stake rows of the boundary have
// full rank, so a boundary matching the stake coordinates exists and is
// unique.  Over a prime field this can fail when p divides the stake index.
template <class F>
std::vector<std::vector<typename F::Elem>> recoordinatize(
    const F& f, const SimplicialComplex& k, std::size_t level,
    const std::vector<std::vector<typename F::Elem>>& cycles,
    const std::vector<FaceMask>& stakes) {
    if (cycles.empty()) return cycles;
    const int i = static_cast<int>(level) - 1;
    const auto rows = face_rows(k.faces(i), stakes);
    const FMat<F> bd = fmat_from(f, boundary_matrix(k, i + 1));
    FMat<F> bs(rows.size(), bd.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < bd.cols(); ++c) bs(r, c) = bd(rows[r], c);
    std::vector<std::vector<typename F::Elem>> out;
    out.reserve(cycles.size());
    for (const auto& w : cycles) {
        std::vector<typename F::Elem> rhs(rows.size(), f.zero());
        for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = w[rows[r]];
        auto y = fsolve(f, bs, rhs);
        if (!y)
            throw std::runtime_error(
                "community re-coordinatization failed: stake projection is singular over this "
                "field");
        auto img = fmat_vec(f, bd, *y);
        std::vector<typename F::Elem> w2(w.size(), f.zero());
        for (std::size_t r = 0; r < w.size(); ++r) w2[r] = f.sub(w[r], img[r]);
        out.push_back(std::move(w2));
    }
    return out;
}

template <class F>
void attach_homology(EquivariantResolution<F>& res, const F& f, std::size_t level,
                     const Vec& rep, std::size_t expect) {
    auto it = res.homology.find(rep);
    if (it == res.homology.end()) {
        it = res.homology.emplace(rep, CosetHomology<F>{}).first;
        it->second.complex = koszul_complex(res.module, rep);
    }
    auto& slot = it->second;
    auto h = reduced_homology(slot.complex, static_cast<int>(level) - 1, f);
    if (h.rank != expect)
        throw RankMismatchError(level, rep, expect, h.rank);
    if (res.options.mode == BasisMode::Community) {
        if (!slot.community) slot.community = default_community(slot.complex);
        h.cycles = recoordinatize(f, slot.complex, level, h.cycles,
                                  slot.community->hedges[level].stakes);
    }
    slot.cycles[level] = std::move(h.cycles);
}

std::string describe_degree(const Vec& b, const Vec& ell) {
    return "degree " + vec_to_string(b) + " translate " + vec_to_string(ell);
}

}  // namespace

// ---- construction ---------------------------------------------------------

template <class F>
EquivariantResolution<F> resolve_equivariant(const MonomialModule& m, const F& f,
                                             const ResolveOptions& opt) {
    EquivariantResolution<F> res(f, m, opt);

    // L = 0: the lattice module is R itself, free on one generator in degree 0.
    if (m.is_lattice() && m.lattice().basis().empty()) {
        const Vec zero = zero_vec(m.n());
        res.basis.push_back({ResBasis{zero, 0}});
        res.diff.push_back({{}});
        attach_homology(res, f, 0, zero, 1);
        return res;
    }

    const BettiSupport sup = betti_support(m, f.spec(), opt.support);
    res.enumeration_stable = sup.enumeration_stable;
    res.support_radius = sup.final_radius;

    std::size_t top = 0;
    for (const auto& e : sup.entries) top = std::max(top, e.i);
    res.basis.assign(top + 1, {});
    res.diff.assign(top + 1, {});

    for (const auto& e : sup.entries) {
        if (e.i != 0) continue;
        for (std::size_t ord = 0; ord < e.rank; ++ord) {
            res.basis[0].push_back(ResBasis{e.rep, ord});
            res.diff[0].push_back({});
        }
        attach_homology(res, f, 0, e.rep, e.rank);
    }

    KernelMemo<F> memo;
    for (std::size_t lev = 1; lev <= top; ++lev) {
        for (const auto& e : sup.entries) {
            if (e.i != lev) continue;
            auto sel = select_generators(res, f, lev, e.rep,
                                         [&](std::size_t l, const Vec& c) {
                                             return slice_kernel(res, f, memo, l, c);
                                         });
            if (sel.chosen.size() != e.rank)
                throw RankMismatchError(lev, e.rep, e.rank, sel.chosen.size());
            for (std::size_t ord = 0; ord < sel.chosen.size(); ++ord) {
                res.basis[lev].push_back(ResBasis{e.rep, ord});
                res.diff[lev].push_back(terms_of(res, f, lev, e.rep, sel, sel.chosen[ord]));
            }
            attach_homology(res, f, lev, e.rep, e.rank);
        }
    }
    return res;
}

template <class F>
void rebuild_homology(EquivariantResolution<F>& res) {
    res.homology.clear();
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
        std::size_t lo = 0;
        while (lo < res.basis[i].size()) {
            std::size_t hi = lo;
            while (hi < res.basis[i].size() && res.basis[i][hi].rep == res.basis[i][lo].rep) ++hi;
            attach_homology(res, res.field, i, res.basis[i][lo].rep, hi - lo);
            lo = hi;
        }
    }
}

// ---- face-indexed matrix views --------------------------------------------

template <class F>
SylvanMatrixView<F> sylvan_matrix_view(const EquivariantResolution<F>& res, std::size_t i,
                                       const Vec& alpha, const Vec& beta,
                                       const std::optional<Community>& community) {
    const auto& m = res.module;
    const F& f = res.field;
    if (alpha.size() != m.n() || beta.size() != m.n())
        throw std::invalid_argument("degree length does not match the module");

    SylvanMatrixView<F> view;
    view.i = i;
    const Vec a = m.degree_normal_form(alpha);
    const Vec b = m.degree_normal_form(beta);
    view.alpha = a;
    view.beta = b;

    std::vector<std::size_t> targets, sources;
    if (i < res.basis.size())
        for (std::size_t j = 0; j < res.basis[i].size(); ++j)
            if (res.basis[i][j].rep == a) targets.push_back(j);
    if (i + 1 < res.basis.size())
        for (std::size_t s = 0; s < res.basis[i + 1].size(); ++s)
            if (res.basis[i + 1][s].rep == b) sources.push_back(s);
    if (targets.empty() || sources.empty())
        throw std::invalid_argument("no differential block between " + vec_to_string(alpha) +
                                    " and " + vec_to_string(beta) + " at i=" + std::to_string(i));

    // The pair (alpha, beta) selects the single translate with
    // rep_target + ell + (beta - b) == alpha.
    const Vec need = sub(sub(alpha, a), sub(beta, b));
    FMat<F> block(targets.size(), sources.size());
    for (std::size_t s = 0; s < sources.size(); ++s) {
        for (const auto& t : res.diff[i + 1][sources[s]]) {
            if (!(res.basis[i][t.target].rep == a) || t.ell != need) continue;
            const std::size_t r = res.basis[i][t.target].ordinal;
            block(r, s) = f.add(block(r, s), t.coeff);
        }
    }

    const auto& ha = res.homology.at(a);
    const auto& hb = res.homology.at(b);
    view.rows = ha.complex.faces(static_cast<int>(i) - 1);
    view.cols = hb.complex.faces(static_cast<int>(i));

    auto wreps = ha.cycles.at(i);
    const auto& zreps = hb.cycles.at(i + 1);
    if (community) {
        if (!validate_community(ha.complex, *community))
            throw std::invalid_argument("community is not valid for the target complex");
        wreps = recoordinatize(f, ha.complex, i, wreps, community->hedges[i].stakes);
    }

    FMat<F> wm(view.rows.size(), wreps.size());
    for (std::size_t c = 0; c < wreps.size(); ++c)
        for (std::size_t r = 0; r < view.rows.size(); ++r) wm(r, c) = wreps[c][r];
    FMat<F> zm(view.cols.size(), zreps.size());
    for (std::size_t c = 0; c < zreps.size(); ++c)
        for (std::size_t r = 0; r < view.cols.size(); ++r) zm(r, c) = zreps[c][r];

    auto y = fleft_inverse(f, zm);
    if (!y) throw std::logic_error("homology representatives are dependent");
    view.d = fmat_mul(f, wm, fmat_mul(f, block, *y));
    view.block = std::move(block);
    return view;
}

// ---- equivariance audit ---------------------------------------------------

template <class F>
EquivarianceReport check_equivariance(const EquivariantResolution<F>& res,
                                      std::size_t samples_per_element, std::uint64_t seed) {
    EquivarianceReport report;
    const auto& m = res.module;
    if (!m.is_lattice() || m.lattice().basis().empty()) return report;  // no translates to vary
    const auto& lat = m.lattice();
    const F& f = res.field;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_ell = [&]() {
        Vec ell = zero_vec(m.n());
        for (const auto& bv : lat.basis()) {
            const int c = coeff(rng);
            for (std::size_t j = 0; j < ell.size(); ++j) ell[j] += Int(c) * bv[j];
        }
        return ell;
    };

    for (std::size_t lev = 1; lev < res.basis.size(); ++lev) {
        std::size_t lo = 0;
        while (lo < res.basis[lev].size()) {
            std::size_t hi = lo;
            while (hi < res.basis[lev].size() && res.basis[lev][hi].rep == res.basis[lev][lo].rep)
                ++hi;
            const Vec& b = res.basis[lev][lo].rep;
            for (std::size_t s = 0; s < samples_per_element; ++s) {
                const Vec ell = random_ell();
                const Vec b2 = add(b, ell);
                ++report.samples;

                if (!(koszul_complex(m, b2, false) == koszul_complex(m, b, false))) {
                    report.pass = false;
                    report.failures.push_back("koszul complexes differ at " +
                                              describe_degree(b, ell));
                    continue;
                }

                bool ok = true;
                try {
                    auto sel = select_generators(res, f, lev, b2,
                                                 [&](std::size_t l, const Vec& c) {
                                                     return slice_kernel_raw(res, f, l, c);
                                                 });
                    ok = sel.chosen.size() == hi - lo;
                    for (std::size_t ord = 0; ok && ord < sel.chosen.size(); ++ord) {
                        auto terms = terms_of(res, f, lev, b2, sel, sel.chosen[ord]);
                        for (auto& t : terms) t.ell = sub(t.ell, ell);  // shift back to the rep
                        ok = terms == res.diff[lev][lo + ord];
                    }
                } catch (const std::exception&) {
                    // stored terms that no longer assemble into slices count as
                    // a failed audit, not a crash
                    ok = false;
                }
                if (!ok) {
                    report.pass = false;
                    report.failures.push_back("lift-and-solve differs at level " +
                                              std::to_string(lev) + ", " + describe_degree(b, ell));
                }
            }
            lo = hi;
        }
    }
    return report;
}

// ---- instantiations -------------------------------------------------------

template EquivariantResolution<QField> resolve_equivariant(const MonomialModule&, const QField&,
                                                           const ResolveOptions&);
template EquivariantResolution<Fp64Field> resolve_equivariant(const MonomialModule&,
                                                              const Fp64Field&,
                                                              const ResolveOptions&);
template SylvanMatrixView<QField> sylvan_matrix_view(const EquivariantResolution<QField>&,
                                                     std::size_t, const Vec&, const Vec&,
                                                     const std::optional<Community>&);
template SylvanMatrixView<Fp64Field> sylvan_matrix_view(const EquivariantResolution<Fp64Field>&,
                                                        std::size_t, const Vec&, const Vec&,
                                                        const std::optional<Community>&);
template EquivarianceReport check_equivariance(const EquivariantResolution<QField>&, std::size_t,
                                               std::uint64_t);
template EquivarianceReport check_equivariance(const EquivariantResolution<Fp64Field>&,
                                               std::size_t, std::uint64_t);
template void rebuild_homology(EquivariantResolution<QField>&);
template void rebuild_homology(EquivariantResolution<Fp64Field>&);

}  // namespace latres
