#include "latres/descent.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

namespace latres {

// ---- polynomial arithmetic ------------------------------------------------

template <class F>
Poly<F> poly_add(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> out;
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() ||
            (i < a.terms.size() && lex_less(a.terms[i].first, b.terms[j].first))) {
            out.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || lex_less(b.terms[j].first, a.terms[i].first)) {
            out.terms.push_back(b.terms[j++]);
        } else {
            const auto c = f.add(a.terms[i].second, b.terms[j].second);
            if (!f.is_zero(c)) out.terms.emplace_back(a.terms[i].first, c);
            ++i, ++j;
        }
    }
    return out;
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
    std::map<Vec, typename F::Elem> acc;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            const Vec e = add(ea, eb);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(e, f.mul(ca, cb));
            else
                it->second = f.add(it->second, f.mul(ca, cb));
        }
    Poly<F> out;
    for (auto& [e, c] : acc)
        if (!f.is_zero(c)) out.terms.emplace_back(e, c);
    return out;
}

template <class F>
Poly<F> poly_neg(const F& f, const Poly<F>& a) {
    Poly<F> out = a;
    for (auto& t : out.terms) t.second = f.neg(t.second);
    return out;
}

template <class F>
std::string poly_to_string(const F& f, const Poly<F>& p) {
    if (p.terms.empty()) return "0";
    std::string s;
    bool first = true;
    // display order: leading terms (descending exponent lex) first
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool plus = f.eq(c, f.one());
        const bool minus = !plus && f.eq(c, f.neg(f.one()));
        std::string mono;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(j + 1);
            if (e[j] > 1) mono += "^" + e[j].get_str();
        }
        std::string coeff;
        if ((plus || minus) && !mono.empty()) {
            coeff = "";
        } else {
            coeff = f.to_string(minus ? f.neg(c) : c);
            if (!mono.empty()) coeff += "*";
        }
        if (first) {
            s += (minus ? "-" : "") + coeff + mono;
            first = false;
        } else {
            s += (minus ? " - " : " + ") + coeff + mono;
        }
    }
    return s;
}

// ---- descent --------------------------------------------------------------

template <class F>
DescendedResolution<F> descend(const EquivariantResolution<F>& res) {
    DescendedResolution<F> out(res.field, res.module);
    out.basis = res.basis;
    out.enumeration_stable = res.enumeration_stable;
    out.support_radius = res.support_radius;
    out.mats.reserve(res.basis.size());
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
        if (i == 0) {
            out.mats.emplace_back(0, res.basis[0].size());
            continue;
        }
        Mat<Poly<F>> m(res.basis[i - 1].size(), res.basis[i].size());
        for (std::size_t u = 0; u < res.basis[i].size(); ++u) {
            for (const auto& t : res.diff[i][u]) {
                const Vec e = sub(sub(res.basis[i][u].rep, res.basis[i - 1][t.target].rep), t.ell);
                m(t.target, u).terms.emplace_back(e, t.coeff);
            }
            for (std::size_t v = 0; v < res.basis[i - 1].size(); ++v)
                std::sort(m(v, u).terms.begin(), m(v, u).terms.end(),
                          [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
        }
        out.mats.push_back(std::move(m));
    }
    return out;
}

template <class F>
std::vector<Poly<F>> minimal_generators(const DescendedResolution<F>& desc) {
    if (!desc.module.is_lattice())
        throw std::invalid_argument("minimal generators of the ideal need a lattice module");
    std::vector<Poly<F>> gens;
    if (desc.mats.size() < 2) return gens;
    const auto& m1 = desc.mats[1];
    for (std::size_t u = 0; u < m1.cols(); ++u) gens.push_back(m1(0, u));
    return gens;
}

// ---- local checks ---------------------------------------------------------

template <class F>
bool verify_square_zero(const DescendedResolution<F>& desc, std::string* witness) {
    const F& f = desc.field;
    for (std::size_t i = 2; i < desc.mats.size(); ++i) {
        const auto& a = desc.mats[i - 1];
        const auto& b = desc.mats[i];
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                Poly<F> s;
                for (std::size_t k = 0; k < a.cols(); ++k)
                    s = poly_add(f, s, poly_mul(f, a(r, k), b(k, c)));
                if (!s.is_zero()) {
                    if (witness)
                        *witness = "d_" + std::to_string(i - 1) + " d_" + std::to_string(i) +
                                   " has nonzero entry (" + std::to_string(r) + "," +
                                   std::to_string(c) + ") = " + poly_to_string(f, s);
                    return false;
                }
            }
    }
    return true;
}

template <class F>
bool verify_minimal(const DescendedResolution<F>& desc, std::string* witness) {
    for (std::size_t i = 1; i < desc.mats.size(); ++i) {
        const auto& m = desc.mats[i];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                for (const auto& t : m(r, c).terms)
                    if (is_zero(t.first)) {
                        if (witness)
                            *witness = "d_" + std::to_string(i) + " entry (" + std::to_string(r) +
                                       "," + std::to_string(c) + ") has a constant term";
                        return false;
                    }
    }
    return true;
}

// ---- exactness ------------------------------------------------------------

namespace {

// Monomials w >= 0 with rep + w in the degree class of rep + c0, i.e. the
// fiber of that class over the basis element; via lattice points below c0.
std::vector<Vec> fiber_monomials(const MonomialModule& m, const Vec& c0) {
    std::vector<Vec> out;
    if (m.is_lattice()) {
        for (const auto& ell : m.lattice().points_below(c0)) out.push_back(sub(c0, ell));
        std::sort(out.begin(), out.end(), lex_less);
    } else if (geq_zero(c0)) {
        out.push_back(c0);
    }
    return out;
}

using DegPair = std::pair<std::size_t, Vec>;  // (basis index, monomial)

std::vector<DegPair> degree_pairs(const MonomialModule& m,
                                  const std::vector<ResBasis>& level, const Vec& g) {
    std::vector<DegPair> out;
    for (std::size_t u = 0; u < level.size(); ++u)
        for (auto& w : fiber_monomials(m, sub(g, level[u].rep))) out.emplace_back(u, w);
    return out;
}

std::size_t degree_pair_index(const std::vector<DegPair>& pairs, const DegPair& key) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), key,
                               [](const DegPair& a, const DegPair& b) {
                                   if (a.first != b.first) return a.first < b.first;
                                   return lex_less(a.second, b.second);
                               });
    if (it == pairs.end() || it->first != key.first || it->second != key.second)
        throw std::logic_error("degree pair lookup failed");
    return static_cast<std::size_t>(it - pairs.begin());
}

// All points of N^n with d-value <= dmax, in DFS order.
void each_point_below(const Vec& d, const Int& dmax,
                      const std::function<void(const Vec&)>& fn) {
    const std::size_t n = d.size();
    Vec w = zero_vec(n);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t j, Int left) {
        if (j == n) {
            fn(w);
            return;
        }
        for (Int v = 0; v * d[j] <= left; v += 1) {
            w[j] = v;
            rec(j + 1, left - v * d[j]);
        }
        w[j] = 0;
    };
    if (dmax >= 0) rec(0, dmax);
}

}  // namespace

template <class F>
std::vector<ExactnessDegree> verify_exact_up_to(const DescendedResolution<F>& desc,
                                                const Int& dmax, std::size_t jobs) {
    const F& f = desc.field;
    const MonomialModule& m = desc.module;
    const Vec& d = m.grading();

    // candidate classes: every class met by N^n, and for generated modules
    // also every class met by shifted generator orthants
    std::map<Vec, Vec> lifts;  // class coordinates -> representative degree
    auto cls_of = [&](const Vec& g) { return m.is_lattice() ? m.lattice().quotient().project(g) : g; };
    each_point_below(d, dmax, [&](const Vec& w) { lifts.emplace(cls_of(w), w); });
    if (!m.is_lattice()) {
        for (const auto& level : desc.basis)
            for (const auto& e : level) {
                const Int left = dmax - m.degree_value(e.rep);
                each_point_below(d, left,
                                 [&](const Vec& w) { lifts.emplace(add(e.rep, w), add(e.rep, w)); });
            }
    }

    std::vector<ExactnessDegree> out;
    out.reserve(lifts.size());
    for (auto& [cls, g] : lifts) {
        ExactnessDegree e;
        e.cls = cls;
        e.lift = g;
        e.dval = m.degree_value(g);
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const ExactnessDegree& a, const ExactnessDegree& b) {
        if (a.dval != b.dval) return a.dval < b.dval;
        return lex_less(a.cls, b.cls);
    });

    auto run_one = [&](ExactnessDegree& e) {
        const std::size_t levels = desc.basis.size();
        std::vector<std::vector<DegPair>> pairs(levels);
        for (std::size_t i = 0; i < levels; ++i) pairs[i] = degree_pairs(m, desc.basis[i], e.lift);
        std::vector<std::size_t> ranks(levels + 1, 0);
        for (std::size_t i = 1; i < levels; ++i) {
            FMat<F> a(pairs[i - 1].size(), pairs[i].size());
            for (std::size_t c = 0; c < pairs[i].size(); ++c) {
                const auto& [u, uw] = pairs[i][c];
                for (std::size_t v = 0; v < desc.basis[i - 1].size(); ++v) {
                    for (const auto& t : desc.mats[i](v, u).terms) {
                        const std::size_t r =
                            degree_pair_index(pairs[i - 1], DegPair{v, add(uw, t.first)});
                        a(r, c) = t.second;
                    }
                }
            }
            ranks[i] = frank(f, a);
        }
        e.dims.resize(levels);
        for (std::size_t i = 0; i < levels; ++i) e.dims[i] = pairs[i].size();
        e.homology.resize(levels);
        e.expected_h0 = m.member(e.lift) ? 1 : 0;
        e.homology[0] = e.dims[0] - ranks[1];
        for (std::size_t i = 1; i < levels; ++i) e.homology[i] = e.dims[i] - ranks[i] - ranks[i + 1];
        e.pass = e.homology[0] == e.expected_h0;
        for (std::size_t i = 1; i < levels; ++i) e.pass = e.pass && e.homology[i] == 0;
    };

    if (jobs <= 1 || out.size() < 2) {
        for (auto& e : out) run_one(e);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= out.size()) return;
                run_one(out[k]);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(jobs, out.size()); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

template <class F>
Int default_exactness_bound(const DescendedResolution<F>& desc) {
    const MonomialModule& m = desc.module;
    Int basis_max = 0;
    for (const auto& level : desc.basis)
        for (const auto& e : level) basis_max = std::max(basis_max, m.degree_value(e.rep));
    Int col_max = 0;
    if (desc.mats.size() > 1) {
        const auto& m1 = desc.mats[1];
        for (std::size_t r = 0; r < m1.rows(); ++r)
            for (std::size_t c = 0; c < m1.cols(); ++c)
                for (const auto& t : m1(r, c).terms)
                    col_max = std::max(col_max, dot(m.grading(), t.first));
    }
    return basis_max + col_max;
}

template <class F>
bool betti_crosscheck(const DescendedResolution<F>& desc, std::string* witness) {
    const BettiSupport sup = betti_support(desc.module, desc.field.spec());
    std::map<std::pair<std::size_t, Vec>, std::size_t> have;
    for (std::size_t i = 0; i < desc.basis.size(); ++i)
        for (const auto& e : desc.basis[i]) ++have[{i, e.rep}];
    std::map<std::pair<std::size_t, Vec>, std::size_t> want;
    for (const auto& e : sup.entries) want[{e.i, e.rep}] = e.rank;
    if (have == want) return true;
    if (witness) {
        for (const auto& [k, v] : want)
            if (!have.count(k) || have[{k.first, k.second}] != v) {
                *witness = "betti mismatch at i=" + std::to_string(k.first) + " degree " +
                           vec_to_string(k.second) + ": resolution " +
                           std::to_string(have.count(k) ? have[{k.first, k.second}] : 0) +
                           " vs recomputed " + std::to_string(v);
                return false;
            }
        for (const auto& [k, v] : have)
            if (!want.count(k)) {
                *witness = "betti mismatch at i=" + std::to_string(k.first) + " degree " +
                           vec_to_string(k.second) + ": resolution " + std::to_string(v) +
                           " vs recomputed 0";
                return false;
            }
    }
    return false;
}

template <class F>
VerificationReport verify(const DescendedResolution<F>& desc, const VerifyOptions& opt) {
    VerificationReport rep;
    rep.certified = desc.enumeration_stable;
    rep.bound = opt.dmax ? *opt.dmax : default_exactness_bound(desc);

    std::string w;
    rep.square_zero = verify_square_zero(desc, &w);
    if (!rep.square_zero) rep.witnesses.push_back(w);
    rep.minimal = verify_minimal(desc, &w);
    if (!rep.minimal) rep.witnesses.push_back(w);

    rep.degrees = verify_exact_up_to(desc, rep.bound, opt.jobs);
    rep.exact = true;
    for (const auto& e : rep.degrees) {
        if (e.pass) continue;
        rep.exact = false;
        std::string h = "[";
        for (std::size_t i = 0; i < e.homology.size(); ++i)
            h += (i ? "," : "") + std::to_string(e.homology[i]);
        h += "]";
        rep.witnesses.push_back("exactness fails at class " + vec_to_string(e.cls) + " (lift " +
                                vec_to_string(e.lift) + "): homology " + h + ", expected h0 " +
                                std::to_string(e.expected_h0));
        if (rep.witnesses.size() > 8) break;
    }

    rep.betti_ok = betti_crosscheck(desc, &w);
    if (!rep.betti_ok) rep.witnesses.push_back(w);
    return rep;
}

// ---- instantiations -------------------------------------------------------

#define LATRES_DESCENT_INSTANCES(FIELD)                                                      \
    template Poly<FIELD> poly_add(const FIELD&, const Poly<FIELD>&, const Poly<FIELD>&);     \
    template Poly<FIELD> poly_mul(const FIELD&, const Poly<FIELD>&, const Poly<FIELD>&);     \
    template Poly<FIELD> poly_neg(const FIELD&, const Poly<FIELD>&);                         \
    template std::string poly_to_string(const FIELD&, const Poly<FIELD>&);                   \
    template DescendedResolution<FIELD> descend(const EquivariantResolution<FIELD>&);        \
    template std::vector<Poly<FIELD>> minimal_generators(const DescendedResolution<FIELD>&); \
    template bool verify_square_zero(const DescendedResolution<FIELD>&, std::string*);       \
    template bool verify_minimal(const DescendedResolution<FIELD>&, std::string*);           \
    template std::vector<ExactnessDegree> verify_exact_up_to(const DescendedResolution<FIELD>&, \
                                                             const Int&, std::size_t);       \
    template Int default_exactness_bound(const DescendedResolution<FIELD>&);                 \
    template bool betti_crosscheck(const DescendedResolution<FIELD>&, std::string*);         \
    template VerificationReport verify(const DescendedResolution<FIELD>&, const VerifyOptions&);

LATRES_DESCENT_INSTANCES(QField)
LATRES_DESCENT_INSTANCES(Fp64Field)

}  // namespace latres
