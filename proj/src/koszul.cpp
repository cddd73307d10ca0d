#include "latres/koszul.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace latres {

MonomialModule MonomialModule::lattice_module(Lattice l) {
    MonomialModule m;
    m.n_ = l.n();
    m.grading_ = l.grading();
    m.lattice_ = std::move(l);
    return m;
}

MonomialModule MonomialModule::generated_module(std::size_t n, std::vector<Vec> gens) {
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("generator has wrong length");
    if (gens.empty()) throw std::invalid_argument("generated module needs at least one generator");
    // Keep only minimal generators.
    std::sort(gens.begin(), gens.end(), lex_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Vec> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < gens.size() && !dominated; ++j)
            if (j != i && leq(gens[j], gens[i])) dominated = true;
        if (!dominated) minimal.push_back(gens[i]);
    }
    MonomialModule m;
    m.n_ = n;
    m.gens_ = std::move(minimal);
    m.grading_ = Vec(n, Int(1));
    return m;
}

Vec MonomialModule::degree_normal_form(const Vec& b) const {
    return lattice_ ? lattice_->normal_form(b) : b;
}

bool MonomialModule::member(const Vec& c) const {
    if (c.size() != n_) throw std::invalid_argument("member: vector has wrong length");
    if (lattice_) return lattice_->any_point_below(c);
    for (const auto& g : gens_)
        if (leq(g, c)) return true;
    return false;
}

SimplicialComplex koszul_complex(const MonomialModule& m, const Vec& b, bool use_memo) {
    const std::size_t n = m.n();
    if (b.size() != n) throw std::invalid_argument("koszul_complex: degree has wrong length");
    if (n > 32) throw std::invalid_argument("koszul_complex: too many variables");

    Vec key;
    if (use_memo && m.is_lattice()) {
        key = m.degree_normal_form(b);
        std::lock_guard<std::mutex> lock(m.memo_->mu);
        auto it = m.memo_->table.find(key);
        if (it != m.memo_->table.end()) return it->second;
    }

    // Build faces in order of size; τ can only be a face when all its
    // one-smaller subsets are (the complex is downward closed).
    std::vector<FaceMask> faces;
    std::set<FaceMask> present;
    if (m.member(b)) {
        faces.push_back(0);
        present.insert(0);
        for (std::size_t size = 1; size <= n; ++size) {
            bool any = false;
            // All masks of the given popcount.
            for (FaceMask f = (n == 32 && size == 32) ? ~FaceMask(0) : ((FaceMask(1) << size) - 1);;) {
                bool children_in = true;
                for (FaceMask rest = f; rest && children_in; rest &= rest - 1)
                    if (!present.count(f ^ (rest & (FaceMask(0) - rest)))) children_in = false;
                if (children_in) {
                    Vec c = b;
                    for (int v = 0; v < int(n); ++v)
                        if (f & (FaceMask(1) << v)) c[v] -= 1;
                    if (m.member(c)) {
                        faces.push_back(f);
                        present.insert(f);
                        any = true;
                    }
                }
                // next mask with the same popcount (Gosper); stop past n bits
                FaceMask c0 = f & (FaceMask(0) - f);
                FaceMask r = f + c0;
                if (r == 0) break;
                f = (((f ^ r) >> 2) / c0) | r;
                if (n < 32 && (f >> n) != 0) break;
            }
            if (!any) break;
        }
    }
    SimplicialComplex k =
        faces.empty() ? SimplicialComplex::make_void(n) : SimplicialComplex::from_masks(n, faces);

    if (use_memo && m.is_lattice()) {
        std::lock_guard<std::mutex> lock(m.memo_->mu);
        m.memo_->table.emplace(std::move(key), k);
    }
    return k;
}

std::size_t betti_number(const MonomialModule& m, std::size_t i, const Vec& b,
                         const FieldSpec& field) {
    return reduced_homology_rank(koszul_complex(m, b), int(i) - 1, field);
}

namespace {

// Evaluate Prop-2.1 homology at each new representative degree; returns how
// many entries were added.
std::size_t collect_entries(const MonomialModule& m, const FieldSpec& field,
                            const std::vector<Vec>& candidates, std::set<Vec>& processed,
                            std::map<std::pair<std::size_t, Vec>, BettiEntry>& out) {
    std::size_t added = 0;
    for (const Vec& rep : candidates) {
        if (!processed.insert(rep).second) continue;
        SimplicialComplex k = koszul_complex(m, rep);
        for (std::size_t i = 0; i <= m.n(); ++i) {
            std::size_t rank = reduced_homology_rank(k, int(i) - 1, field);
            if (rank == 0) continue;
            BettiEntry e;
            e.i = i;
            e.rep = rep;
            e.coset = m.is_lattice() ? m.lattice().quotient().project(rep) : rep;
            e.rank = rank;
            out.emplace(std::make_pair(i, rep), std::move(e));
            ++added;
        }
    }
    return added;
}

// Normal forms of joins of subsets of the points, anchored at zero, with at
// most max_extra points beyond the anchor.
std::vector<Vec> join_candidates(const MonomialModule& m, const std::vector<Vec>& points,
                                 std::size_t max_extra) {
    std::set<Vec> seen;
    std::vector<Vec> reps;
    std::function<void(std::size_t, const Vec&, std::size_t)> rec =
        [&](std::size_t start, const Vec& acc, std::size_t used) {
            Vec rep = m.degree_normal_form(acc);
            if (seen.insert(rep).second) reps.push_back(rep);
            if (used == max_extra) return;
            for (std::size_t t = start; t < points.size(); ++t)
                rec(t + 1, join(acc, points[t]), used + 1);
        };
    rec(0, zero_vec(m.n()), 0);
    return reps;
}

}  // namespace

BettiSupport betti_support(const MonomialModule& m, const FieldSpec& field,
                           const BettiSupportOptions& opt) {
    BettiSupport out;
    std::map<std::pair<std::size_t, Vec>, BettiEntry> found;
    std::set<Vec> processed;

    if (!m.is_lattice()) {
        // Joins of at most n+1 generators cover every Betti degree: any join
        // is already a join of one witness generator per coordinate.
        std::set<Vec> seen;
        std::vector<Vec> reps;
        const auto& gens = m.gens();
        std::function<void(std::size_t, const Vec&, std::size_t)> rec =
            [&](std::size_t start, const Vec& acc, std::size_t used) {
                if (used > 0 && seen.insert(acc).second) reps.push_back(acc);
                if (used == m.n() + 1) return;
                for (std::size_t t = start; t < gens.size(); ++t)
                    rec(t + 1, join(acc, gens[t]), used + 1);
            };
        rec(0, zero_vec(m.n()), 0);
        collect_entries(m, field, reps, processed, found);
    } else {
        const Lattice& l = m.lattice();
        Int r0 = 1;
        for (const auto& bvec : l.basis())
            for (const auto& x : bvec)
                if (abs(x) > r0) r0 = abs(x);
        r0 *= 2;
        if (opt.initial_radius) r0 = *opt.initial_radius;
        const Int cap = r0 * opt.cap_multiplier;

        int quiet = 0;
        for (Int radius = r0;; radius += 1) {
            Vec lo(l.n(), -radius), hi(l.n(), radius);
            std::vector<Vec> reps = join_candidates(m, l.points_in_box(lo, hi), m.n());
            std::size_t added = collect_entries(m, field, reps, processed, found);
            out.final_radius = radius;
            quiet = (added == 0) ? quiet + 1 : 0;
            if (quiet >= 2) break;
            if (radius >= cap) {
                out.enumeration_stable = false;
                break;
            }
        }
    }

    for (auto& [key, e] : found) out.entries.push_back(std::move(e));
    std::sort(out.entries.begin(), out.entries.end(), [](const BettiEntry& a, const BettiEntry& b) {
        if (a.i != b.i) return a.i < b.i;
        return lex_less(a.rep, b.rep);
    });
    return out;
}

}  // namespace latres
