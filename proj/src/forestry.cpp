#include "latres/forestry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace latres {

namespace {

// Incremental row-reduction oracle over Q for independence testing.
struct Elim {
    std::vector<std::vector<Rat>> reduced;
    std::vector<std::size_t> pivots;

    bool try_add(std::vector<Rat> v) {
        for (std::size_t t = 0; t < reduced.size(); ++t) {
            const Rat& c = v[pivots[t]];
            if (c == 0) continue;
            const Rat f = c;  // reduced rows are normalized to pivot 1
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * reduced[t][j];
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0) {
                const Rat inv = 1 / v[j];
                for (auto& x : v) x *= inv;
                pivots.push_back(j);
                reduced.push_back(std::move(v));
                return true;
            }
        }
        return false;
    }
};

std::vector<Rat> to_rat(const Vec& v) {
    std::vector<Rat> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

// All maximal independent subsets (matroid bases) of the vectors, as index
// sets in lexicographic order.
std::vector<std::vector<std::size_t>> matroid_bases(const std::vector<Vec>& vecs) {
    std::size_t rank = 0;
    {
        Elim e;
        for (const auto& v : vecs)
            if (e.try_add(to_rat(v))) ++rank;
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, const Elim&)> dfs = [&](std::size_t start, const Elim& state) {
        if (chosen.size() == rank) {
            out.push_back(chosen);
            return;
        }
        for (std::size_t j = start; j < vecs.size(); ++j) {
            if (vecs.size() - j < rank - chosen.size()) break;  // not enough left
            Elim next = state;
            if (!next.try_add(to_rat(vecs[j]))) continue;
            chosen.push_back(j);
            dfs(j + 1, next);
            chosen.pop_back();
        }
    };
    dfs(0, Elim{});
    return out;
}

std::vector<Vec> matrix_columns(const IntMat& a) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.col(j));
    return cols;
}

std::vector<Vec> matrix_rows(const IntMat& a) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    return rows;
}

std::vector<std::vector<FaceMask>> faces_at(const std::vector<FaceMask>& faces,
                                            const std::vector<std::vector<std::size_t>>& bases) {
    std::vector<std::vector<FaceMask>> out;
    out.reserve(bases.size());
    for (const auto& b : bases) {
        std::vector<FaceMask> f;
        f.reserve(b.size());
        for (std::size_t idx : b) f.push_back(faces[idx]);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::size_t> face_indices(const std::vector<FaceMask>& all,
                                      const std::vector<FaceMask>& subset, const char* what) {
    std::vector<std::size_t> idx;
    for (FaceMask f : subset) {
        auto it = std::lower_bound(all.begin(), all.end(), f, face_lex_less);
        if (it == all.end() || *it != f)
            throw std::invalid_argument(std::string("face is not in the complex at this dimension: ") +
                                        what);
        idx.push_back(std::size_t(it - all.begin()));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.size() != subset.size()) throw std::invalid_argument("repeated face in set");
    return idx;
}

}  // namespace

std::vector<std::vector<FaceMask>> shrubberies(const SimplicialComplex& k, int i) {
    IntMat d = boundary_matrix(k, i);
    return faces_at(k.faces(i), matroid_bases(matrix_columns(d)));
}

std::vector<std::vector<FaceMask>> stake_sets(const SimplicialComplex& k, int i) {
    IntMat d = boundary_matrix(k, i);
    return faces_at(k.faces(i - 1), matroid_bases(matrix_rows(d)));
}

Int tau_index(const SimplicialComplex& k, int i, const std::vector<FaceMask>& t) {
    IntMat d = boundary_matrix(k, i);
    std::vector<std::size_t> idx = face_indices(k.faces(i), t, "shrubbery");
    const std::size_t r = rank_z(d);
    if (idx.size() != r)
        throw std::invalid_argument("not a shrubbery: boundaries are not a column basis");
    if (r == 0) return 1;
    IntMat sub = d.select_cols(idx);
    if (rank_z(sub) != r)
        throw std::invalid_argument("not a shrubbery: boundaries are not a column basis");
    return subgroup_index(d, sub).index;
}

Int sigma_index(const SimplicialComplex& k, int i, const std::vector<FaceMask>& s) {
    IntMat d = boundary_matrix(k, i);
    std::vector<std::size_t> idx = face_indices(k.faces(i - 1), s, "stake set");
    const std::size_t r = rank_z(d);
    if (idx.size() != r)
        throw std::invalid_argument("not a stake set: projection is not injective on the image");
    if (r == 0) return 1;
    IntMat sub = d.select_rows(idx);
    if (rank_z(sub) != r)
        throw std::invalid_argument("not a stake set: projection is not injective on the image");
    if (sub.rows() == sub.cols()) {
        Int det_val = det(sub);
        return det_val >= 0 ? det_val : -det_val;  // nonzero: rank checked
    }
    return subgroup_index(IntMat::identity(sub.rows()), sub).index;
}

ForestInvariants forest_invariants(const SimplicialComplex& k) {
    ForestInvariants out;
    if (k.is_void()) return out;
    const int dim = k.dim();
    for (int i = 0; i <= dim; ++i) {
        Int tau_sum = 0;
        for (const auto& t : shrubberies(k, i)) {
            Int ti = tau_index(k, i, t);
            tau_sum += ti * ti;
        }
        Int sigma_sum = 0;
        for (const auto& s : stake_sets(k, i)) {
            Int si = sigma_index(k, i, s);
            sigma_sum += si * si;
        }
        out.tau.push_back(tau_sum);
        out.sigma.push_back(sigma_sum);
    }
    for (int i = -1; i <= dim; ++i)
        out.torsion_orders.push_back(integral_homology(k, i).chain_torsion_order);
    auto absorb = [&](const Int& v) {
        if (v == 1 || v == 0) return;
        for (const Int& p : prime_factors(v)) out.bad_primes.insert(p);
    };
    for (const auto& v : out.tau) absorb(v);
    for (const auto& v : out.sigma) absorb(v);
    for (const auto& v : out.torsion_orders) absorb(v);
    return out;
}

std::set<Int> bad_primes_for_module(const MonomialModule& m, const std::vector<Vec>& degrees) {
    std::map<std::vector<FaceMask>, std::set<Int>> memo;
    std::set<Int> out;
    for (const Vec& b : degrees) {
        SimplicialComplex k = koszul_complex(m, b);
        auto key = k.all_faces();
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, forest_invariants(k).bad_primes).first;
        out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

Community default_community(const SimplicialComplex& k) {
    Community c;
    if (k.is_void()) return c;
    const int dim = k.dim();
    // Per dimension i, T_i (shrubbery of ∂_i) and S_i (stake set of ∂_{i+1})
    // must be disjoint; choices of different dimensions are independent.
    std::vector<std::vector<FaceMask>> chosen_t(dim + 2), chosen_s(dim + 2);
    // S_{-1} pairs with T_{-1} = ∅: lex-least stake set of ∂_0.
    std::vector<FaceMask> s_before;
    {
        auto ss = stake_sets(k, 0);
        if (ss.empty()) throw std::runtime_error("no stake set for the augmentation boundary");
        s_before = ss.front();
    }
    for (int i = 0; i <= dim; ++i) {
        auto ts = shrubberies(k, i);
        auto ss = stake_sets(k, i + 1);
        bool done = false;
        for (const auto& t : ts) {
            for (const auto& s : ss) {
                bool disjoint = true;
                for (FaceMask f : t)
                    if (std::find(s.begin(), s.end(), f) != s.end()) {
                        disjoint = false;
                        break;
                    }
                if (disjoint) {
                    chosen_t[i] = t;
                    chosen_s[i] = s;
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
        if (!done)
            throw std::runtime_error("no community: every shrubbery meets every stake set at dimension " +
                                     std::to_string(i));
    }
    chosen_t[dim + 1] = {};  // ∂_{dim+1} has rank zero
    for (int i = 0; i <= dim + 1; ++i) {
        Hedge h;
        h.i = i;
        h.stakes = (i == 0) ? s_before : chosen_s[i - 1];
        h.shrubs = chosen_t[i];
        c.hedges.push_back(std::move(h));
    }
    return c;
}

bool validate_community(const SimplicialComplex& k, const Community& c) {
    if (k.is_void()) return c.hedges.empty();
    const int dim = k.dim();
    if (c.hedges.size() != std::size_t(dim + 2)) return false;
    for (int i = 0; i <= dim + 1; ++i) {
        const Hedge& h = c.hedges[i];
        if (h.i != i) return false;
        try {
            tau_index(k, i, h.shrubs);
            sigma_index(k, i, h.stakes);
        } catch (const std::invalid_argument&) {
            return false;
        }
        if (i <= dim) {
            const Hedge& next = c.hedges[i + 1];
            for (FaceMask f : h.shrubs)
                if (std::find(next.stakes.begin(), next.stakes.end(), f) != next.stakes.end())
                    return false;
        }
    }
    return true;
}

}  // namespace latres
