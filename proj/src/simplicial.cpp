#include "latres/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace latres {

std::vector<int> face_vertices(FaceMask f) {
    std::vector<int> out;
    for (int v = 0; v < 32; ++v)
        if (f & (FaceMask(1) << v)) out.push_back(v + 1);
    return out;
}

std::string face_to_string(FaceMask f) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int v : face_vertices(f)) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '}';
    return os.str();
}

bool face_lex_less(FaceMask a, FaceMask b) {
    while (a && b) {
        int va = std::countr_zero(a), vb = std::countr_zero(b);
        if (va != vb) return va < vb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

SimplicialComplex SimplicialComplex::make_void(std::size_t n) {
    SimplicialComplex k;
    k.n_ = n;
    return k;
}

SimplicialComplex SimplicialComplex::from_masks(std::size_t n, const std::vector<FaceMask>& faces) {
    if (n > 32) throw std::invalid_argument("complex: more than 32 vertices");
    SimplicialComplex k;
    k.n_ = n;
    if (faces.empty()) return k;
    std::set<FaceMask> unique(faces.begin(), faces.end());
    int top = -1;
    for (FaceMask f : unique) {
        if (n < 32 && (f >> n) != 0) throw std::invalid_argument("complex: face outside vertex range");
        top = std::max(top, std::popcount(f) - 1);
    }
    k.by_dim_.assign(top + 2, {});
    for (FaceMask f : unique) k.by_dim_[std::popcount(f)].push_back(f);
    for (auto& bucket : k.by_dim_) std::sort(bucket.begin(), bucket.end(), face_lex_less);
    // Closure: every face must be reachable by deleting one vertex at a time.
    for (FaceMask f : unique) {
        FaceMask rest = f;
        while (rest) {
            FaceMask bit = rest & (FaceMask(0) - rest);
            if (!unique.count(f ^ bit)) throw std::invalid_argument("complex: not closed under subsets");
            rest ^= bit;
        }
    }
    if (!unique.count(0)) throw std::invalid_argument("complex: nonvoid but missing the empty face");
    return k;
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t n,
                                                 const std::vector<std::vector<int>>& facets) {
    std::vector<FaceMask> faces;
    for (const auto& facet : facets) {
        FaceMask m = 0;
        for (int v : facet) {
            if (v < 1 || std::size_t(v) > n) throw std::invalid_argument("facet vertex out of range");
            m |= FaceMask(1) << (v - 1);
        }
        FaceMask s = m;
        for (;;) {
            faces.push_back(s);
            if (s == 0) break;
            s = (s - 1) & m;
        }
    }
    return from_masks(n, faces);
}

const std::vector<FaceMask>& SimplicialComplex::faces(int d) const {
    static const std::vector<FaceMask> kEmpty;
    int idx = d + 1;
    if (idx < 0 || std::size_t(idx) >= by_dim_.size()) return kEmpty;
    return by_dim_[idx];
}

bool SimplicialComplex::contains(FaceMask f) const {
    const auto& bucket = faces(std::popcount(f) - 1);
    return std::binary_search(bucket.begin(), bucket.end(), f, face_lex_less);
}

std::vector<FaceMask> SimplicialComplex::all_faces() const {
    std::vector<FaceMask> out;
    for (const auto& bucket : by_dim_) out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

IntMat boundary_matrix(const SimplicialComplex& k, int i) {
    const auto& rows = k.faces(i - 1);
    const auto& cols = k.faces(i);
    IntMat m(rows.size(), cols.size());
    if (rows.empty() || cols.empty()) return m;
    std::map<FaceMask, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        FaceMask f = cols[c];
        int t = 0;
        for (FaceMask rest = f; rest; rest &= rest - 1, ++t) {
            FaceMask bit = rest & (FaceMask(0) - rest);
            m(row_of.at(f ^ bit), c) = (t % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

std::size_t reduced_homology_rank(const SimplicialComplex& k, int i, const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::Rationals) return reduced_homology(k, i, QField{}).rank;
    return reduced_homology(k, i, Fp64Field(spec.p)).rank;
}

IntegralHomology integral_homology(const SimplicialComplex& k, int i) {
    IntegralHomology out;
    if (k.is_void() || i < -1 || i > k.dim()) return out;
    const std::size_t ci = k.face_count(i);
    const std::size_t ri = rank_z(boundary_matrix(k, i));
    SnfResult next = smith_normal_form(boundary_matrix(k, i + 1));
    out.free_rank = ci - ri - next.rank;
    for (const Int& f : next.invariant_factors) {
        out.chain_torsion_order *= f;
        if (f >= 2) out.torsion.push_back(f);
    }
    return out;
}

}  // namespace latres
