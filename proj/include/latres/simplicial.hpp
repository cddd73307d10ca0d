// Simplicial complexes on vertices {1..n} (n <= 32, faces as bitmasks) with
// reduced chain complexes, integer boundary matrices, and exact reduced
// homology over the rationals, prime fields, and the integers.
//
// The void complex (no faces) and the irrelevant complex {∅} are distinct:
// the first has no homology at all, the second has H̃_{-1} = k.
#pragma once

#include "latres/field_linalg.hpp"
#include "latres/fields.hpp"
#include "latres/int_linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latres {

using FaceMask = std::uint32_t;

// Ascending 1-based vertex list of a face.
std::vector<int> face_vertices(FaceMask f);
std::string face_to_string(FaceMask f);  // "{1,3,4}", "{}" for the empty face

// Lexicographic order on the sorted vertex sequences (not numeric mask
// order: {1,4} precedes {2,3}).
bool face_lex_less(FaceMask a, FaceMask b);

class SimplicialComplex {
  public:
    // The complex with no faces whatsoever.
    static SimplicialComplex make_void(std::size_t n);
    // Downward closure of the facets; an empty facet list gives the void
    // complex, a list containing the empty facet gives {∅}.
    static SimplicialComplex from_facets(std::size_t n,
                                         const std::vector<std::vector<int>>& facets);
    static SimplicialComplex from_masks(std::size_t n, const std::vector<FaceMask>& faces);

    std::size_t n() const { return n_; }
    bool is_void() const { return by_dim_.empty(); }
    // Top face dimension; -1 for {∅}; -2 for the void complex.
    int dim() const { return static_cast<int>(by_dim_.size()) - 2; }

    // Faces of dimension d in lex order; empty outside [-1, dim].
    const std::vector<FaceMask>& faces(int d) const;
    std::size_t face_count(int d) const { return faces(d).size(); }
    bool contains(FaceMask f) const;

    // All faces, dimension by dimension.
    std::vector<FaceMask> all_faces() const;

    bool operator==(const SimplicialComplex&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::vector<FaceMask>> by_dim_;  // index d+1 holds dimension d
};

// Matrix of the reduced differential ∂_i : C̃_i -> C̃_{i-1} in lex face bases;
// ∂_0 sends every vertex to the empty face with coefficient +1.  For i = -1
// the matrix has zero rows (the target is the zero module).
IntMat boundary_matrix(const SimplicialComplex& k, int i);

template <class F>
struct HomologyData {
    std::size_t rank = 0;
    // Cycle representatives (coefficients over the dimension-i face list)
    // whose classes form a basis of H̃_i.
    std::vector<std::vector<typename F::Elem>> cycles;
};

std::size_t reduced_homology_rank(const SimplicialComplex& k, int i, const FieldSpec& spec);

struct IntegralHomology {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // invariant factors >= 2 of H_i
    // Order of the torsion subgroup of C̃_i / ∂_{i+1}(C̃_{i+1}); this is what
    // the torsionless-prime condition consumes.
    Int chain_torsion_order = 1;
};

IntegralHomology integral_homology(const SimplicialComplex& k, int i);

// ---- templated homology over a field object -------------------------------

template <class F>
HomologyData<F> reduced_homology(const SimplicialComplex& k, int i, const F& f) {
    HomologyData<F> out;
    if (k.is_void() || i < -1 || i > k.dim()) return out;
    const std::size_t ci = k.face_count(i);
    if (ci == 0) return out;

    FMat<F> di = fmat_from(f, boundary_matrix(k, i));
    FMat<F> dnext = fmat_from(f, boundary_matrix(k, i + 1));
    auto cycles = fkernel(f, di);
    const std::size_t image_rank = frank(f, dnext);
    out.rank = cycles.size() - image_rank;

    // Greedy pick of kernel vectors independent modulo the image: row-reduce
    // [image | candidate] incrementally.
    FMat<F> pool(ci, image_rank + out.rank);
    std::size_t used = 0;
    {
        Rref<F> e = rref(f, dnext);
        // a deterministic image basis: the pivot columns of ∂_{i+1}
        for (std::size_t t = 0; t < e.pivot_cols.size(); ++t) {
            for (std::size_t r = 0; r < ci; ++r) pool(r, used) = dnext(r, e.pivot_cols[t]);
            ++used;
        }
    }
    std::size_t base = frank(f, pool);
    for (const auto& z : cycles) {
        if (out.cycles.size() == out.rank) break;
        for (std::size_t r = 0; r < ci; ++r) pool(r, used) = z[r];
        FMat<F> probe = pool;  // columns beyond used+1 are zero and harmless
        std::size_t rk = frank(f, probe);
        if (rk > base) {
            base = rk;
            ++used;
            out.cycles.push_back(z);
        } else {
            for (std::size_t r = 0; r < ci; ++r) pool(r, used) = f.zero();
        }
    }
    return out;
}

}  // namespace latres
