// Shared test fixtures: small complexes and lattices with hand- or
// oracle-verified invariants.
#pragma once

#include "latres/koszul.hpp"
#include "latres/simplicial.hpp"

#include <variant>

namespace fixtures {

using namespace latres;

inline Lattice make_lattice(std::size_t n, const std::vector<Vec>& basis) {
    return std::get<Lattice>(certify_lattice(basis, n));
}

// n=3, facets 12, 13, 23: one homology circle, three spanning trees.
inline SimplicialComplex hollow_triangle() {
    return SimplicialComplex::from_facets(3, {{1, 2}, {1, 3}, {2, 3}});
}

inline SimplicialComplex full_triangle() {
    return SimplicialComplex::from_facets(3, {{1, 2, 3}});
}

// Minimal 6-vertex triangulation of the real projective plane (antipodal
// icosahedron): 10 triangles, all 15 edges, H_1 = Z/2.
inline SimplicialComplex projective_plane() {
    return SimplicialComplex::from_facets(6, {{1, 2, 3},
                                              {1, 3, 4},
                                              {1, 4, 5},
                                              {1, 2, 6},
                                              {1, 5, 6},
                                              {2, 3, 5},
                                              {2, 4, 5},
                                              {2, 4, 6},
                                              {3, 4, 6},
                                              {3, 5, 6}});
}

// Boundary of the 3-simplex: a 2-sphere.
inline SimplicialComplex sphere2() {
    return SimplicialComplex::from_facets(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
}

// L = Z(1,-1) in Z^2; the ideal of a segment, resolved by x1 - x2.
inline Lattice segment_lattice() { return make_lattice(2, {{1, -1}}); }

// Kernel of [1 1 1 1; 0 1 2 3]: the twisted cubic curve.  Betti numbers
// (1, 3, 2).
inline Lattice twisted_cubic_lattice() {
    return make_lattice(4, {{1, -2, 1, 0}, {0, 1, -2, 1}});
}

// Row lattice of the triangle-graph Laplacian; Z^3/L = Z + Z/3.  Betti
// numbers (1, 3, 2).
inline Lattice k3_laplacian_lattice() {
    return make_lattice(3, {{2, -1, -1}, {-1, 2, -1}});
}

inline MonomialModule xy_module() {
    return MonomialModule::generated_module(2, {{1, 0}, {0, 1}});
}

}  // namespace fixtures
