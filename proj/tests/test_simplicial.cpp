#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "latres/simplicial.hpp"

#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"

using namespace latres;

namespace {

bool is_zero_mat(const IntMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) return false;
    return true;
}

FaceMask mask_of(std::initializer_list<int> verts) {
    FaceMask f = 0;
    for (int v : verts) f |= FaceMask(1) << (v - 1);
    return f;
}

// reduced Euler characteristic two ways: faces vs rational homology
void check_euler(const SimplicialComplex& k) {
    long faces = 0, homology = 0;
    for (int i = -1; i <= k.dim(); ++i) {
        long sign = (i % 2 == 0) ? 1 : -1;
        faces += sign * long(k.face_count(i));
        homology += sign * long(reduced_homology_rank(k, i, FieldSpec::rationals()));
    }
    CHECK(faces == homology);
}

void check_boundary_squares_to_zero(const SimplicialComplex& k) {
    for (int i = -1; i <= k.dim() + 1; ++i) {
        IntMat a = boundary_matrix(k, i - 1);
        IntMat b = boundary_matrix(k, i);
        CHECK(is_zero_mat(mat_mul(a, b)));
    }
}

SimplicialComplex random_complex(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> nf(1, 4), sz(1, int(n)), vx(1, int(n));
    std::vector<std::vector<int>> facets;
    int count = nf(rng);
    for (int t = 0; t < count; ++t) {
        std::set<int> s;
        int m = sz(rng);
        for (int j = 0; j < m; ++j) s.insert(vx(rng));
        facets.emplace_back(s.begin(), s.end());
    }
    return SimplicialComplex::from_facets(n, facets);
}

}  // namespace

TEST_CASE("face helpers") {
    CHECK(face_vertices(0).empty());
    CHECK(face_vertices(mask_of({1, 3, 4})) == std::vector<int>{1, 3, 4});
    CHECK(face_to_string(0) == "{}");
    CHECK(face_to_string(mask_of({1, 3, 4})) == "{1,3,4}");

    // lex on vertex sequences, not on mask values
    CHECK(face_lex_less(0, mask_of({1})));
    CHECK(face_lex_less(mask_of({1}), mask_of({1, 2})));
    CHECK(face_lex_less(mask_of({1, 4}), mask_of({2, 3})));
    CHECK(!face_lex_less(mask_of({2, 3}), mask_of({1, 4})));
    CHECK(!face_lex_less(mask_of({2}), mask_of({2})));
}

TEST_CASE("construction and closure") {
    SimplicialComplex v = SimplicialComplex::make_void(3);
    CHECK(v.is_void());
    CHECK(v.dim() == -2);
    CHECK(v.face_count(-1) == 0);
    CHECK(SimplicialComplex::from_facets(3, {}) == v);

    SimplicialComplex irr = SimplicialComplex::from_facets(3, {{}});
    CHECK(!irr.is_void());
    CHECK(irr.dim() == -1);
    CHECK(irr.face_count(-1) == 1);
    CHECK(irr.face_count(0) == 0);

    SimplicialComplex tri = fixtures::hollow_triangle();
    CHECK(tri.dim() == 1);
    CHECK(tri.face_count(-1) == 1);
    CHECK(tri.face_count(0) == 3);
    CHECK(tri.face_count(1) == 3);
    CHECK(tri.contains(mask_of({1, 3})));
    CHECK(!tri.contains(mask_of({1, 2, 3})));
    CHECK(tri.faces(1) ==
          std::vector<FaceMask>{mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})});

    // facet lists may repeat and nest; closure dedupes
    CHECK(SimplicialComplex::from_facets(3, {{1, 2}, {2}, {1, 2}, {1, 3}, {2, 3}}) == tri);

    CHECK(SimplicialComplex::from_masks(3, tri.all_faces()) == tri);
    // downward closure violations rejected
    CHECK_THROWS_AS(SimplicialComplex::from_masks(3, {0, mask_of({1, 2})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_masks(3, {mask_of({1})}), std::invalid_argument);
    // vertices outside 1..n rejected
    CHECK_THROWS_AS(SimplicialComplex::from_facets(2, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_facets(40, {{1}}), std::invalid_argument);

    // lex face order within a dimension
    SimplicialComplex k4 =
        SimplicialComplex::from_facets(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(k4.faces(1) == std::vector<FaceMask>{mask_of({1, 2}), mask_of({1, 3}), mask_of({1, 4}),
                                               mask_of({2, 3}), mask_of({2, 4}), mask_of({3, 4})});
}

TEST_CASE("boundary matrices") {
    SimplicialComplex tri = fixtures::hollow_triangle();

    IntMat d0 = boundary_matrix(tri, 0);
    CHECK(d0.rows() == 1);
    CHECK(d0.cols() == 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(d0(0, j) == 1);

    // columns in edge order 12, 13, 23; rows in vertex order 1, 2, 3
    IntMat d1 = boundary_matrix(tri, 1);
    CHECK(d1 == IntMat{{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
    CHECK(rank_z(d1) == 2);

    // i = -1 has no target coordinates; out-of-range dimensions are empty
    CHECK(boundary_matrix(tri, -1).rows() == 0);
    CHECK(boundary_matrix(tri, -1).cols() == 1);
    CHECK(boundary_matrix(tri, 2).cols() == 0);

    SimplicialComplex v = SimplicialComplex::make_void(3);
    for (int i = -1; i <= 2; ++i) {
        CHECK(boundary_matrix(v, i).rows() == 0);
        CHECK(boundary_matrix(v, i).cols() == 0);
    }

    // alternating signs: d(123) = 23 - 13 + 12
    IntMat d2 = boundary_matrix(fixtures::full_triangle(), 2);
    CHECK(d2 == IntMat{{1}, {-1}, {1}});

    check_boundary_squares_to_zero(tri);
    check_boundary_squares_to_zero(fixtures::projective_plane());
    check_boundary_squares_to_zero(fixtures::sphere2());
}

TEST_CASE("reduced homology ranks") {
    FieldSpec q = FieldSpec::rationals();
    FieldSpec f2 = FieldSpec::prime(2);

    SimplicialComplex two = SimplicialComplex::from_facets(2, {{1}, {2}});
    CHECK(reduced_homology_rank(two, 0, q) == 1);
    CHECK(reduced_homology_rank(two, -1, q) == 0);

    SimplicialComplex irr = SimplicialComplex::from_facets(3, {{}});
    CHECK(reduced_homology_rank(irr, -1, q) == 1);
    CHECK(reduced_homology_rank(irr, -1, f2) == 1);
    CHECK(reduced_homology_rank(irr, 0, q) == 0);

    SimplicialComplex v = SimplicialComplex::make_void(3);
    for (int i = -1; i <= 2; ++i) CHECK(reduced_homology_rank(v, i, q) == 0);

    SimplicialComplex tri = fixtures::hollow_triangle();
    CHECK(reduced_homology_rank(tri, 0, q) == 0);
    CHECK(reduced_homology_rank(tri, 1, q) == 1);
    CHECK(reduced_homology_rank(tri, 1, f2) == 1);

    // the mod-2 rank of the projective plane differs from the rational one
    SimplicialComplex rp2 = fixtures::projective_plane();
    CHECK(reduced_homology_rank(rp2, 0, q) == 0);
    CHECK(reduced_homology_rank(rp2, 1, q) == 0);
    CHECK(reduced_homology_rank(rp2, 2, q) == 0);
    CHECK(reduced_homology_rank(rp2, 1, f2) == 1);
    CHECK(reduced_homology_rank(rp2, 2, f2) == 1);
    CHECK(reduced_homology_rank(rp2, 1, FieldSpec::prime(3)) == 0);

    CHECK(reduced_homology_rank(fixtures::sphere2(), 2, q) == 1);
    CHECK(reduced_homology_rank(fixtures::sphere2(), 1, q) == 0);
}

TEST_CASE("homology representatives are independent cycles") {
    SimplicialComplex tri = fixtures::hollow_triangle();
    QField f;
    auto h = reduced_homology(tri, 1, f);
    REQUIRE(h.rank == 1);
    REQUIRE(h.cycles.size() == 1);
    FMat<QField> d1 = fmat_from(f, boundary_matrix(tri, 1));
    auto img = fmat_vec(f, d1, h.cycles[0]);
    bool nonzero = false;
    for (auto& c : h.cycles[0]) nonzero = nonzero || !f.is_zero(c);
    CHECK(nonzero);
    for (auto& c : img) CHECK(f.is_zero(c));

    // mod 2 the projective plane's 1-cycle must avoid the boundary image
    Fp64Field f2(2);
    SimplicialComplex rp2 = fixtures::projective_plane();
    auto h2 = reduced_homology(rp2, 1, f2);
    REQUIRE(h2.rank == 1);
    REQUIRE(h2.cycles.size() == 1);
    FMat<Fp64Field> d2 = fmat_from(f2, boundary_matrix(rp2, 2));
    FMat<Fp64Field> pool(rp2.face_count(1), d2.cols() + 1);
    for (std::size_t i = 0; i < d2.rows(); ++i)
        for (std::size_t j = 0; j < d2.cols(); ++j) pool(i, j) = d2(i, j);
    for (std::size_t i = 0; i < rp2.face_count(1); ++i) pool(i, d2.cols()) = h2.cycles[0][i];
    CHECK(frank(f2, pool) == frank(f2, d2) + 1);
}

TEST_CASE("integral homology") {
    SimplicialComplex rp2 = fixtures::projective_plane();
    auto h1 = integral_homology(rp2, 1);
    CHECK(h1.free_rank == 0);
    CHECK(h1.torsion == std::vector<Int>{2});
    CHECK(h1.chain_torsion_order == 2);
    CHECK(integral_homology(rp2, 0).free_rank == 0);
    CHECK(integral_homology(rp2, 2).free_rank == 0);
    CHECK(integral_homology(rp2, 2).torsion.empty());
    CHECK(integral_homology(rp2, 2).chain_torsion_order == 1);

    SimplicialComplex tri = fixtures::hollow_triangle();
    auto t1 = integral_homology(tri, 1);
    CHECK(t1.free_rank == 1);
    CHECK(t1.torsion.empty());
    CHECK(t1.chain_torsion_order == 1);

    SimplicialComplex full = fixtures::full_triangle();
    for (int i = -1; i <= 2; ++i) {
        CHECK(integral_homology(full, i).free_rank == 0);
        CHECK(integral_homology(full, i).torsion.empty());
    }

    // no vertices: the empty face generates a free class
    SimplicialComplex irr = SimplicialComplex::from_facets(2, {{}});
    CHECK(integral_homology(irr, -1).free_rank == 1);

    CHECK(integral_homology(fixtures::sphere2(), 2).free_rank == 1);
}

TEST_CASE("euler characteristic from faces equals homology") {
    check_euler(fixtures::hollow_triangle());
    check_euler(fixtures::full_triangle());
    check_euler(fixtures::projective_plane());
    check_euler(fixtures::sphere2());
    check_euler(SimplicialComplex::from_facets(3, {{}}));
    std::mt19937 rng(4217);
    for (int t = 0; t < 25; ++t) check_euler(random_complex(rng, 5));
}

TEST_CASE("primes away from chain torsion preserve betti numbers") {
    for (const SimplicialComplex& k :
         {fixtures::projective_plane(), fixtures::hollow_triangle(), fixtures::sphere2()}) {
        for (std::uint64_t p : {3ull, 5ull, 7ull, 1000003ull}) {
            bool avoids = true;
            for (int i = -1; i <= k.dim(); ++i)
                if (integral_homology(k, i).chain_torsion_order % Int(p) == 0) avoids = false;
            if (!avoids) continue;
            for (int i = -1; i <= k.dim(); ++i)
                CHECK(reduced_homology_rank(k, i, FieldSpec::prime(p)) ==
                      reduced_homology_rank(k, i, FieldSpec::rationals()));
        }
    }
}

TEST_CASE("cones are acyclic") {
    std::mt19937 rng(90901);
    for (int t = 0; t < 25; ++t) {
        SimplicialComplex k = random_complex(rng, 5);
        if (k.is_void()) continue;
        std::vector<std::vector<int>> facets;
        for (int d = k.dim(); d >= -1; --d)
            for (FaceMask f : k.faces(d)) {
                auto vs = face_vertices(f);
                vs.push_back(6);
                facets.push_back(vs);
            }
        SimplicialComplex cone = SimplicialComplex::from_facets(6, facets);
        for (int i = -1; i <= cone.dim(); ++i) {
            CHECK(reduced_homology_rank(cone, i, FieldSpec::rationals()) == 0);
            CHECK(reduced_homology_rank(cone, i, FieldSpec::prime(2)) == 0);
            auto h = integral_homology(cone, i);
            CHECK(h.free_rank == 0);
            CHECK(h.torsion.empty());
        }
        check_boundary_squares_to_zero(k);
    }
}
