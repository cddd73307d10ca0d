#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "latres/lattice.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace latres;

namespace {

Lattice make(const std::vector<Vec>& basis, std::size_t n) {
    CertifyResult r = certify_lattice(basis, n);
    REQUIRE(std::holds_alternative<Lattice>(r));
    return std::get<Lattice>(r);
}

void check_grading(const Lattice& l) {
    REQUIRE(l.grading().size() == l.n());
    for (const auto& d : l.grading()) CHECK(d >= 1);
    for (const auto& b : l.basis()) CHECK(dot(l.grading(), b) == 0);
}

Vec random_vec(std::mt19937& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Vec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

const std::vector<Vec> kTwistedCubic = {{1, -2, 1, 0}, {0, 1, -2, 1}};

}  // namespace

TEST_CASE("certification produces the pinned gradings") {
    {
        Lattice l = make({{1, -1}}, 2);
        CHECK(l.grading() == Vec{1, 1});
        check_grading(l);
    }
    {
        Lattice l = make(kTwistedCubic, 4);
        CHECK(l.grading() == Vec{1, 1, 1, 1});
        check_grading(l);
    }
    {
        Lattice l = make({{2, -1, -1}, {-1, 2, -1}}, 3);
        CHECK(l.grading() == Vec{1, 1, 1});
    }
    {
        Lattice l = make({}, 2);  // the zero lattice
        CHECK(l.grading() == Vec{1, 1});
        CHECK(l.normal_form({5, -3}) == Vec{5, -3});
    }
}

TEST_CASE("certification refuses nonnegative lattice vectors with a witness") {
    {
        CertifyResult r = certify_lattice({{1, 0}}, 2);
        REQUIRE(std::holds_alternative<Witness>(r));
        CHECK(std::get<Witness>(r).v == Vec{1, 0});
    }
    {
        CertifyResult r = certify_lattice({{1, -1}, {1, 1}}, 2);
        REQUIRE(std::holds_alternative<Witness>(r));
        const Vec& w = std::get<Witness>(r).v;
        CHECK(!is_zero(w));
        CHECK(geq_zero(w));
        IntMat cols{{1, 1}, {-1, 1}};
        CHECK(solve_z(cols, w).has_value());  // the witness lies in L
    }
}

TEST_CASE("dependent bases are rejected with a relation") {
    try {
        certify_lattice({{1, -1}, {2, -2}}, 2);
        FAIL("expected DependentBasisError");
    } catch (const DependentBasisError& e) {
        REQUIRE(e.dependency.size() == 2);
        CHECK(!is_zero(e.dependency));
        Vec combo = zero_vec(2);
        combo = add(combo, Vec{e.dependency[0] * 1, e.dependency[0] * -1});
        combo = add(combo, Vec{e.dependency[1] * 2, e.dependency[1] * -2});
        CHECK(is_zero(combo));
    }
}

TEST_CASE("membership coordinates") {
    Lattice l = make({{1, -1}}, 2);
    auto z = l.member({2, -2});
    REQUIRE(z.has_value());
    CHECK(*z == Vec{2});
    CHECK(!l.member({1, 0}).has_value());
    auto z0 = l.member({0, 0});
    REQUIRE(z0.has_value());
    CHECK(*z0 == Vec{0});
}

TEST_CASE("points below a bound") {
    Lattice l = make({{1, -1}}, 2);
    CHECK(l.points_below({1, 0}) == std::vector<Vec>{{0, 0}, {1, -1}});
    CHECK(l.points_below({-1, 0}).empty());
    CHECK(l.points_below({0, 0}) == std::vector<Vec>{{0, 0}});
    CHECK(l.points_below({3, 2}) ==
          std::vector<Vec>{{-2, 2}, {-1, 1}, {0, 0}, {1, -1}, {2, -2}, {3, -3}});
}

TEST_CASE("only zero is dominated by zero") {
    for (const auto& [basis, n] :
         std::vector<std::pair<std::vector<Vec>, std::size_t>>{{{{1, -1}}, 2},
                                                               {kTwistedCubic, 4},
                                                               {{{2, -1, -1}, {-1, 2, -1}}, 3},
                                                               {{{2, -2}}, 2},
                                                               {{}, 3}}) {
        Lattice l = make(basis, n);
        CHECK(l.points_below(zero_vec(n)) == std::vector<Vec>{zero_vec(n)});
    }
}

TEST_CASE("points_below commutes with lattice translation") {
    Lattice l = make(kTwistedCubic, 4);
    std::mt19937 rng(7151);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        Vec b = random_vec(rng, 4, -3, 5);
        Vec ell = zero_vec(4);
        for (const auto& g : l.basis()) {
            int c = coeff(rng);
            for (std::size_t i = 0; i < 4; ++i) ell[i] += c * g[i];
        }
        auto direct = l.points_below(add(b, ell));
        auto shifted = l.points_below(b);
        for (auto& p : shifted) p = add(p, ell);
        std::sort(shifted.begin(), shifted.end(), lex_less);
        CHECK(direct == shifted);
    }
}

TEST_CASE("coset normal forms") {
    Lattice l = make({{1, -1}}, 2);
    CHECK(l.normal_form({3, 2}) == l.normal_form({5, 0}));
    CHECK(l.normal_form({2, -2}) == l.normal_form({0, 0}));

    Lattice tc = make(kTwistedCubic, 4);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        Vec b = random_vec(rng, 4, -6, 6);
        Vec nf = tc.normal_form(b);
        CHECK(tc.normal_form(nf) == nf);  // idempotent
        Vec shifted = b;
        for (const auto& g : tc.basis()) {
            int c = coeff(rng);
            for (std::size_t i = 0; i < 4; ++i) shifted[i] += c * g[i];
        }
        CHECK(tc.normal_form(shifted) == nf);  // constant on cosets
        CHECK(tc.member(sub(b, nf)).has_value());
    }
}

TEST_CASE("quotient group presentation") {
    CHECK(make({{1, -1}}, 2).quotient().free_rank == 1);
    CHECK(make({{1, -1}}, 2).quotient().torsion_factors.empty());
    CHECK(make({}, 2).quotient().free_rank == 2);
    CHECK(make(kTwistedCubic, 4).quotient().free_rank == 2);
    CHECK(make(kTwistedCubic, 4).quotient().torsion_factors.empty());

    Lattice l = make({{2, -2}}, 2);
    const QuotientGroup& q = l.quotient();
    CHECK(q.free_rank == 1);
    CHECK(q.torsion_factors == std::vector<Int>{2});
    CHECK(is_zero(q.project({2, -2})));
    CHECK(q.project({1, -1}) != q.project({0, 0}));
    CHECK(q.project({1, 1}) == q.project({3, -1}));

    std::mt19937 rng(424);
    for (int trial = 0; trial < 50; ++trial) {
        Vec b = random_vec(rng, 2, -5, 5);
        CHECK(q.project(add(b, Vec{2, -2})) == q.project(b));
        CHECK(q.project(q.lift(q.project(b))) == q.project(b));
    }
}

TEST_CASE("saturated path counts and enumeration") {
    CHECK(saturated_path_count({0, 0}, {1, 1}) == 2);
    CHECK(saturated_path_count({0, 0}, {0, 0}) == 1);
    CHECK(saturated_path_count({0, 0}, {2, 1}) == 3);
    {
        int seen = 0;
        for_each_saturated_path({1, 2}, {1, 2}, [&](const std::vector<std::size_t>& s) {
            CHECK(s.empty());
            ++seen;
        });
        CHECK(seen == 1);
    }
    CHECK_THROWS_AS(saturated_path_count({1, 0}, {0, 1}), std::invalid_argument);

    // Every difference with |b - a| <= 8 in three coordinates: enumeration
    // agrees with the multinomial, paths are distinct, lex-ascending, and
    // use the right multiset of steps.
    for (int m0 = 0; m0 <= 8; ++m0)
        for (int m1 = 0; m0 + m1 <= 8; ++m1)
            for (int m2 = 0; m0 + m1 + m2 <= 8; ++m2) {
                Vec a{1, 0, 2};
                Vec b{1 + m0, m1, 2 + m2};
                Int count = 0;
                std::vector<std::size_t> prev;
                bool first = true;
                for_each_saturated_path(a, b, [&](const std::vector<std::size_t>& s) {
                    REQUIRE(s.size() == std::size_t(m0 + m1 + m2));
                    CHECK(std::count(s.begin(), s.end(), 0u) == m0);
                    CHECK(std::count(s.begin(), s.end(), 1u) == m1);
                    CHECK(std::count(s.begin(), s.end(), 2u) == m2);
                    if (!first) CHECK(prev < s);
                    prev = s;
                    first = false;
                    count += 1;
                });
                CHECK(count == saturated_path_count(a, b));
            }
}

TEST_CASE("random gradable lattices certify and stay pointless below zero") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> dpick(1, 3);
    std::uniform_int_distribution<int> cpick(-2, 2);
    int done = 0;
    while (done < 40) {
        std::size_t n = 2 + rng() % 3;  // 2..4
        Vec d(n);
        for (auto& x : d) x = dpick(rng);
        // Random integer vectors orthogonal to d: combinations of
        // d_j e_i - d_i e_j.
        std::size_t k = 1 + rng() % (n - 1);
        std::vector<Vec> basis;
        for (std::size_t t = 0; t < k; ++t) {
            Vec v = zero_vec(n);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                int c = cpick(rng);
                v[i] += c * d[i + 1];
                v[i + 1] -= c * d[i];
            }
            basis.push_back(v);
        }
        IntMat cols(n, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) cols(i, j) = basis[j][i];
        if (rank_z(cols) < k) continue;  // dependent draw; try again
        Lattice l = make(basis, n);
        check_grading(l);
        CHECK(l.points_below(zero_vec(n)) == std::vector<Vec>{zero_vec(n)});
        ++done;
    }
}
