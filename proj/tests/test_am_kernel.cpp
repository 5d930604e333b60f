#include "oracles.hpp"
#include "ramdata/am_kernel.hpp"
#include "ramdata/errors.hpp"

#include <doctest.h>

#include <random>

using namespace ramdata;
using namespace ramdata::kernel;

using oracle::isogeny;
using oracle::kernel_by_scan;
using oracle::order_by_scan;

TEST_CASE("exact order examples") {
    CHECK(exact_order(6, {0, 0}) == 1);
    CHECK(exact_order(6, {1, 0}) == 6);
    CHECK(exact_order(6, {2, 0}) == 3);
    for (Int n = 1; n <= 8; ++n)
        for (Int a = 0; a < n; ++a)
            for (Int b = 0; b < n; ++b) CHECK(exact_order(n, {a, b}) == order_by_scan(n, {a, b}));
}

TEST_CASE("gysin kernel examples") {
    IsogenyDatum id = isogeny(5, {{{1, 0}, {0, 1}}}, "id");
    CHECK(gysin_kernel(id).order == 1);
    IsogenyDatum two = isogeny(2, {{{2, 0}, {0, 2}}}, "[2]");
    auto k = gysin_kernel(two);
    CHECK(k.order == 4);
    CHECK(k.invariant_factors == std::vector<Int>{2, 2});
    IsogenyDatum cyclic = isogeny(2, {{{2, 0}, {0, 1}}}, "cyclic");
    CHECK(gysin_kernel(cyclic).order == 2);
    CHECK(gysin_kernel(cyclic).contains({1, 0}));
}

TEST_CASE("gysin kernel rejects inconsistent declarations") {
    IsogenyDatum iso = isogeny(2, {{{0, 0}, {0, 1}}});
    iso.declared_kernel = {{0, 1}};
    CHECK_THROWS_AS(gysin_kernel(iso), ModelInconsistency);
    iso = isogeny(2, {{{0, 0}, {0, 1}}});
    iso.degree = 4;
    CHECK_THROWS_AS(gysin_kernel(iso), ModelInconsistency);
    iso = isogeny(2, {{{0, 0}, {0, 1}}});
    iso.target_level = 4;
    CHECK_THROWS_AS(gysin_kernel(iso), ModelInconsistency);
}

TEST_CASE("matrix kernel agrees with a scan for every 2x2 matrix up to level 4") {
    for (Int n = 1; n <= 4; ++n)
        for (Int a = 0; a < n; ++a)
            for (Int b = 0; b < n; ++b)
                for (Int c = 0; c < n; ++c)
                    for (Int d = 0; d < n; ++d) {
                        Matrix2 m{{{a, b}, {c, d}}};
                        CHECK(matrix_kernel(n, m).elements() == kernel_by_scan(n, m));
                    }
}

TEST_CASE("duality: dual * phi = [deg] on the torsion module") {
    struct Entry {
        Int level;
        Matrix2 m, dual;
    };
    std::vector<Entry> catalog{
        {2, {{{0, 0}, {0, 1}}}, {{{1, 0}, {0, 0}}}},
        {2, {{{1, 0}, {0, 0}}}, {{{0, 0}, {0, 1}}}},
        {2, {{{1, 1}, {0, 0}}}, {{{0, 1}, {0, 1}}}},
        {2, {{{0, 0}, {0, 0}}}, {{{0, 0}, {0, 0}}}},
        {3, {{{3, 0}, {0, 1}}}, {{{1, 0}, {0, 3}}}},
        {4, {{{2, 0}, {0, 1}}}, {{{1, 0}, {0, 2}}}},
    };
    for (const auto& e : catalog) {
        auto iso = isogeny(e.level, e.m);
        iso.dual = e.dual;
        REQUIRE(check_duality(iso).has_value());
        CHECK(*check_duality(iso));
    }
    auto wrong = isogeny(2, {{{0, 0}, {0, 1}}});
    wrong.dual = Matrix2{{{0, 0}, {0, 1}}};
    CHECK_FALSE(*check_duality(wrong));
    CHECK_FALSE(check_duality(isogeny(2, {{{1, 0}, {0, 1}}})).has_value());
}

TEST_CASE("cover family examples") {
    CoverFamilyProblem single;
    single.level = 2;
    single.curves.push_back({isogeny(2, {{{0, 0}, {0, 0}}}, "h"), 2});
    auto s = solve_cover_family(single);
    CHECK(s.solvable);
    CHECK(s.witness.size() == 1);
    CHECK(exact_order(2, s.witness[0]) == 2);

    CoverFamilyProblem pair;
    pair.level = 2;
    pair.curves.push_back({isogeny(2, {{{0, 0}, {0, 1}}}, "g1"), 2});
    pair.curves.push_back({isogeny(2, {{{1, 0}, {0, 0}}}, "g2"), 2});
    auto p = solve_cover_family(pair);
    CHECK(p.solvable);
    CHECK(verify_witness(pair, p.witness));

    CoverFamilyProblem injective;
    injective.level = 2;
    injective.curves.push_back({isogeny(2, {{{1, 0}, {0, 1}}}, "id"), 2});
    CHECK_FALSE(solve_cover_family(injective).solvable);
}

TEST_CASE("verify_witness rejects wrong witnesses") {
    CoverFamilyProblem p;
    p.level = 2;
    p.curves.push_back({isogeny(2, {{{0, 0}, {0, 1}}}), 2});
    CHECK(verify_witness(p, {{1, 0}}));
    CHECK_FALSE(verify_witness(p, {{0, 1}}));
    CHECK_FALSE(verify_witness(p, {{0, 0}}));
    CHECK_FALSE(verify_witness(p, {}));
}

TEST_CASE("cover family solver agrees with exhaustive search for N <= 6 and up to 3 curves") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (Int n = 2; n <= 6; ++n) {
        std::vector<Int> indices;
        for (Int e = 2; e <= n; ++e)
            if (n % e == 0) indices.push_back(e);
        std::uniform_int_distribution<Int> entry(0, n - 1);
        std::uniform_int_distribution<std::size_t> pick(0, indices.size() - 1);
        for (std::size_t k = 1; k <= 3; ++k)
            for (int trial = 0; trial < 25; ++trial) {
                CoverFamilyProblem p;
                p.level = n;
                p.require_exact_order = trial % 5 != 0;
                for (std::size_t i = 0; i < k; ++i) {
                    Matrix2 m{{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}}};
                    if (trial % 3 == 0) m = {{{entry(rng), 0}, {0, entry(rng)}}};
                    p.curves.push_back({isogeny(n, m), indices[pick(rng)]});
                }
                auto s = solve_cover_family(p);
                auto b = oracle::cover_family(p);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(s.solvable == b.solvable);
                CHECK(s.solution_group_order == b.solutions);
                if (b.solvable) CHECK(s.witness == b.first);
                ++checked;
            }
    }
    CHECK(checked == 5 * 3 * 25);
}

TEST_CASE("malformed problems are rejected") {
    CoverFamilyProblem p;
    p.level = 4;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    p.curves.push_back({isogeny(4, {{{1, 0}, {0, 1}}}), 3});
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    p.curves[0].index = 2;
    p.curves[0].isogeny.source_level = 2;
    CHECK_THROWS_AS(p.validate(), InvalidInput);
    CHECK_THROWS_AS(TorsionModule(0), InvalidInput);
}
