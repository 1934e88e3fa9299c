#include "hypwalk/geometry.hpp"

#include <doctest.h>

using namespace hypwalk;

namespace {
Word W(const char* text) { return *Word::parse(text, 26); }
const ModelSpace f2 = ModelSpace::free_group(2);
ModelPoint T(const char* text) { return TreePoint{W(text)}; }
} // namespace

TEST_CASE("Gromov products count common prefixes") {
    CHECK(gromov_product(f2, f2.basepoint(), T("ab"), T("ac")) == Rat(1));
    CHECK(gromov_product(f2, f2.basepoint(), T("ab"), T("ab")) == Rat(2));
    CHECK(gromov_product(f2, f2.basepoint(), T("abA"), T("aBA")) == Rat(1));
}

TEST_CASE("boundary Gromov products are word overlaps") {
    BoundaryPoint a_inf = TreeEnd(Word{}, W("a"));
    BoundaryPoint b_inf = TreeEnd(Word{}, W("b"));
    BoundaryPoint ab_a = TreeEnd(W("ab"), W("a"));
    auto gp = gromov_product(f2, f2.basepoint(), a_inf, b_inf);
    REQUIRE(gp.has_value());
    CHECK(*gp == Rat(0));
    CHECK(!gromov_product(f2, f2.basepoint(), a_inf, a_inf).has_value()); // infinite
    auto gp2 = gromov_product(f2, f2.basepoint(), ab_a, a_inf);
    REQUIRE(gp2.has_value());
    CHECK(*gp2 == Rat(1));
    // derived oracle: overlaps of truncations of increasing depth stabilize
    for (std::size_t depth = 4; depth <= 12; depth += 4) {
        Word u = std::get<TreeEnd>(ab_a).head(depth);
        Word v = std::get<TreeEnd>(a_inf).head(depth);
        CHECK(gromov_product(f2, f2.basepoint(), TreePoint{u}, TreePoint{v}) == Rat(1));
    }
    CHECK_THROWS_AS(gromov_product(ModelSpace::line(), LinePoint{}, BoundaryPoint{LineEnd{}},
                                   BoundaryPoint{LineEnd{}}),
                    std::invalid_argument);
}

TEST_CASE("nearest point projection onto tree geodesics") {
    Geodesic g = geodesic(f2, T("") /* e */, T("A"));
    CHECK(nearest_point_projection(f2, T("ab"), g) == ModelPoint{TreePoint{}});
    Geodesic g2 = geodesic(f2, T(""), T("aB"));
    CHECK(nearest_point_projection(f2, T("abb"), g2) == ModelPoint{TreePoint{W("a")}});
    // a point of the geodesic projects to itself
    CHECK(nearest_point_projection(f2, T("a"), g2) == ModelPoint{TreePoint{W("a")}});
    // brute-force minimality on the same geodesic
    for (const ModelPoint& q : g2.pts)
        CHECK(dist(f2, T("abb"), nearest_point_projection(f2, T("abb"), g2)) <= dist(f2, T("abb"), q));
}

TEST_CASE("shadows contain their centers and obey the depth formula") {
    Shadow s{T(""), T("ab"), Rat(1, 2)};
    CHECK(s.distance_parameter(f2) == Rat(3, 2));
    CHECK(s.depth(f2) == Rat(-1));
    CHECK(shadow_contains(f2, s, T("aba")));
    CHECK(!shadow_contains(f2, s, T("a")));
    CHECK(shadow_contains(f2, s, T("ab")));
}

TEST_CASE("boundary points land in shadows by overlap threshold") {
    Shadow s{T(""), T("ab"), Rat(1, 2)};
    CHECK(shadow_contains_boundary(f2, s, TreeEnd(W("ab"), W("a"))));
    CHECK(!shadow_contains_boundary(f2, s, TreeEnd(Word{}, W("a"))));
}

TEST_CASE("complement of a shadow is exactly covered on the tree") {
    Shadow s{T(""), T("ab"), Rat(1, 2)};
    Shadow cover = shadow_complement_cover(f2, s, Rat(0));
    CHECK(cover.base == ModelPoint{TreePoint{W("ab")}});
    CHECK(cover.center == ModelPoint{TreePoint{}});
    CHECK(cover.radius == Rat(3, 2));
    // exhaustive: radius-5 ball
    for_each_word(2, 5, [&](const Word& w) {
        ModelPoint y = TreePoint{w};
        if (!shadow_contains(f2, s, y)) CHECK(shadow_contains(f2, cover, y));
    });
    // line model instance
    ModelSpace line = ModelSpace::line();
    Shadow sl{LinePoint{Rat(0)}, LinePoint{Rat(5)}, Rat(1)};
    Shadow cl = shadow_complement_cover(line, sl, Rat(0));
    CHECK(cl.base == ModelPoint{LinePoint{Rat(5)}});
    CHECK(cl.center == ModelPoint{LinePoint{Rat(0)}});
    CHECK(cl.radius == Rat(4));
}

TEST_CASE("four-point estimate under the tree hypotheses") {
    ModelPoint a3 = T("aaa"), b3 = T("bbb");
    auto est = four_point_gp_estimate(f2, f2.basepoint(), a3, a3, b3, b3, Rat(2));
    REQUIRE(est.has_value());
    CHECK(*est == Rat(0));

    // overlap-1 configuration
    auto est2 = four_point_gp_estimate(f2, f2.basepoint(), T("abab"), T("abb"), T("aBa"), T("aBB"),
                                       Rat(2));
    REQUIRE(est2.has_value());
    CHECK(*est2 == gromov_product(f2, f2.basepoint(), T("abab"), T("aBa")));
    CHECK(*est2 == Rat(1));

    // hypotheses violated
    CHECK(!four_point_gp_estimate(f2, f2.basepoint(), a3, b3, a3, b3, Rat(2)).has_value());
}

TEST_CASE("distance to a geodesic realizes the Gromov product on trees") {
    CHECK(dist_to_geodesic(f2, T(""), geodesic(f2, T("ab"), T("ac"))) == Rat(1));
    CHECK(dist_to_geodesic(f2, T("b"), geodesic(f2, T("a"), T("aa"))) == Rat(2));
}

TEST_CASE("boundary products agree with truncation limits from any base") {
    // (x . xi)_z computed by the overlap route must match the stabilized
    // truncation products
    std::vector<TreeEnd> ends = {TreeEnd(Word{}, W("a")), TreeEnd(W("ab"), W("aB")),
                                 TreeEnd(W("Ba"), W("ba"))};
    std::vector<Word> points = {W(""), W("a"), W("abA"), W("Bab"), W("bbbb")};
    for (const TreeEnd& xi : ends) {
        for (const Word& z : points) {
            for (const Word& x : points) {
                Rat via_overlap = gromov_product(f2, TreePoint{z}, BoundaryPoint{xi}, TreePoint{x});
                Word trunc = xi.head(24);
                Rat via_trunc = gromov_product(f2, TreePoint{z}, TreePoint{x}, TreePoint{trunc});
                CHECK(via_overlap == via_trunc);
            }
        }
    }
    // end-vs-end from a non-trivial base
    auto gp = gromov_product(f2, TreePoint{W("ab")}, BoundaryPoint{TreeEnd(Word{}, W("a"))},
                             BoundaryPoint{TreeEnd(Word{}, W("b"))});
    REQUIRE(gp.has_value());
    CHECK(*gp == Rat(1));
}

TEST_CASE("projections on the wedge clamp onto arms") {
    ModelSpace w = ModelSpace::wedge();
    Geodesic g = geodesic(w, make_ray_point(1, Rat(2)), make_ray_point(2, Rat(3)));
    // same arm: clamp
    CHECK(nearest_point_projection(w, make_ray_point(1, Rat(5)), g) ==
          ModelPoint{make_ray_point(1, Rat(2))});
    CHECK(nearest_point_projection(w, make_ray_point(2, Rat(1)), g) ==
          ModelPoint{make_ray_point(2, Rat(1))});
    // a third ray projects to the basepoint
    CHECK(nearest_point_projection(w, make_ray_point(7, Rat(4)), g) == ModelPoint{RayPoint{}});
    CHECK(dist_to_geodesic(w, make_ray_point(7, Rat(4)), g) == Rat(4));
    // interior rational point on an arm
    CHECK(nearest_point_projection(w, make_ray_point(1, Rat(3, 2)), g) ==
          ModelPoint{make_ray_point(1, Rat(3, 2))});
}
