#include "hypwalk/space.hpp"

#include <doctest.h>

using namespace hypwalk;

namespace {
Word W(const char* text) { return *Word::parse(text, 26); }
} // namespace

TEST_CASE("tree distances are word metric integers") {
    ModelSpace f2 = ModelSpace::free_group(2);
    CHECK(dist(f2, TreePoint{W("ab")}, TreePoint{W("ac")}) == Rat(2));
    CHECK(dist(f2, TreePoint{W("ab")}, TreePoint{W("ab")}) == Rat(0));
    CHECK(dist(f2, TreePoint{}, TreePoint{W("abab")}) == Rat(4));
}

TEST_CASE("wedge distances run through the basepoint") {
    ModelSpace w = ModelSpace::wedge();
    CHECK(dist(w, make_ray_point(1, Rat(3)), make_ray_point(2, Rat(4))) == Rat(7));
    CHECK(dist(w, make_ray_point(1, Rat(3)), make_ray_point(1, Rat(1))) == Rat(2));
    // s = 0 is the basepoint no matter the ray index
    CHECK(dist(w, make_ray_point(5, Rat(0)), make_ray_point(2, Rat(4))) == Rat(4));
    CHECK(make_ray_point(5, Rat(0)) == make_ray_point(0, Rat(0)));
}

TEST_CASE("product models use the L1 convention") {
    ModelSpace z = ModelSpace::zxz2();
    CHECK(dist(z, ZxZ2Point{0, 0}, ZxZ2Point{3, 1}) == Rat(4));
    ModelSpace f = ModelSpace::f2xz2();
    CHECK(dist(f, F2Z2Point{W("ab"), 0}, F2Z2Point{W("a"), 1}) == Rat(2));
    CHECK(z.delta() == Rat(1));
    CHECK(f.delta() == Rat(1));
    CHECK(ModelSpace::free_group(2).delta() == Rat(0));
}

TEST_CASE("tree geodesics list every lattice point") {
    ModelSpace f2 = ModelSpace::free_group(2);
    Geodesic g = geodesic(f2, TreePoint{}, TreePoint{W("ab")});
    REQUIRE(g.size() == 3);
    CHECK(g.pts[0] == ModelPoint{TreePoint{}});
    CHECK(g.pts[1] == ModelPoint{TreePoint{W("a")}});
    CHECK(g.pts[2] == ModelPoint{TreePoint{W("ab")}});

    Geodesic loop = geodesic(f2, TreePoint{W("a")}, TreePoint{W("a")});
    REQUIRE(loop.size() == 1);

    Geodesic wg = geodesic(ModelSpace::wedge(), make_ray_point(1, Rat(2)), make_ray_point(2, Rat(1)));
    REQUIRE(wg.size() == 3);
    CHECK(wg.pts[1] == ModelPoint{RayPoint{}});
}

TEST_CASE("the action is isometric and fails on non-acting models") {
    ModelSpace f2 = ModelSpace::free_group(2);
    CHECK(act(f2, GroupElement{W("a"), false}, f2.basepoint()) == ModelPoint{TreePoint{W("a")}});
    CHECK(act(f2, GroupElement{W("A"), false}, TreePoint{W("ab")}) == ModelPoint{TreePoint{W("b")}});
    ModelSpace f = ModelSpace::f2xz2();
    CHECK(act(f, GroupElement{Word{}, true}, F2Z2Point{}) == ModelPoint{F2Z2Point{Word{}, 1}});
    CHECK_THROWS_AS(act(ModelSpace::wedge(), GroupElement{W("a"), false}, RayPoint{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(act(ModelSpace::line(), GroupElement{W("a"), false}, LinePoint{}),
                    std::invalid_argument);
}

TEST_CASE("signed distances flip with orientation") {
    ModelSpace f2 = ModelSpace::free_group(2);
    OrientedGeodesic g{geodesic(f2, TreePoint{}, TreePoint{W("ab")}), true};
    ModelPoint a = TreePoint{W("a")};
    ModelPoint ab = TreePoint{W("ab")};
    CHECK(signed_distance(f2, g, a, a) == Rat(0));
    CHECK(signed_distance(f2, g, a, ab) == Rat(1));
    CHECK(signed_distance(f2, g.reversed(), a, ab) == Rat(-1));
    CHECK_THROWS_AS(signed_distance(f2, g, TreePoint{W("b")}, a), std::invalid_argument);
}

TEST_CASE("tree ends act, drop and compare") {
    TreeEnd a_inf(Word{}, W("a"));
    TreeEnd ab_inf(Word{}, W("ab"));
    CHECK(same_end(a_inf, a_inf));
    CHECK(!same_end(a_inf, ab_inf));
    CHECK(common_prefix_len(a_inf, ab_inf) == 1);

    TreeEnd shifted = ab_inf.drop(1);
    CHECK(shifted.letter(0) == W("b")[0]);
    CHECK(same_end(shifted, TreeEnd(Word{}, W("ba"))));

    // prepending cancels into the periodic part
    TreeEnd moved = a_inf.prepend(W("bA"));
    CHECK(moved.letter(0) == W("b")[0]);
    CHECK(moved.letter(1) == W("a")[0]);
    TreeEnd cancelled = a_inf.prepend(W("A"));
    CHECK(same_end(cancelled, a_inf));

    CHECK_THROWS_AS(TreeEnd(W("a"), W("Ab")), std::invalid_argument);
    CHECK_THROWS_AS(TreeEnd(Word{}, W("aA")), std::invalid_argument);
}

TEST_CASE("axis endpoints of hyperbolic elements") {
    auto ends = axis_ends(GroupElement{W("abA"), false});
    REQUIRE(ends.has_value());
    CHECK(same_end(ends->forward, TreeEnd(W("a"), W("b"))));
    CHECK(same_end(ends->backward, TreeEnd(W("a"), W("B"))));
    CHECK(!axis_ends(GroupElement{}).has_value());
}

TEST_CASE("the metric-space hook exposes the built-in models") {
    ModelSpaceAdapter adapter(ModelSpace::free_group(2));
    const MetricSpaceInterface& space = adapter;
    CHECK(space.distance(TreePoint{W("ab")}, TreePoint{W("ac")}) == Rat(2));
    CHECK(space.connect(TreePoint{}, TreePoint{W("ab")}).size() == 3);
}

TEST_CASE("ball enumeration matches sphere counts") {
    // |sphere(r)| = 4 * 3^{r-1} in F2
    auto ball = ball_words(2, 4);
    std::size_t expect = 1 + 4 + 12 + 36 + 108;
    CHECK(ball.size() == expect);
    auto around = ball_around(2, W("ab"), 2);
    CHECK(around.size() == 1 + 4 + 12);
    for (const Word& u : around) CHECK(word_distance(W("ab"), u) <= 2);
}
