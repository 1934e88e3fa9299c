#include "hypwalk/verify.hpp"

#include "hypwalk/estimators.hpp"
#include "hypwalk/horofunction.hpp"
#include "hypwalk/rng.hpp"
#include "hypwalk/strips.hpp"
#include "hypwalk/walk.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

namespace hypwalk {

namespace {

struct Params {
    int radius;      // exhaustive enumeration radius
    int mc_trials;   // Monte-Carlo trial count
    int samples;     // property-test sample count
};

Params params_for(VerifyLevel level) {
    return level == VerifyLevel::Quick ? Params{5, 1000, 300} : Params{8, 100000, 2000};
}

Word random_word(Sampler& s, int max_len, int rank = 2) {
    std::size_t len = s.raw() % static_cast<std::uint64_t>(max_len + 1);
    Word w;
    while (w.size() < len) {
        auto idx = static_cast<int>(1 + s.raw() % static_cast<std::uint64_t>(rank));
        auto l = static_cast<Word::Letter>((s.raw() & 1) ? idx : -idx);
        w.push(l);
    }
    return w;
}

TreeEnd random_end(Sampler& s, int max_prefix, int max_period) {
    for (;;) {
        Word prefix = random_word(s, max_prefix);
        Word period = random_word(s, max_period);
        if (period.empty() || !period.is_cyclically_reduced()) continue;
        if (!prefix.empty() && prefix.back() == static_cast<Word::Letter>(-period[0])) continue;
        return TreeEnd(prefix, period);
    }
}

using CheckFn = std::function<std::string(const Params&, const VerifyHooks&)>;

struct Check {
    std::string name;
    CheckFn fn;
};

std::string ok() { return {}; }

// ---------------------------------------------------------------------------
// space-core
// ---------------------------------------------------------------------------

std::string check_metric_axioms(const Params& p, const VerifyHooks&) {
    Sampler s(101);
    const std::vector<ModelSpace> spaces = {ModelSpace::free_group(2), ModelSpace::wedge(),
                                            ModelSpace::line(), ModelSpace::zxz2(),
                                            ModelSpace::f2xz2()};
    auto random_point = [&](const ModelSpace& sp) -> ModelPoint {
        switch (sp.model) {
            case Model::FreeTree: return TreePoint{random_word(s, 12)};
            case Model::Wedge:
                return make_ray_point(static_cast<std::uint32_t>(s.raw() % 5),
                                      Rat(static_cast<long long>(s.raw() % 24), 1 + static_cast<long long>(s.raw() % 4)));
            case Model::Line:
                return LinePoint{Rat(static_cast<long long>(s.raw() % 41) - 20,
                                     1 + static_cast<long long>(s.raw() % 4))};
            case Model::ZxZ2:
                return ZxZ2Point{static_cast<long long>(s.raw() % 31) - 15,
                                 static_cast<std::uint8_t>(s.raw() & 1)};
            case Model::F2xZ2:
                return F2Z2Point{random_word(s, 10), static_cast<std::uint8_t>(s.raw() & 1)};
        }
        throw std::logic_error("bad model");
    };
    for (const ModelSpace& sp : spaces) {
        for (int i = 0; i < p.samples; ++i) {
            ModelPoint x = random_point(sp), y = random_point(sp), z = random_point(sp);
            Rat dxy = dist(sp, x, y);
            if (dxy < 0) return "negative distance";
            if (dxy != dist(sp, y, x)) return "asymmetric distance at " + to_string(x) + "," + to_string(y);
            if (dxy == Rat(0) && !(x == y))
                return "zero distance between distinct points " + to_string(x) + "," + to_string(y);
            if (dist(sp, x, z) > dxy + dist(sp, y, z))
                return "triangle inequality fails at " + to_string(x) + "," + to_string(y) + "," + to_string(z);
            Geodesic g = geodesic(sp, x, y);
            Rat sum(0);
            for (std::size_t j = 0; j + 1 < g.pts.size(); ++j) sum += dist(sp, g.pts[j], g.pts[j + 1]);
            if (sum != dxy) return "geodesic lengths do not add up for " + to_string(x) + "," + to_string(y);
            if (!(g.front() == x) || !(g.back() == y)) return "geodesic endpoints wrong";
        }
    }
    return ok();
}

std::string check_delta_slim(const Params& p, const VerifyHooks&) {
    Sampler s(102);
    ModelSpace sp = ModelSpace::free_group(2);
    auto on = [&](const ModelPoint& pt, const Geodesic& g) {
        for (const ModelPoint& q : g.pts)
            if (q == pt) return true;
        return false;
    };
    for (int i = 0; i < p.samples; ++i) {
        ModelPoint x = TreePoint{random_word(s, 10)};
        ModelPoint y = TreePoint{random_word(s, 10)};
        ModelPoint z = TreePoint{random_word(s, 10)};
        Geodesic xy = geodesic(sp, x, y), xz = geodesic(sp, x, z), zy = geodesic(sp, z, y);
        for (const ModelPoint& q : xy.pts)
            if (!on(q, xz) && !on(q, zy))
                return "triangle not 0-slim at " + to_string(q);
    }
    return ok();
}

std::string check_group_action(const Params& p, const VerifyHooks&) {
    Sampler s(103);
    for (const ModelSpace& sp : {ModelSpace::free_group(2), ModelSpace::f2xz2()}) {
        for (int i = 0; i < p.samples; ++i) {
            GroupElement g{random_word(s, 8), sp.model == Model::F2xZ2 && (s.raw() & 1)};
            GroupElement h{random_word(s, 8), sp.model == Model::F2xZ2 && (s.raw() & 1)};
            ModelPoint x = sp.model == Model::F2xZ2
                               ? ModelPoint(F2Z2Point{random_word(s, 8), static_cast<std::uint8_t>(s.raw() & 1)})
                               : ModelPoint(TreePoint{random_word(s, 8)});
            ModelPoint y = sp.model == Model::F2xZ2
                               ? ModelPoint(F2Z2Point{random_word(s, 8), static_cast<std::uint8_t>(s.raw() & 1)})
                               : ModelPoint(TreePoint{random_word(s, 8)});
            if (!(act(sp, g, act(sp, h, x)) == act(sp, mul(g, h), x)))
                return "action composition fails for " + to_string(g) + "," + to_string(h);
            if (dist(sp, act(sp, g, x), act(sp, g, y)) != dist(sp, x, y))
                return "action is not isometric for " + to_string(g);
        }
    }
    return ok();
}

std::string check_cyclic_reduce(const Params& p, const VerifyHooks&) {
    Sampler s(104);
    for (int i = 0; i < p.samples * 4; ++i) {
        GroupElement g{random_word(s, 12), false};
        auto [core, conj] = cyclic_reduce(g);
        if (!(mul(conj, mul(core, inv(conj))) == g))
            return "cyclic reduction round-trip fails for " + to_string(g);
        if (!core.word.is_cyclically_reduced())
            return "core not cyclically reduced for " + to_string(g);
    }
    return ok();
}

// ---------------------------------------------------------------------------
// coarse geometry
// ---------------------------------------------------------------------------

std::string check_gp_triangle(const Params& p, const VerifyHooks&) {
    Sampler s(105);
    ModelSpace tree = ModelSpace::free_group(2);
    ModelSpace prod = ModelSpace::zxz2();
    for (int i = 0; i < p.samples; ++i) {
        ModelPoint base = TreePoint{random_word(s, 8)};
        ModelPoint x = TreePoint{random_word(s, 10)};
        ModelPoint y = TreePoint{random_word(s, 10)};
        ModelPoint z = TreePoint{random_word(s, 10)};
        if (gromov_product(tree, base, x, y) <
            rat_min(gromov_product(tree, base, x, z), gromov_product(tree, base, y, z)))
            return "Gromov triangle inequality fails (tree) at " + to_string(x) + "," + to_string(y) + "," + to_string(z);
        ModelPoint bz = ZxZ2Point{static_cast<long long>(s.raw() % 21) - 10, static_cast<std::uint8_t>(s.raw() & 1)};
        ModelPoint xz2 = ZxZ2Point{static_cast<long long>(s.raw() % 21) - 10, static_cast<std::uint8_t>(s.raw() & 1)};
        ModelPoint yz2 = ZxZ2Point{static_cast<long long>(s.raw() % 21) - 10, static_cast<std::uint8_t>(s.raw() & 1)};
        ModelPoint zz2 = ZxZ2Point{static_cast<long long>(s.raw() % 21) - 10, static_cast<std::uint8_t>(s.raw() & 1)};
        if (gromov_product(prod, bz, xz2, yz2) <
            rat_min(gromov_product(prod, bz, xz2, zz2), gromov_product(prod, bz, yz2, zz2)) - prod.delta())
            return "Gromov triangle inequality fails (ZxZ2)";
    }
    return ok();
}

std::string check_gp_geodesic(const Params& p, const VerifyHooks&) {
    Sampler s(106);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        ModelPoint base = TreePoint{random_word(s, 8)};
        ModelPoint x = TreePoint{random_word(s, 10)};
        ModelPoint y = TreePoint{random_word(s, 10)};
        if (dist_to_geodesic(tree, base, geodesic(tree, x, y)) != gromov_product(tree, base, x, y))
            return "gp != distance to geodesic at " + to_string(base) + ";" + to_string(x) + "," + to_string(y);
    }
    return ok();
}

std::string check_npp(const Params& p, const VerifyHooks&) {
    Sampler s(107);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        ModelPoint y = TreePoint{random_word(s, 10)};
        Geodesic g = geodesic(tree, TreePoint{random_word(s, 10)}, TreePoint{random_word(s, 10)});
        ModelPoint proj = nearest_point_projection(tree, y, g);
        // reverse triangle, exact on the tree
        for (const ModelPoint& z : g.pts)
            if (dist(tree, y, z) != dist(tree, y, proj) + dist(tree, proj, z))
                return "reverse triangle fails for y=" + to_string(y) + " z=" + to_string(z);
        // two-projection identity
        ModelPoint x = TreePoint{random_word(s, 10)};
        ModelPoint px = nearest_point_projection(tree, x, g);
        if (!(px == proj)) {
            if (dist(tree, x, y) != dist(tree, x, px) + dist(tree, px, proj) + dist(tree, proj, y))
                return "two-projection identity fails for x=" + to_string(x) + " y=" + to_string(y);
        }
    }
    return ok();
}

std::string check_npp_shadow(const Params& p, const VerifyHooks&) {
    ModelSpace tree = ModelSpace::free_group(2);
    int radius = std::min(p.radius, 5);
    std::vector<Word> centers = ball_words(2, 3);
    for (const Word& c : centers) {
        if (c.empty()) continue;
        Shadow sh{TreePoint{}, TreePoint{c}, Rat(1, 2) + Rat(static_cast<long long>(c.size() > 1 ? 1 : 0))};
        Geodesic g = geodesic(tree, sh.base, sh.center);
        bool found_violation = false;
        std::string detail;
        for_each_word(2, radius, [&](const Word& w) {
            if (found_violation) return;
            ModelPoint y = TreePoint{w};
            ModelPoint proj = nearest_point_projection(tree, y, g);
            Rat d = dist(tree, sh.center, proj);
            if (shadow_contains(tree, sh, y)) {
                if (d > sh.radius) {
                    found_violation = true;
                    detail = "member " + w.str() + " projects " + to_string(d) + " > R";
                }
            } else if (d < sh.radius) {
                found_violation = true;
                detail = "non-member " + w.str() + " projects " + to_string(d) + " < R";
            }
        });
        if (found_violation) return detail + " (center " + c.str() + ")";
    }
    return ok();
}

std::string check_shadow_horo(const Params& p, const VerifyHooks& hooks) {
    ModelSpace tree = ModelSpace::free_group(2);
    auto member = hooks.shadow_member
                      ? hooks.shadow_member
                      : [](const ModelSpace& sp, const Shadow& sh, const ModelPoint& y) {
                            return shadow_contains(sp, sh, y);
                        };
    int yradius = p.radius;
    std::string fail;
    for_each_word(2, 4, [&](const Word& c) {
        if (!fail.empty()) return;
        for (Rat R : {Rat(1, 2), Rat(3, 2), Rat(5, 2)}) {
            Shadow sh{TreePoint{}, TreePoint{c}, R};
            Rat depth = sh.depth(tree);
            for_each_word(2, yradius, [&](const Word& w) {
                if (!fail.empty()) return;
                ModelPoint y = TreePoint{w};
                Horofunction rho = orbit_horofunction(tree, y, sh.base);
                bool by_def = member(tree, sh, y);
                bool by_horo = horo_eval(rho, sh.center) <= depth;
                if (by_def != by_horo)
                    fail = "y=" + w.str() + " center=" + c.str() + " R=" + to_string(R) +
                           (by_def ? " in shadow but fails" : " outside shadow but passes") +
                           " the horofunction test";
            });
        }
    });
    return fail;
}

std::string check_shadow_gp_min(const Params& p, const VerifyHooks&) {
    Sampler s(108);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        Word c = random_word(s, 6);
        if (c.empty()) continue;
        Shadow sh{TreePoint{}, TreePoint{c}, Rat(1 + static_cast<long long>(s.raw() % 3), 2)};
        ModelPoint y = TreePoint{random_word(s, 9)};
        ModelPoint z = TreePoint{random_word(s, 9)};
        if (!shadow_contains(tree, sh, y) || !shadow_contains(tree, sh, z)) continue;
        if (gromov_product(tree, sh.base, y, z) < sh.distance_parameter(tree))
            return "shadow pair " + to_string(y) + "," + to_string(z) + " has gp below the distance parameter";
    }
    return ok();
}

std::string check_shadow_complement(const Params& p, const VerifyHooks&) {
    ModelSpace tree = ModelSpace::free_group(2);
    int radius = std::min(p.radius, 6);
    std::string fail;
    for_each_word(2, 3, [&](const Word& c) {
        if (!fail.empty() || c.empty()) return;
        for (Rat R : {Rat(1, 2), Rat(3, 2)}) {
            Shadow sh{TreePoint{}, TreePoint{c}, R};
            Shadow cover = shadow_complement_cover(tree, sh, Rat(0));
            for_each_word(2, radius, [&](const Word& w) {
                if (!fail.empty()) return;
                ModelPoint y = TreePoint{w};
                if (!shadow_contains(tree, sh, y) && !shadow_contains(tree, cover, y))
                    fail = w.str() + " escapes both the shadow (center " + c.str() + ") and its cover";
            });
        }
    });
    return fail;
}

std::string check_weak_convexity(const Params& p, const VerifyHooks&) {
    Sampler s(109);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        ModelPoint z1 = TreePoint{random_word(s, 9)};
        ModelPoint z2 = TreePoint{random_word(s, 9)};
        ModelPoint x = TreePoint{random_word(s, 9)};
        Horofunction r1 = orbit_horofunction(tree, z1);
        Horofunction r2 = orbit_horofunction(tree, z2);
        for (const ModelPoint& y : geodesic(tree, z1, z2).pts) {
            Rat v = horo_eval(orbit_horofunction(tree, y), x);
            Rat a = horo_eval(r1, x), b = horo_eval(r2, x);
            if (v < rat_min(a, b) || v > rat_max(a, b))
                return "weak convexity fails on [" + to_string(z1) + "," + to_string(z2) + "] at " + to_string(x);
        }
        // shadow convexity corollary
        Word c = random_word(s, 5);
        if (!c.empty()) {
            Shadow sh{TreePoint{}, TreePoint{c}, Rat(1, 2) + Rat(static_cast<long long>(s.raw() % 2))};
            if (shadow_contains(tree, sh, z1) && shadow_contains(tree, sh, z2)) {
                for (const ModelPoint& y : geodesic(tree, z1, z2).pts)
                    if (!shadow_contains(tree, sh, y))
                        return "geodesic between shadow points exits the shadow at " + to_string(y);
            }
        }
    }
    return ok();
}

std::string check_four_point(const Params& p, const VerifyHooks&) {
    Sampler s(110);
    ModelSpace tree = ModelSpace::free_group(2);
    int found = 0;
    for (int i = 0; i < p.samples * 10 && found < p.samples; ++i) {
        ModelPoint base = TreePoint{};
        ModelPoint a = TreePoint{random_word(s, 8)};
        ModelPoint b = TreePoint{random_word(s, 8)};
        ModelPoint c = TreePoint{random_word(s, 8)};
        ModelPoint d = TreePoint{random_word(s, 8)};
        Rat A = Rat(1 + static_cast<long long>(s.raw() % 4));
        auto est = four_point_gp_estimate(tree, base, a, b, c, d, A);
        if (!est) continue;
        ++found;
        if (*est != gromov_product(tree, base, a, c))
            return "four-point estimate differs from (a.c) for a=" + to_string(a) + " c=" + to_string(c);
    }
    return ok();
}

// ---------------------------------------------------------------------------
// horofunctions
// ---------------------------------------------------------------------------

std::string check_horo_basics(const Params& p, const VerifyHooks&) {
    Sampler s(111);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        Horofunction h = (s.raw() & 1)
                             ? orbit_horofunction(tree, TreePoint{random_word(s, 9)})
                             : busemann_horofunction(tree, random_end(s, 5, 3));
        ModelPoint z1 = TreePoint{random_word(s, 9)};
        ModelPoint z2 = TreePoint{random_word(s, 9)};
        if (horo_eval(h, tree.basepoint()) != Rat(0)) return "h(x0) != 0";
        if (rat_abs(horo_eval(h, z1) - horo_eval(h, z2)) > dist(tree, z1, z2))
            return "horofunction is not 1-Lipschitz at " + to_string(z1) + "," + to_string(z2);
        // min{-h(x), -h(y)} <= (x.y), exact on trees
        Rat lhs = rat_min(-horo_eval(h, z1), -horo_eval(h, z2));
        if (lhs > gromov_product(tree, tree.basepoint(), z1, z2))
            return "horofunction/Gromov-product inequality fails at " + to_string(z1) + "," + to_string(z2);
    }
    return ok();
}

std::string check_horo_action(const Params& p, const VerifyHooks&) {
    Sampler s(112);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        Horofunction h = (s.raw() & 1)
                             ? orbit_horofunction(tree, TreePoint{random_word(s, 8)})
                             : busemann_horofunction(tree, random_end(s, 4, 3));
        GroupElement g{random_word(s, 6), false};
        Horofunction gh = horo_action(g, h);
        GroupElement gi = inv(g);
        for (int j = 0; j < 6; ++j) {
            ModelPoint z = TreePoint{random_word(s, 8)};
            Rat expect = horo_eval(h, act(tree, gi, z)) - horo_eval(h, act(tree, gi, tree.basepoint()));
            if (horo_eval(gh, z) != expect)
                return "action formula fails for g=" + to_string(g) + " at z=" + to_string(z);
        }
    }
    return ok();
}

std::string check_local_min(const Params& p, const VerifyHooks&) {
    Sampler s(113);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        ModelPoint y = TreePoint{random_word(s, 8)};
        Horofunction h = orbit_horofunction(tree, y);
        LocalMinResult phi = local_min_map(h);
        // the set realizes {h <= inf h + 1}; diameter bounded by 2
        Rat inf = -dist(tree, tree.basepoint(), y);
        Rat diam(0);
        for (const ModelPoint& a : phi.points()) {
            if (horo_eval(h, a) > inf + 1) return "phi contains a non-near-minimizer";
            for (const ModelPoint& b : phi.points()) diam = rat_max(diam, dist(tree, a, b));
        }
        if (diam > Rat(2)) return "phi diameter exceeds 2 for y=" + to_string(y);
        // equivariance
        GroupElement g{random_word(s, 6), false};
        LocalMinResult lhs = local_min_map(horo_action(g, h));
        std::vector<ModelPoint> mapped;
        for (const ModelPoint& a : phi.points()) mapped.push_back(act(tree, g, a));
        std::sort(mapped.begin(), mapped.end(), model_point_less);
        if (!(lhs.points() == mapped)) return "phi is not equivariant for g=" + to_string(g);
    }
    return ok();
}

std::string check_profiles(const Params& p, const VerifyHooks&) {
    Sampler s(114);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples; ++i) {
        Horofunction h = (s.raw() & 1)
                             ? orbit_horofunction(tree, TreePoint{random_word(s, 9)})
                             : busemann_horofunction(tree, random_end(s, 4, 3));
        Geodesic g = geodesic(tree, TreePoint{random_word(s, 8)}, TreePoint{random_word(s, 8)});
        ProfileResult pr = restrict_profile(h, OrientedGeodesic{g, true});
        if (pr.residual != Rat(0)) return "tree profile has nonzero residual";
    }
    return ok();
}

std::string check_minimizing_sequences(const Params& p, const VerifyHooks&) {
    Sampler s(115);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < p.samples / 4 + 4; ++i) {
        TreeEnd xi = random_end(s, 4, 3);
        Horofunction h = busemann_horofunction(tree, xi);
        LocalMinResult phi = local_min_map(h);
        if (!phi.is_boundary()) return "Busemann horofunction mapped to an interior set";
        // the prefix points form a minimizing Gromov sequence converging to xi
        for (std::size_t na = 4; na <= 10; na += 3) {
            for (std::size_t nb = 4; nb <= 10; nb += 3) {
                Word a = xi.head(na), b = xi.head(nb);
                if (horo_eval(h, TreePoint{a}) != -Rat(static_cast<long long>(na)))
                    return "prefix point is not minimizing";
                Rat gp = gromov_product(tree, tree.basepoint(), TreePoint{a}, TreePoint{b});
                if (gp < Rat(static_cast<long long>(std::min(na, nb))))
                    return "prefix points are not a Gromov sequence";
            }
        }
        if (!same_boundary_point(phi.boundary(), BoundaryPoint{xi}))
            return "minimizing sequence limit differs from phi";
    }
    return ok();
}

// ---------------------------------------------------------------------------
// walks
// ---------------------------------------------------------------------------

std::string check_walk_determinism(const Params&, const VerifyHooks&) {
    StepDistribution mu = StepDistribution::uniform_f2();
    SamplePath a = sample_path(mu, 300, 777);
    SamplePath b = sample_path(mu, 300, 777);
    for (std::size_t k = 0; k <= a.length(); ++k)
        if (!(a.locations[k] == b.locations[k])) return "same seed produced different paths";
    EmpiricalMeasure m1 = empirical_pushforward(mu, 40, 500, PushforwardKey::Location, 0, 4242, false, 1);
    EmpiricalMeasure m4 = empirical_pushforward(mu, 40, 500, PushforwardKey::Location, 0, 4242, false, 4);
    if (!(m1.counts == m4.counts)) return "worker count changed the empirical measure";
    return ok();
}

std::string check_walk_algebra(const Params& p, const VerifyHooks&) {
    Sampler s(116);
    StepDistribution mu = StepDistribution::uniform_f2();
    StepDistribution refl = mu.reflected().reflected();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < refl.size(); ++j)
            if (refl.atom(j) == mu.atom(i) && refl.prob(j) == mu.prob(i)) found = true;
        if (!found) return "double reflection changed the distribution";
    }
    for (int i = 0; i < std::min(p.samples, 60); ++i) {
        SamplePath path = sample_path(mu, 40, s.raw());
        if (!(shift(path, 0).locations == path.locations)) return "shift by 0 changed the path";
        SamplePath s1 = shift(shift(path, 1), 1);
        SamplePath s2 = shift(path, 2);
        if (!(s1.locations == s2.locations)) return "shift semigroup law fails";
        for (std::size_t k = 0; k + 1 <= path.length(); ++k)
            if (!(path.locations[k + 1] == mul(path.locations[k], path.increments[k])))
                return "location recursion fails";
        // Kingman subadditivity along the path, exact
        for (int rep = 0; rep < 5; ++rep) {
            std::size_t n = 1 + s.raw() % 20, m = 1 + s.raw() % 19;
            if (n + m > path.length()) continue;
            long long lhs = static_cast<long long>(path.locations[n + m].word.size());
            long long a = static_cast<long long>(path.locations[n].word.size());
            long long b = static_cast<long long>(shift(path, n).locations[m].word.size());
            if (lhs > a + b) return "subadditivity fails";
        }
    }
    return ok();
}

std::string check_limit_points(const Params& p, const VerifyHooks&) {
    StepDistribution mu = StepDistribution::uniform_f2();
    int trials = p.mc_trials >= 10000 ? 1000 : 200;
    std::size_t n = p.mc_trials >= 10000 ? 10000 : 2000;
    int resolved = 0;
    for (int t = 0; t < trials; ++t) {
        SamplePath path = sample_path(mu, n, derive_stream(31337, static_cast<std::uint64_t>(t)));
        if (limit_point(path, 5)) ++resolved;
    }
    double rate = static_cast<double>(resolved) / trials;
    double need = p.mc_trials >= 10000 ? 0.99 : 0.95;
    if (rate < need)
        return "resolution rate " + std::to_string(rate) + " below " + std::to_string(need);
    return ok();
}

std::string check_stationarity(const Params& p, const VerifyHooks&) {
    StepDistribution mu = StepDistribution::uniform_f2();
    int trials = p.mc_trials;
    StationarityResult res = stationarity_check(mu, 3, trials, 120, 90210);
    double bound = 3.0 / std::sqrt(static_cast<double>(trials)) + 0.002;
    if (res.tv_distance > bound)
        return "TV distance " + std::to_string(res.tv_distance) + " above " + std::to_string(bound);
    return ok();
}

std::string check_cylinder_masses(const Params& p, const VerifyHooks&) {
    StepDistribution mu = StepDistribution::uniform_f2();
    int trials = std::max(2000, p.mc_trials / 10);
    EmpiricalMeasure deep =
        empirical_pushforward(mu, 150, trials, PushforwardKey::BoundaryPrefix, 10, 555);
    // nesting: masses aggregate consistently and stay <= 1
    double total = 0.0;
    for (const auto& [key, count] : deep.counts) {
        if (key == kUnresolvedKey) continue;
        total += static_cast<double>(count);
    }
    if (total > static_cast<double>(deep.total)) return "cylinder masses exceed 1";
    EmpiricalMeasure d3 = aggregate_prefixes(deep, mu, 3);
    EmpiricalMeasure d2 = aggregate_prefixes(deep, mu, 2);
    for (const auto& [key, count] : d3.counts) {
        if (key == kUnresolvedKey) continue;
        if (d2.counts.at(key.substr(0, 2)) < count) return "nesting violated at " + key;
    }
    // non-atomicity proxy: the deepest cylinders carry far less mass than the
    // first-letter cylinders
    auto max_mass = [&](std::size_t depth) {
        EmpiricalMeasure m = aggregate_prefixes(deep, mu, depth);
        std::uint64_t best = 0;
        for (const auto& [key, count] : m.counts)
            if (key != kUnresolvedKey) best = std::max(best, count);
        return static_cast<double>(best) / static_cast<double>(m.total);
    };
    if (max_mass(10) > 0.2 * max_mass(1)) return "depth-10 cylinder mass fails to decay";
    return ok();
}

std::string check_nonelementary_detection(const Params&, const VerifyHooks&) {
    StepDistribution f2 = StepDistribution::uniform_f2();
    auto r = check_nonelementary(f2);
    if (!r.nonelementary || !r.witnesses) return "uniform F2 not detected as non-elementary";
    Word a = Word::from_letter(1);
    auto pm = check_nonelementary(StepDistribution::point_mass(GroupElement{a, false}));
    if (pm.nonelementary) return "point mass flagged non-elementary";
    auto sym = check_nonelementary(
        StepDistribution::uniform({GroupElement{a, false}, GroupElement{a.inverse(), false}}));
    if (sym.nonelementary) return "{a, a^-1} flagged non-elementary";
    return ok();
}

// ---------------------------------------------------------------------------
// estimators
// ---------------------------------------------------------------------------

std::string check_translation_identities(const Params& p, const VerifyHooks&) {
    ModelSpace tree = ModelSpace::free_group(2);
    int radius = std::min(p.radius + 1, 8);
    std::string fail;
    for_each_word(2, radius, [&](const Word& w) {
        if (!fail.empty() || w.empty()) return;
        GroupElement g{w, false};
        long long tau = translation_length_exact(g);
        long long sq = static_cast<long long>((w * w).size());
        if (sq - static_cast<long long>(w.size()) != tau) {
            fail = "tau != |g^2| - |g| for " + w.str();
            return;
        }
        auto formula = translation_length_formula(tree, g, Rat(1));
        if (!formula) {
            fail = "formula guard fails for " + w.str();
            return;
        }
        if (*formula != Rat(tau)) fail = "formula value differs for " + w.str();
    });
    if (!fail.empty()) return fail;
    // homogeneity on a sample
    Sampler s(117);
    for (int i = 0; i < 50; ++i) {
        GroupElement g{random_word(s, 6), false};
        long long k = 2 + static_cast<long long>(s.raw() % 3);
        if (translation_length_exact(pow(g, k)) != k * translation_length_exact(g))
            return "tau(g^k) != k tau(g) for " + to_string(g);
    }
    return ok();
}

std::string check_persistence_bound(const Params& p, const VerifyHooks&) {
    StepDistribution mu = StepDistribution::uniform_f2();
    int trials = p.mc_trials >= 10000 ? 30 : 10;
    for (int t = 0; t < trials; ++t) {
        SamplePath path = sample_path(mu, 20 * 60, derive_stream(2024, static_cast<std::uint64_t>(t)));
        PersistenceStats st = persistent_segments(path, 20, Rat(3), Rat(0), Rat(1));
        if (!st.lower_bound_ok) return "distance lower bound violated on a sampled path";
    }
    return ok();
}

std::string check_hitting_monotone(const Params& p, const VerifyHooks&) {
    StepDistribution mu = StepDistribution::uniform_f2();
    Word c = *Word::parse("abab", 2);
    int trials = std::min(p.mc_trials, 4000);
    double prev = -1.0;
    for (std::size_t horizon : {10, 40, 120}) {
        TailEstimate h = hitting_prob(mu, Shadow{TreePoint{}, TreePoint{c}, Rat(3, 2)}, horizon,
                                      trials, WalkDirection::Forward, 6060);
        if (h.p_hat < prev) return "hitting probability decreased with the horizon";
        prev = h.p_hat;
    }
    double prev_r = -1.0;
    for (Rat R : {Rat(1, 2), Rat(3, 2), Rat(5, 2)}) {
        TailEstimate h = hitting_prob(mu, Shadow{TreePoint{}, TreePoint{c}, R}, 60, trials,
                                      WalkDirection::Forward, 6060);
        if (h.p_hat < prev_r) return "hitting probability decreased with R";
        prev_r = h.p_hat;
    }
    return ok();
}

std::string check_shift_compatibility(const Params& p, const VerifyHooks&) {
    // chi-squared two-sample test on the distance distribution at time 4.
    StepDistribution mu = StepDistribution::uniform_f2();
    int trials = std::max(p.mc_trials, 800);
    std::map<long long, std::uint64_t> fresh, shifted;
    for (int t = 0; t < trials; ++t) {
        SamplePath a = sample_path(mu, 4, derive_stream(880001, static_cast<std::uint64_t>(t)));
        ++fresh[static_cast<long long>(a.locations[4].word.size())];
        SamplePath b = sample_path(mu, 7, derive_stream(880002, static_cast<std::uint64_t>(t)));
        ++shifted[static_cast<long long>(shift(b, 3).locations[4].word.size())];
    }
    double chi2 = 0.0;
    int cells = 0;
    for (long long d : {0LL, 2LL, 4LL}) {
        double o1 = static_cast<double>(fresh[d]);
        double o2 = static_cast<double>(shifted[d]);
        double tot = o1 + o2;
        if (tot == 0) continue;
        ++cells;
        chi2 += (o1 - o2) * (o1 - o2) / tot; // equal sample sizes
    }
    // alpha = 0.001 critical values for df = cells - 1
    double crit = cells <= 1 ? 10.83 : (cells == 2 ? 13.82 : 16.27);
    if (chi2 > crit) return "chi-squared statistic " + std::to_string(chi2) + " exceeds " + std::to_string(crit);
    return ok();
}

// ---------------------------------------------------------------------------
// strips
// ---------------------------------------------------------------------------

std::string check_strips(const Params& p, const VerifyHooks&) {
    Word a = Word::from_letter(1);
    Word b = Word::from_letter(2);
    BGParams params(Rat(1, 2), Rat(3), GroupElement{a.pow(4), false});
    BoundaryPair axis(TreeEnd(Word{}, a), TreeEnd(Word{}, a.inverse()));
    int r = std::min(p.radius + 2, 8);
    auto brute = enumerate_bg_brute(axis, params, r);
    auto tube = enumerate_bg_in_ball(axis, params, r);
    if (brute.size() != tube.size()) return "tube enumeration disagrees with brute force (axis pair)";
    for (std::size_t i = 0; i < brute.size(); ++i)
        if (!(brute[i] == tube[i])) return "tube enumeration element mismatch";
    // equivariance: membership of h in bg(alpha,beta) iff gh in bg(g alpha, g beta)
    Sampler s(118);
    ModelSpace tree = ModelSpace::free_group(2);
    for (int i = 0; i < 40; ++i) {
        GroupElement g{random_word(s, 4), false};
        GroupElement h{random_word(s, 5), false};
        BoundaryPair moved(std::get<TreeEnd>(act(tree, g, BoundaryPoint{axis.alpha})),
                           std::get<TreeEnd>(act(tree, g, BoundaryPoint{axis.beta})));
        if (is_bounded_geometry(h, axis, params) != is_bounded_geometry(mul(g, h), moved, params))
            return "bg equivariance fails for g=" + to_string(g) + " h=" + to_string(h);
    }
    // local finiteness against the acylindricity census
    std::size_t census = displacement_count(2, Word{}, a.pow(30), 11);
    for (int i = 0; i < 10; ++i) {
        Word x = random_word(s, 6);
        if (per_ball_multiplicity(axis, params, x) > census)
            return "per-ball multiplicity exceeds the displacement census at " + x.str();
    }
    (void)b;
    return ok();
}

} // namespace

VerifyReport run_verify(VerifyLevel level, std::ostream* progress) {
    return run_verify(level, VerifyHooks{}, progress);
}

VerifyReport run_verify(VerifyLevel level, const VerifyHooks& hooks, std::ostream* progress) {
    Params p = params_for(level);
    std::vector<Check> checks = {
        {"space:metric-axioms", check_metric_axioms},
        {"space:zero-slim-triangles", check_delta_slim},
        {"space:group-action", check_group_action},
        {"space:cyclic-reduction", check_cyclic_reduce},
        {"geometry:gp-triangle-inequality", check_gp_triangle},
        {"geometry:gp-geodesic-distance", check_gp_geodesic},
        {"geometry:nearest-point-projection", check_npp},
        {"geometry:npp-shadow", check_npp_shadow},
        {"geometry:shadow-horofunction", check_shadow_horo},
        {"geometry:shadow-gp-min", check_shadow_gp_min},
        {"geometry:shadow-complement-cover", check_shadow_complement},
        {"geometry:weak-convexity", check_weak_convexity},
        {"geometry:four-point-estimate", check_four_point},
        {"horofunction:lipschitz-and-gp", check_horo_basics},
        {"horofunction:action-formula", check_horo_action},
        {"horofunction:local-min-map", check_local_min},
        {"horofunction:geodesic-profiles", check_profiles},
        {"horofunction:minimizing-sequences", check_minimizing_sequences},
        {"walk:determinism", check_walk_determinism},
        {"walk:shift-and-reflection", check_walk_algebra},
        {"walk:limit-point-resolution", check_limit_points},
        {"walk:stationarity", check_stationarity},
        {"walk:cylinder-masses", check_cylinder_masses},
        {"walk:nonelementary-detection", check_nonelementary_detection},
        {"estimators:translation-identities", check_translation_identities},
        {"estimators:persistence-lower-bound", check_persistence_bound},
        {"estimators:hitting-monotonicity", check_hitting_monotone},
        {"estimators:shift-compatibility", check_shift_compatibility},
        {"strips:enumeration-and-bounds", check_strips},
    };
    VerifyReport report;
    for (const Check& c : checks) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            detail = c.fn(p, hooks);
            pass = detail.empty();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.checks.push_back({c.name, pass, detail, ms});
        if (progress) {
            (*progress) << (pass ? "PASS " : "FAIL ") << c.name;
            if (!pass) (*progress) << "  [" << detail << "]";
            (*progress) << "  (" << static_cast<long long>(ms) << " ms)\n";
        }
    }
    return report;
}

} // namespace hypwalk
