#include "hypwalk/geometry.hpp"

#include <algorithm>

namespace hypwalk {

Rat gromov_product(const ModelSpace& space, const ModelPoint& base,
                   const ModelPoint& x, const ModelPoint& y) {
    return (dist(space, base, x) + dist(space, base, y) - dist(space, x, y)) / 2;
}

namespace {

const TreeEnd& tree_end(const BoundaryPoint& xi) {
    if (const auto* e = std::get_if<TreeEnd>(&xi)) return *e;
    throw std::invalid_argument("boundary Gromov products are supported on tree models only");
}

const Word& tree_word(const ModelPoint& p) {
    if (const auto* t = std::get_if<TreePoint>(&p)) return t->w;
    throw std::invalid_argument("expected a tree point");
}

} // namespace

std::optional<Rat> gromov_product(const ModelSpace& space, const ModelPoint& base,
                                  const BoundaryPoint& xi, const BoundaryPoint& eta) {
    if (space.model != Model::FreeTree)
        throw std::invalid_argument("boundary Gromov products are supported on tree models only");
    Word binv = tree_word(base).inverse();
    TreeEnd a = tree_end(xi).prepend(binv);
    TreeEnd b = tree_end(eta).prepend(binv);
    auto overlap = common_prefix_len(a, b);
    if (!overlap) return std::nullopt;
    return Rat(static_cast<long long>(*overlap));
}

Rat gromov_product(const ModelSpace& space, const ModelPoint& base,
                   const BoundaryPoint& xi, const ModelPoint& y) {
    if (space.model != Model::FreeTree)
        throw std::invalid_argument("boundary Gromov products are supported on tree models only");
    Word binv = tree_word(base).inverse();
    TreeEnd a = tree_end(xi).prepend(binv);
    Word v = binv * tree_word(y);
    return Rat(static_cast<long long>(common_prefix_len(a, v)));
}

namespace {

// Distance from a point to the segment between two points of one arm
// (same ray / the line), computed by clamping.
Rat segment_distance(const ModelSpace& space, const ModelPoint& x,
                     const ModelPoint& a, const ModelPoint& b) {
    Rat da = dist(space, x, a);
    Rat db = dist(space, x, b);
    Rat ab = dist(space, a, b);
    // One-dimensional pieces: if x projects inside, the defect
    // (da + db - ab)/2 is the distance; otherwise an endpoint is nearest.
    Rat interior = (da + db - ab) / 2;
    return rat_min(rat_min(da, db), interior < 0 ? Rat(0) : interior);
}

} // namespace

Rat dist_to_geodesic(const ModelSpace& space, const ModelPoint& x, const Geodesic& g) {
    if (g.empty()) throw std::invalid_argument("empty geodesic");
    switch (space.model) {
        case Model::Line:
        case Model::Wedge: {
            Rat best = dist(space, x, g.pts.front());
            for (std::size_t i = 0; i + 1 < g.pts.size(); ++i)
                best = rat_min(best, segment_distance(space, x, g.pts[i], g.pts[i + 1]));
            return best;
        }
        default: {
            Rat best = dist(space, x, g.pts.front());
            for (const ModelPoint& p : g.pts) best = rat_min(best, dist(space, x, p));
            return best;
        }
    }
}

ModelPoint nearest_point_projection(const ModelSpace& space, const ModelPoint& y,
                                    const Geodesic& g) {
    if (g.empty()) throw std::invalid_argument("empty geodesic");
    if (space.model == Model::Line || space.model == Model::Wedge) {
        // Clamp onto each one-dimensional piece, then take the best vertex
        // or interior projection.
        ModelPoint best = g.pts.front();
        Rat best_d = dist(space, y, best);
        auto consider = [&](const ModelPoint& cand) {
            Rat d = dist(space, y, cand);
            if (d < best_d || (d == best_d && model_point_less(cand, best))) {
                best = cand;
                best_d = d;
            }
        };
        for (const ModelPoint& p : g.pts) consider(p);
        for (std::size_t i = 0; i + 1 < g.pts.size(); ++i) {
            const ModelPoint& a = g.pts[i];
            const ModelPoint& b = g.pts[i + 1];
            if (space.model == Model::Line) {
                Rat xa = std::get<LinePoint>(a).x, xb = std::get<LinePoint>(b).x;
                Rat t = std::get<LinePoint>(y).x;
                Rat lo = rat_min(xa, xb), hi = rat_max(xa, xb);
                consider(LinePoint{t < lo ? lo : (t > hi ? hi : t)});
            } else {
                const auto& ra = std::get<RayPoint>(a);
                const auto& rb = std::get<RayPoint>(b);
                const auto& ry = std::get<RayPoint>(y);
                std::uint32_t arm = ra.s != Rat(0) ? ra.ray : rb.ray;
                if (ry.s != Rat(0) && ry.ray == arm) {
                    Rat lo = rat_min(ra.s, rb.s), hi = rat_max(ra.s, rb.s);
                    Rat t = ry.s;
                    consider(make_ray_point(arm, t < lo ? lo : (t > hi ? hi : t)));
                }
            }
        }
        return best;
    }
    ModelPoint best = g.pts.front();
    Rat best_d = dist(space, y, best);
    for (const ModelPoint& p : g.pts) {
        Rat d = dist(space, y, p);
        if (d < best_d || (d == best_d && model_point_less(p, best))) {
            best = p;
            best_d = d;
        }
    }
    return best;
}

bool shadow_contains(const ModelSpace& space, const Shadow& s, const ModelPoint& y) {
    return gromov_product(space, s.base, s.center, y) >= s.distance_parameter(space);
}

bool shadow_contains_boundary(const ModelSpace& space, const Shadow& s, const BoundaryPoint& xi) {
    Rat gp = gromov_product(space, s.base, xi, s.center);
    return gp >= s.distance_parameter(space);
}

Shadow shadow_complement_cover(const ModelSpace& space, const Shadow& s, Rat slack) {
    return Shadow{s.center, s.base, dist(space, s.base, s.center) - s.radius + slack};
}

std::optional<Rat> four_point_gp_estimate(const ModelSpace& space, const ModelPoint& base,
                                          const ModelPoint& a, const ModelPoint& b,
                                          const ModelPoint& c, const ModelPoint& d,
                                          Rat A, std::optional<Rat> slack) {
    Rat sl = slack ? *slack : (space.delta() == Rat(0) ? Rat(1, 2) : 4 * space.delta());
    if (gromov_product(space, base, a, b) < A) return std::nullopt;
    if (gromov_product(space, base, c, d) < A) return std::nullopt;
    if (gromov_product(space, base, a, c) > A - sl) return std::nullopt;
    return gromov_product(space, base, b, d);
}

} // namespace hypwalk
