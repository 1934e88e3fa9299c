#pragma once

#include "hypwalk/space.hpp"

#include <optional>

namespace hypwalk {

/// Gromov product (x . y)_base = (d(base,x) + d(base,y) - d(x,y)) / 2.
Rat gromov_product(const ModelSpace& space, const ModelPoint& base,
                   const ModelPoint& x, const ModelPoint& y);

/// Gromov product of two tree ends at a tree vertex. nullopt encodes
/// infinity (the two ends coincide). On trees the sup-liminf definition is
/// realized exactly by the overlap of the infinite words.
std::optional<Rat> gromov_product(const ModelSpace& space, const ModelPoint& base,
                                  const BoundaryPoint& xi, const BoundaryPoint& eta);

/// Gromov product of a tree end with an interior point (always finite).
Rat gromov_product(const ModelSpace& space, const ModelPoint& base,
                   const BoundaryPoint& xi, const ModelPoint& y);

/// Distance from a point to a geodesic segment (exact per model).
Rat dist_to_geodesic(const ModelSpace& space, const ModelPoint& x, const Geodesic& g);

/// Nearest point on a geodesic. Unique in tree models; ties elsewhere
/// resolve to the canonically least point.
ModelPoint nearest_point_projection(const ModelSpace& space, const ModelPoint& y,
                                    const Geodesic& g);

/// The shadow S_base(center, R) = { y : (center . y)_base >= d(base,center) - R }.
/// Shadows are closed sets; the open variant lives with the horofunctions.
struct Shadow {
    ModelPoint base;
    ModelPoint center;
    Rat radius{0};

    Rat distance_parameter(const ModelSpace& space) const {
        return dist(space, base, center) - radius;
    }
    /// dep(S) = 2R - d(base, center).
    Rat depth(const ModelSpace& space) const {
        return 2 * radius - dist(space, base, center);
    }
};

bool shadow_contains(const ModelSpace& space, const Shadow& s, const ModelPoint& y);

/// Membership of a tree end in the closure of a shadow. On trees the
/// boundary trace of a shadow is clopen, so closure membership is the plain
/// Gromov-product threshold on the infinite word.
bool shadow_contains_boundary(const ModelSpace& space, const Shadow& s, const BoundaryPoint& xi);

/// The complement of S_x(y, R) is contained in S_y(x, R~) with
/// R~ = d(x,y) - R + slack; on trees slack 0 already suffices.
Shadow shadow_complement_cover(const ModelSpace& space, const Shadow& s, Rat slack);

/// Four-point estimate: if (a.b) >= A, (c.d) >= A and (a.c) <= A - slack at
/// the basepoint, returns (b.d), which on trees equals (a.c) exactly.
/// Returns nullopt when the hypotheses fail. The tree slack defaults to 1/2,
/// the smallest positive value on the half-integer grid; with slack 0 the
/// boundary case (a.c) = A can break the exact equality.
std::optional<Rat> four_point_gp_estimate(const ModelSpace& space, const ModelPoint& base,
                                          const ModelPoint& a, const ModelPoint& b,
                                          const ModelPoint& c, const ModelPoint& d,
                                          Rat A, std::optional<Rat> slack = std::nullopt);

} // namespace hypwalk
