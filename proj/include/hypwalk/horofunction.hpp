#pragma once

#include "hypwalk/geometry.hpp"
#include "hypwalk/space.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace hypwalk {

/// rho_y(z) = d(z, y) - d(x0, y): the horofunction of an interior point.
struct OrbitHoro {
    ModelPoint y;
};

/// Busemann function of a boundary point, evaluated exactly: on trees the
/// limit of d(z, gamma_t) - t stabilizes at finite t.
struct BusemannHoro {
    BoundaryPoint xi;
};

/// Extension hook: an arbitrary 1-Lipschitz function vanishing at the
/// basepoint. Only the numeric probing path applies to it.
struct FunctionHoro {
    std::function<Rat(const ModelPoint&)> f;
};

/// An exact horofunction evaluator with h(basepoint) = 0.
struct Horofunction {
    ModelSpace space;
    ModelPoint basepoint;
    std::variant<OrbitHoro, BusemannHoro, FunctionHoro> kind;
};

Horofunction orbit_horofunction(const ModelSpace& space, ModelPoint y);
Horofunction orbit_horofunction(const ModelSpace& space, ModelPoint y, ModelPoint basepoint);
Horofunction busemann_horofunction(const ModelSpace& space, BoundaryPoint xi);
Horofunction busemann_horofunction(const ModelSpace& space, BoundaryPoint xi, ModelPoint basepoint);

Rat horo_eval(const Horofunction& h, const ModelPoint& z);

enum class HoroClass { Finite, Infinite, Unknown };

/// Structural classification: orbit horofunctions attain their infimum,
/// Busemann functions are unbounded below. Numeric probing (the only path
/// available for FunctionHoro) can never certify either and reports Unknown
/// once the budget is exhausted.
HoroClass classify(const Horofunction& h, int probe_budget = 0);

/// phi(h): the near-minimizer set {h <= inf h + 1} of a finite horofunction
/// (radius-1 ball in the discrete models, segment endpoints on the line),
/// or the boundary limit of any minimizing sequence for an infinite one.
struct LocalMinResult {
    std::variant<std::vector<ModelPoint>, BoundaryPoint> value;

    bool is_boundary() const { return value.index() == 1; }
    const std::vector<ModelPoint>& points() const { return std::get<0>(value); }
    const BoundaryPoint& boundary() const { return std::get<1>(value); }
};

LocalMinResult local_min_map(const Horofunction& h);

enum class ProfileKind { VShape, Monotone };

/// Restriction of h to a geodesic: either V-shaped around an interior
/// minimum p, or monotone with slope +-1 from the first point.
struct ProfileResult {
    ProfileKind kind;
    ModelPoint p;
    int slope = 0; // +-1 for monotone profiles
    Rat residual{0};
};

ProfileResult restrict_profile(const Horofunction& h, const OrientedGeodesic& gamma,
                               std::optional<Rat> slack = std::nullopt);

/// g.h(z) = h(g^{-1} z) - h(g^{-1} x0); orbit horofunctions map to the
/// translated point, Busemann functions to the translated end.
Horofunction horo_action(const GroupElement& g, const Horofunction& h);

/// sup_z |h_n(z) - candidate(z)| over the test points, for each member of
/// the sequence. The last entry is the pointwise-limit check.
std::vector<Rat> pointwise_deviation_series(const std::vector<Horofunction>& seq,
                                            const Horofunction& candidate,
                                            const std::vector<ModelPoint>& test_points);

Rat pointwise_limit_check(const std::vector<Horofunction>& seq, const Horofunction& candidate,
                          const std::vector<ModelPoint>& test_points);

} // namespace hypwalk
