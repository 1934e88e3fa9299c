#pragma once

#include "hypwalk/geometry.hpp"
#include "hypwalk/walk.hpp"

#include <cstdint>
#include <vector>

namespace hypwalk {

/// Parameters of (K,R,v)-bounded geometry. The invariant d(x0, v x0) >= R
/// makes condition (1) hold for every g, since the action is isometric.
struct BGParams {
    Rat K{1};
    Rat R{1};
    GroupElement v;

    BGParams(Rat k, Rat r, GroupElement v_elem);
};

/// A pair of distinct tree ends (the forward and backward limit points).
struct BoundaryPair {
    TreeEnd alpha;
    TreeEnd beta;

    BoundaryPair(TreeEnd a, TreeEnd b);

    /// Depth at which the two ends diverge.
    std::size_t split_depth() const;
};

/// Exact evaluation of the three bounded-geometry conditions on the tree:
/// (1) d(g x0, g v x0) >= R, (2) alpha lies in the closure of
/// S_{gv x0}(g x0, K), (3) beta in that of S_{g x0}(gv x0, K). Shadow traces
/// on the tree boundary are clopen, so closure membership is a plain
/// Gromov-product threshold on the infinite words.
bool is_bounded_geometry(const GroupElement& g, const BoundaryPair& pair, const BGParams& params);

/// All bounded-geometry elements g with |g| <= r, by brute force over the
/// ball. Exhaustive but exponential: guarded by a budget on r.
std::vector<GroupElement> enumerate_bg_brute(const BoundaryPair& pair, const BGParams& params,
                                             int r, int budget = 10);

/// Same set via the geodesic-neighbourhood enumeration: every
/// bounded-geometry point lies within K of the geodesic (alpha, beta), so
/// candidates are confined to a tube around it. Scales linearly in r.
std::vector<GroupElement> enumerate_bg_in_ball(const BoundaryPair& pair, const BGParams& params,
                                               int r);

/// Count-only variant (the strip series needs nothing else).
std::size_t count_bg_in_ball(const BoundaryPair& pair, const BGParams& params, int r);

/// Number of bounded-geometry orbit points in B(x, 4K).
std::size_t per_ball_multiplicity(const BoundaryPair& pair, const BGParams& params, const Word& x);

/// Brute-force acylindricity count: group elements moving both x and y by
/// at most displacement. The free action makes this finite; the enumeration
/// over B(e, displacement) is guarded by a budget.
std::size_t displacement_count(int rank, const Word& x, const Word& y, int displacement,
                               int budget = 12);

struct StripSeriesPoint {
    std::size_t n = 0;
    long long radius = -1;      // d(x0, w_n x0); -1 when unresolved
    std::size_t count = 0;      // |bg(alpha,beta) cap B_G(1, radius)|
    double log_card_over_n = 0; // (1/n) log(1 + count)
    bool resolved = false;
};

struct StripSeries {
    std::vector<StripSeriesPoint> points;
    double bg_time_density = 0.0; // fraction of times n with w_n in bg(omega)
    std::size_t density_times = 0;
    bool pair_resolved = false;
};

/// The log-cardinality series of the strip criterion along one bi-infinite
/// walk: at each requested n, counts strip elements in the ball of radius
/// d(x0, w_n x0). Both limit points must resolve deeply enough that every
/// Gromov product the enumeration probes is determined by the sampled path.
StripSeries strip_criterion_series(const BiSamplePath& path, const BGParams& params,
                                   const std::vector<std::size_t>& ns);

/// Samples `trials` seeded bi-infinite walks of length sim_len each way and
/// evaluates the series on each.
std::vector<StripSeries> strip_series_experiment(const StepDistribution& mu,
                                                 const BGParams& params,
                                                 const std::vector<std::size_t>& ns,
                                                 std::size_t sim_len, int trials,
                                                 std::uint64_t seed, int workers = 0);

} // namespace hypwalk
