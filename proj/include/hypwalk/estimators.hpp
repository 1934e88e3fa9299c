#pragma once

#include "hypwalk/geometry.hpp"
#include "hypwalk/walk.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hypwalk {

// ---------------------------------------------------------------------------
// Small statistics helpers shared by the estimators.
// ---------------------------------------------------------------------------

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rmse = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// ---------------------------------------------------------------------------
// Drift.
// ---------------------------------------------------------------------------

struct DriftEstimate {
    double l_hat = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
    int trials = 0;
};

/// Rejects step distributions whose walk cannot drift: the support must
/// either be non-elementary or generate a one-directional hyperbolic
/// semigroup (a point mass on a^k drifts; support {a, a^{-1}} does not).
bool drift_precondition(const StepDistribution& mu, std::string* reason = nullptr);

/// Mean and standard error of d(x0, w_n x0)/n over seeded trials.
DriftEstimate estimate_drift(const StepDistribution& mu, std::size_t n, int trials,
                             std::uint64_t seed, int workers = 0);

struct TailEstimate {
    double p_hat = 0.0;
    Interval wilson;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

/// Empirical P(d(x0, w_n x0) <= L n).
TailEstimate drift_tail(const StepDistribution& mu, std::size_t n, double L, int trials,
                        std::uint64_t seed, int workers = 0);

// ---------------------------------------------------------------------------
// Persistent segments (the positive-drift machinery).
// ---------------------------------------------------------------------------

struct PersistenceStats {
    std::size_t k = 0;
    Rat R{0}, C{0}, C0{0};
    std::size_t segments = 0;     // candidate segments examined (the n of Z_n^k)
    std::size_t z = 0;            // persistent count Z_n^k
    double density = 0.0;         // z / segments
    bool lower_bound_ok = false;  // d(x0, w_{kn} x0) >= (C0/2) Z on this path
};

/// Evaluates the persistence conditions exactly along one sample path:
/// a segment [x_i, x_{i+1}] of the k-step walk is persistent when it is long
/// enough and the whole past (resp. future) of the k-step path sits in the
/// shadow behind x_i (resp. beyond x_{i+1}).
PersistenceStats persistent_segments(const SamplePath& path, std::size_t k, Rat R, Rat C, Rat C0);

struct PersistenceExperiment {
    std::size_t k = 0;
    Rat R{0}, C{0}, C0{0};
    std::vector<PersistenceStats> trials;
    double density = 0.0;          // pooled Z / pooled segments
    Interval density_wilson;       // 99% Wilson on the pooled counts
    bool all_lower_bounds_ok = false;
};

PersistenceExperiment persistence_experiment(const StepDistribution& mu, std::size_t k, Rat R,
                                             Rat C, Rat C0, std::size_t n, int trials,
                                             std::uint64_t seed, int workers = 0);

struct PersistenceRecipe {
    Rat R{0};
    std::size_t k = 0;
};

/// The pilot recipe: R makes shadows of that distance parameter hit with
/// probability below eps, and k makes a k-step increment clear 2R + 2C + C0
/// with probability at least 1 - eps.
PersistenceRecipe persistence_recipe(const StepDistribution& mu, double eps, std::uint64_t seed,
                                     int workers = 0);

// ---------------------------------------------------------------------------
// Hitting probabilities and shadow decay.
// ---------------------------------------------------------------------------

enum class WalkDirection { Forward, Backward };

/// Fraction of walks that enter the shadow by the horizon (time 0 counts).
/// The horizon is a documented truncation of the all-time quantity; the
/// estimate is monotone nondecreasing in it.
TailEstimate hitting_prob(const StepDistribution& mu, const Shadow& shadow, std::size_t horizon,
                          int trials, WalkDirection direction, std::uint64_t seed,
                          int workers = 0);

struct DecayFit {
    std::vector<std::pair<long long, double>> pairs; // (r, mean positive cylinder mass)
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // rmse of the log-mass fit
    std::size_t dropped_zero_cylinders = 0;
    EmpiricalMeasure measure; // boundary prefixes at depth r_hi
};

/// Empirical boundary-cylinder masses for prefix lengths r in [r_lo, r_hi]
/// (a depth-r cylinder is the shadow S_e(p, 1/2) of its prefix word) and an
/// OLS fit of log mass against r.
DecayFit shadow_decay(const StepDistribution& mu, int r_lo, int r_hi, int trials,
                      std::size_t walk_len, std::uint64_t seed, int workers = 0);

// ---------------------------------------------------------------------------
// Translation length.
// ---------------------------------------------------------------------------

/// Exact translation length on the tree: the length of the cyclic core.
long long translation_length_exact(const GroupElement& g);

/// The coarse formula d(x0, g x0) - 2 (g^{-1} x0 . g x0)_{x0}, valid under
/// the guard d(x0, g x0) >= 2 gp + C0; nullopt when the guard fails. On the
/// tree, C0 = 1 makes it agree with the exact value everywhere.
std::optional<Rat> translation_length_formula(const ModelSpace& space, const GroupElement& g,
                                              Rat C0);

struct TranslationSample {
    long long tau_exact = 0;
    std::optional<Rat> tau_formula; // absent when the guard fails
    bool guard_held = false;
};

struct TranslationGrowth {
    TailEstimate tail;               // P(tau(w_n) <= L n)
    std::vector<TranslationSample> samples;
    std::uint64_t formula_checked = 0;
    std::uint64_t formula_mismatches = 0; // must stay 0
    long long min_tau = 0;
};

TranslationGrowth translation_growth(const StepDistribution& mu, std::size_t n, double L,
                                     int trials, std::uint64_t seed, int workers = 0);

// ---------------------------------------------------------------------------
// Geodesic tracking.
// ---------------------------------------------------------------------------

struct TrackingSeries {
    std::vector<long long> distances; // d(w_t x0, gamma) per t
    double final_over_n = 0.0;
    double max_over_log = 0.0; // max over t >= 100 of d_t / ln t
    bool ray_exhausted = false; // the path outran the resolved prefix
};

/// Distances from the walk to the geodesic ray toward its own limit point.
/// Exact wherever the location has not outrun the resolved boundary prefix.
TrackingSeries tracking_series(const SamplePath& path, std::size_t prefix_depth);

struct TrackingExperiment {
    std::size_t n_eval = 0;
    std::vector<double> final_over_n;  // per trial
    std::vector<double> max_over_log;  // per trial
    int exhausted_trials = 0;
};

/// Simulates past the evaluation horizon (buffer_factor times farther) so
/// the resolved prefix is deep enough for exact distances up to n_eval.
TrackingExperiment tracking_experiment(const StepDistribution& mu, std::size_t n_eval, int trials,
                                       std::uint64_t seed, double buffer_factor = 2.5,
                                       int workers = 0);

// ---------------------------------------------------------------------------
// Midpoint Gromov products (the translation-length growth mechanism).
// ---------------------------------------------------------------------------

struct MidpointGp {
    std::size_t n = 0;
    std::vector<long long> gp_mid;   // (w_m x0 . w_n x0)_{x0}, m = ceil(n/2)
    std::vector<long long> gp_cross; // (u_m^{-1} x0 . w_m x0)_{x0}

    double fraction_mid_at_least(double threshold) const;
    double fraction_cross_at_most(double threshold) const;
    double median_cross() const;
};

MidpointGp midpoint_gp_experiment(const StepDistribution& mu, std::size_t n, int trials,
                                  std::uint64_t seed, int workers = 0);

} // namespace hypwalk
