#pragma once

#include "hypwalk/rng.hpp"
#include "hypwalk/space.hpp"
#include "hypwalk/word.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypwalk {

/// A finitely supported step distribution on the acting group.
class StepDistribution {
public:
    static StepDistribution from_atoms(std::vector<std::pair<GroupElement, double>> atoms);

    /// Uniform on {a, a^{-1}, b, b^{-1}}.
    static StepDistribution uniform_f2();
    static StepDistribution point_mass(GroupElement g);
    static StepDistribution uniform(std::vector<GroupElement> atoms);

    std::size_t size() const { return atoms_.size(); }
    const GroupElement& atom(std::size_t i) const { return atoms_[i]; }
    double prob(std::size_t i) const { return probs_[i]; }
    const std::vector<double>& cdf() const { return cdf_; }

    int rank() const { return rank_; }                 // largest generator index
    bool uses_flip() const { return uses_flip_; }
    std::size_t max_step_length() const { return max_len_; }

    /// The reflected distribution: mu^(g) = mu(g^{-1}).
    StepDistribution reflected() const;

private:
    std::vector<GroupElement> atoms_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
    int rank_ = 0;
    bool uses_flip_ = false;
    std::size_t max_len_ = 0;
};

/// A seeded sample path w_0 = e, w_k = w_{k-1} g_k, with the increments and
/// reduced-word locations cached. Regenerating from (mu, n, seed) reproduces
/// the path bit-exactly.
struct SamplePath {
    std::uint64_t seed = 0;
    std::vector<GroupElement> increments; // g_1 .. g_n
    std::vector<GroupElement> locations;  // w_0 .. w_n

    std::size_t length() const { return increments.size(); }
    const GroupElement& location(std::size_t k) const { return locations[k]; }
};

SamplePath sample_path(const StepDistribution& mu, std::size_t n, std::uint64_t seed);

/// Forward mu-walk paired with an independent backward reflected walk; the
/// two halves of a bi-infinite path.
struct BiSamplePath {
    SamplePath forward;
    SamplePath backward;
};

BiSamplePath sample_bi_path(const StepDistribution& mu, std::size_t n_forward,
                            std::size_t n_backward, std::uint64_t seed);

/// The shift T^k: increments drop their first k entries and locations become
/// w_k^{-1} w_{n+k}. Throws when k exceeds the available length.
SamplePath shift(const SamplePath& path, std::size_t k);

/// Streaming walk: one location word updated in place. The bulk estimators
/// use this instead of materializing every location.
class WalkCursor {
public:
    WalkCursor(const StepDistribution& mu, std::uint64_t seed)
        : mu_(&mu), sampler_(seed) {}

    void step() {
        std::size_t i = sampler_.pick(mu_->cdf());
        const GroupElement& g = mu_->atom(i);
        w_.mul_inplace(g.word);
        flip_ = flip_ != g.flip;
        ++t_;
    }

    const Word& word() const { return w_; }
    bool flip() const { return flip_; }
    std::size_t time() const { return t_; }
    long long tree_length() const { return static_cast<long long>(w_.size()); }

private:
    const StepDistribution* mu_;
    Sampler sampler_;
    Word w_;
    bool flip_ = false;
    std::size_t t_ = 0;
};

struct NonElementaryResult {
    bool nonelementary = false;
    std::optional<std::pair<GroupElement, GroupElement>> witnesses;
};

/// Searches products of support atoms of length <= search_len for two
/// hyperbolic elements whose axis endpoint pairs are disjoint. `false` means
/// none were found within the budget.
NonElementaryResult check_nonelementary(const StepDistribution& mu, int search_len = 3);

/// Stability margin for limit-point extraction: once the walk has left the
/// ball of radius d + margin for good, a single step can no longer alter the
/// depth-d prefix (it would need to jump 2(margin+1) > max step length).
int default_limit_margin(const StepDistribution& mu);

/// The length-d prefix of the walk's boundary limit, or nullopt when the
/// prefix has not stabilized within this path.
std::optional<Word> limit_point(const SamplePath& path, std::size_t depth,
                                std::optional<int> margin = std::nullopt);

struct EmpiricalMeasure {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;

    void add(const std::string& key) {
        ++counts[key];
        ++total;
    }
    double mass(const std::string& key) const {
        auto it = counts.find(key);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    }
};

/// Key reserved for walks whose boundary prefix did not stabilize.
inline constexpr const char* kUnresolvedKey = "(unresolved)";

enum class PushforwardKey { Location, BoundaryPrefix };

/// Empirical pushforward over independent seeded trials: counts of w_n
/// (Location) or of stable depth-d boundary prefixes (BoundaryPrefix).
/// `stratified_first_step` is a test-mode hook that cycles the first
/// increment through the support, making single-step counts exact.
EmpiricalMeasure empirical_pushforward(const StepDistribution& mu, std::size_t n, int trials,
                                       PushforwardKey key, std::size_t depth, std::uint64_t seed,
                                       bool stratified_first_step = false,
                                       int workers = 0);

/// Re-keys a boundary-prefix measure to a shallower depth by truncation.
EmpiricalMeasure aggregate_prefixes(const EmpiricalMeasure& m, const StepDistribution& mu,
                                    std::size_t depth);

struct StationarityResult {
    double tv_distance = 0.0;       // TV between nu^ and mu * nu^ on depth-d cylinders
    double resolved_fraction = 0.0; // walks whose depth-(d+max step) prefix stabilized
    std::uint64_t samples = 0;
};

/// Checks the stationarity identity nu(U) = sum_g mu(g) nu(g^{-1} U) on
/// depth-d cylinders. g^{-1}-preimages of cylinders are computed exactly as
/// finite unions of deeper cylinders.
StationarityResult stationarity_check(const StepDistribution& mu, std::size_t depth, int trials,
                                      std::size_t walk_len, std::uint64_t seed, int workers = 0);

} // namespace hypwalk
