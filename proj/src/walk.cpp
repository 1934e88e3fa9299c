#include "hypwalk/walk.hpp"

#include "hypwalk/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hypwalk {

StepDistribution StepDistribution::from_atoms(std::vector<std::pair<GroupElement, double>> atoms) {
    if (atoms.empty()) throw std::invalid_argument("step distribution needs a nonempty support");
    StepDistribution d;
    std::set<std::string> seen;
    double sum = 0.0;
    for (auto& [g, p] : atoms) {
        if (p <= 0.0) throw std::invalid_argument("step probabilities must be positive");
        if (!seen.insert(to_string(g)).second)
            throw std::invalid_argument("duplicate element in step distribution support");
        sum += p;
        d.rank_ = std::max(d.rank_, g.word.max_index());
        d.uses_flip_ = d.uses_flip_ || g.flip;
        d.max_len_ = std::max(d.max_len_, g.word.size() + (g.flip ? 1 : 0));
        d.atoms_.push_back(std::move(g));
        d.probs_.push_back(p);
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("step probabilities must sum to 1 (got " + std::to_string(sum) + ")");
    d.rank_ = std::max(d.rank_, 1);
    double acc = 0.0;
    for (double p : d.probs_) {
        acc += p;
        d.cdf_.push_back(acc);
    }
    d.cdf_.back() = 1.0; // guard against rounding in the last bucket
    return d;
}

StepDistribution StepDistribution::uniform_f2() {
    std::vector<GroupElement> gens;
    for (int idx = 1; idx <= 2; ++idx)
        for (int sign : {+1, -1})
            gens.push_back(GroupElement{Word::from_letter(static_cast<Word::Letter>(sign * idx)), false});
    return uniform(std::move(gens));
}

StepDistribution StepDistribution::point_mass(GroupElement g) {
    std::vector<std::pair<GroupElement, double>> atoms;
    atoms.emplace_back(std::move(g), 1.0);
    return from_atoms(std::move(atoms));
}

StepDistribution StepDistribution::uniform(std::vector<GroupElement> atoms) {
    std::vector<std::pair<GroupElement, double>> weighted;
    double p = 1.0 / static_cast<double>(atoms.size());
    for (auto& g : atoms) weighted.emplace_back(std::move(g), p);
    return from_atoms(std::move(weighted));
}

StepDistribution StepDistribution::reflected() const {
    std::vector<std::pair<GroupElement, double>> atoms;
    for (std::size_t i = 0; i < atoms_.size(); ++i) atoms.emplace_back(inv(atoms_[i]), probs_[i]);
    return from_atoms(std::move(atoms));
}

SamplePath sample_path(const StepDistribution& mu, std::size_t n, std::uint64_t seed) {
    SamplePath path;
    path.seed = seed;
    path.increments.reserve(n);
    path.locations.reserve(n + 1);
    path.locations.push_back(GroupElement{});
    Sampler sampler(seed);
    GroupElement w;
    for (std::size_t k = 0; k < n; ++k) {
        const GroupElement& g = mu.atom(sampler.pick(mu.cdf()));
        path.increments.push_back(g);
        w = mul(w, g);
        path.locations.push_back(w);
    }
    return path;
}

BiSamplePath sample_bi_path(const StepDistribution& mu, std::size_t n_forward,
                            std::size_t n_backward, std::uint64_t seed) {
    BiSamplePath bp;
    bp.forward = sample_path(mu, n_forward, derive_stream(seed, 0));
    bp.backward = sample_path(mu.reflected(), n_backward, derive_stream(seed, 1));
    return bp;
}

SamplePath shift(const SamplePath& path, std::size_t k) {
    if (k > path.length()) throw std::invalid_argument("shift exceeds the available path length");
    SamplePath out;
    out.seed = path.seed;
    out.increments.assign(path.increments.begin() + static_cast<std::ptrdiff_t>(k),
                          path.increments.end());
    GroupElement wk_inv = inv(path.locations[k]);
    out.locations.reserve(path.length() - k + 1);
    for (std::size_t j = k; j <= path.length(); ++j)
        out.locations.push_back(mul(wk_inv, path.locations[j]));
    return out;
}

NonElementaryResult check_nonelementary(const StepDistribution& mu, int search_len) {
    // Breadth-first over semigroup products of the support.
    std::vector<GroupElement> frontier{GroupElement{}};
    std::set<std::string> seen{""};
    std::vector<GroupElement> hyperbolic;
    constexpr std::size_t kBudget = 20000;

    auto disjoint_axes = [](const GroupElement& g, const GroupElement& h) {
        auto ag = axis_ends(g);
        auto ah = axis_ends(h);
        if (!ag || !ah) return false;
        const TreeEnd* gs[2] = {&ag->forward, &ag->backward};
        const TreeEnd* hs[2] = {&ah->forward, &ah->backward};
        for (const TreeEnd* a : gs)
            for (const TreeEnd* b : hs)
                if (same_end(*a, *b)) return false;
        return true;
    };

    for (int len = 1; len <= search_len; ++len) {
        std::vector<GroupElement> next;
        for (const GroupElement& w : frontier) {
            for (std::size_t i = 0; i < mu.size(); ++i) {
                GroupElement prod = mul(w, mu.atom(i));
                if (!seen.insert(to_string(prod)).second) continue;
                if (seen.size() > kBudget) return {};
                auto [core, conj] = cyclic_reduce(prod);
                if (!core.word.empty()) {
                    for (const GroupElement& h : hyperbolic) {
                        if (disjoint_axes(h, prod))
                            return {true, std::make_pair(h, prod)};
                    }
                    hyperbolic.push_back(prod);
                }
                next.push_back(std::move(prod));
            }
        }
        frontier = std::move(next);
    }
    return {};
}

int default_limit_margin(const StepDistribution& mu) {
    int m = static_cast<int>((mu.max_step_length() + 1) / 2);
    return std::max(1, m);
}

std::optional<Word> limit_point(const SamplePath& path, std::size_t depth,
                                std::optional<int> margin) {
    int mg = margin.value_or(1);
    if (!margin) {
        std::size_t max_step = 0;
        for (const GroupElement& g : path.increments)
            max_step = std::max(max_step, g.word.size() + (g.flip ? 1 : 0));
        mg = std::max(1, static_cast<int>((max_step + 1) / 2));
    }
    std::size_t threshold = depth + static_cast<std::size_t>(mg);
    // Last time at or below the threshold; the prefix must be shared by
    // everything after it.
    std::size_t last = path.length();
    for (std::size_t k = path.length() + 1; k-- > 0;) {
        if (path.locations[k].word.size() <= threshold) {
            last = k;
            break;
        }
    }
    if (last >= path.length()) return std::nullopt;
    Word prefix = path.locations[last + 1].word.prefix(depth);
    if (prefix.size() < depth) return std::nullopt;
    for (std::size_t k = last + 1; k <= path.length(); ++k) {
        const Word& w = path.locations[k].word;
        if (w.size() < depth || w.common_prefix_len(prefix) < depth) return std::nullopt;
    }
    return prefix;
}

namespace {

int resolve_workers(int workers) { return workers > 0 ? workers : default_workers(); }

} // namespace

EmpiricalMeasure empirical_pushforward(const StepDistribution& mu, std::size_t n, int trials,
                                       PushforwardKey key, std::size_t depth, std::uint64_t seed,
                                       bool stratified_first_step, int workers) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    int margin = default_limit_margin(mu);
    auto run_one = [&](int trial) -> std::string {
        WalkCursor cur(mu, derive_stream(seed, static_cast<std::uint64_t>(trial)));
        Word w;
        bool flip = false;
        std::size_t start = 0;
        if (stratified_first_step && n >= 1) {
            const GroupElement& g = mu.atom(static_cast<std::size_t>(trial) % mu.size());
            w = g.word;
            flip = g.flip;
            start = 1;
        }
        for (std::size_t k = start; k < n; ++k) cur.step();
        if (start == 1) {
            Word tail = cur.word();
            w.mul_inplace(tail);
            flip = flip != cur.flip();
        } else {
            w = cur.word();
            flip = cur.flip();
        }
        if (key == PushforwardKey::Location)
            return to_string(GroupElement{w, flip});
        // Boundary prefix: stable once the walk has left B(e, depth+margin)
        // for good, which the final length certifies.
        if (w.size() > depth + static_cast<std::size_t>(margin)) return w.prefix(depth).str();
        return kUnresolvedKey;
    };
    auto keys = parallel_trials<std::string>(trials, run_one, resolve_workers(workers));
    EmpiricalMeasure m;
    for (const std::string& k : keys) m.add(k);
    return m;
}

EmpiricalMeasure aggregate_prefixes(const EmpiricalMeasure& m, const StepDistribution& mu,
                                    std::size_t depth) {
    EmpiricalMeasure out;
    out.total = m.total;
    for (const auto& [key, count] : m.counts) {
        if (key == kUnresolvedKey) {
            out.counts[key] += count;
            continue;
        }
        auto w = Word::parse(key, mu.rank());
        if (!w || w->size() < depth) throw std::invalid_argument("prefix shorter than target depth");
        out.counts[w->prefix(depth).str()] += count;
    }
    return out;
}

StationarityResult stationarity_check(const StepDistribution& mu, std::size_t depth, int trials,
                                      std::size_t walk_len, std::uint64_t seed, int workers) {
    if (mu.uses_flip())
        throw std::invalid_argument("stationarity check runs on free-group walks");
    std::size_t deep = depth + mu.max_step_length();
    EmpiricalMeasure deep_measure =
        empirical_pushforward(mu, walk_len, trials, PushforwardKey::BoundaryPrefix, deep, seed,
                              false, workers);

    std::uint64_t resolved = 0;
    for (const auto& [key, count] : deep_measure.counts)
        if (key != kUnresolvedKey) resolved += count;
    StationarityResult res;
    res.samples = deep_measure.total;
    res.resolved_fraction = static_cast<double>(resolved) / static_cast<double>(deep_measure.total);
    if (resolved == 0) throw std::runtime_error("no walk resolved its boundary prefix");

    // nu^ on depth-d cylinders, and the convolution side: for each deep
    // cylinder C_w and atom g, g C_w lies inside the depth-d cylinder of
    // reduce(g w) (the deep margin swallows all cancellation), so
    // nu(g^{-1} C_p) aggregates exactly over deep cylinders.
    std::map<std::string, double> nu, conv;
    for (const auto& [key, count] : deep_measure.counts) {
        if (key == kUnresolvedKey) continue;
        double mass = static_cast<double>(count) / static_cast<double>(resolved);
        Word w = *Word::parse(key, mu.rank());
        nu[w.prefix(depth).str()] += mass;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            Word gw = mu.atom(i).word * w;
            if (gw.size() < depth) throw std::logic_error("deep prefix shorter than expected");
            conv[gw.prefix(depth).str()] += mu.prob(i) * mass;
        }
    }
    double tv = 0.0;
    std::set<std::string> keys;
    for (const auto& [k, v] : nu) keys.insert(k);
    for (const auto& [k, v] : conv) keys.insert(k);
    for (const std::string& k : keys) {
        double a = nu.count(k) ? nu.at(k) : 0.0;
        double b = conv.count(k) ? conv.at(k) : 0.0;
        tv += std::abs(a - b);
    }
    res.tv_distance = tv / 2.0;
    return res;
}

} // namespace hypwalk
