#include "hypwalk/estimators.hpp"

#include "hypwalk/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hypwalk {

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("empty sample");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("line fit needs at least two points");
    double n = static_cast<double>(xs.size());
    double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
    double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (f.slope * xs[i] + f.intercept);
        ss += r * r;
    }
    f.rmse = std::sqrt(ss / n);
    return f;
}

namespace {

int resolve_workers(int workers) { return workers > 0 ? workers : default_workers(); }

void require_tree_walk(const StepDistribution& mu, const char* what) {
    if (mu.uses_flip())
        throw std::invalid_argument(std::string(what) + " runs on free-group walks");
}

// Smallest period of a reduced word (w = root^(|w|/p)).
Word primitive_root(const Word& w) {
    for (std::size_t p = 1; p <= w.size(); ++p) {
        if (w.size() % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < w.size() && ok; ++i) ok = (w[i] == w[i - p]);
        if (ok) return w.prefix(p);
    }
    return w;
}

} // namespace

bool drift_precondition(const StepDistribution& mu, std::string* reason) {
    if (check_nonelementary(mu).nonelementary) return true;
    // Elementary support still drifts when the semigroup heads one way along
    // a single axis.
    Word axis_root;
    bool have_root = false, have_hyperbolic = false;
    int direction = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const GroupElement& g = mu.atom(i);
        if (g.flip) {
            if (reason) *reason = "support contains the central involution";
            return false;
        }
        if (g.word.empty()) continue;
        auto [core, conj] = cyclic_reduce(g);
        if (core.word.empty() || !conj.word.empty()) {
            if (reason) *reason = "elementary support with a non-axial element";
            return false;
        }
        Word root = primitive_root(core.word);
        Word root_inv = root.inverse();
        int dir;
        Word base;
        if (core.word == root.pow(static_cast<long long>(core.word.size() / root.size()))) {
            base = root;
            dir = +1;
        } else {
            base = root_inv;
            dir = -1;
        }
        // Align against the inverse root when needed.
        if (have_root && !(base == axis_root)) {
            if (base == axis_root.inverse()) {
                dir = -dir;
                base = axis_root;
            } else {
                if (reason) *reason = "elementary support spans distinct axes without disjoint pairs";
                return false;
            }
        }
        if (!have_root) {
            axis_root = base;
            have_root = true;
        }
        if (direction == 0) direction = dir;
        if (direction != dir) {
            if (reason) *reason = "elementary support moves both ways along one axis (no drift)";
            return false;
        }
        have_hyperbolic = true;
    }
    if (!have_hyperbolic) {
        if (reason) *reason = "support contains no hyperbolic element";
        return false;
    }
    return true;
}

DriftEstimate estimate_drift(const StepDistribution& mu, std::size_t n, int trials,
                             std::uint64_t seed, int workers) {
    require_tree_walk(mu, "drift estimation");
    std::string reason;
    if (!drift_precondition(mu, &reason))
        throw std::invalid_argument("drift needs a non-elementary (or one-directional) walk: " + reason);
    auto dists = parallel_trials<double>(
        trials,
        [&](int t) {
            WalkCursor cur(mu, derive_stream(seed, static_cast<std::uint64_t>(t)));
            for (std::size_t k = 0; k < n; ++k) cur.step();
            return static_cast<double>(cur.tree_length());
        },
        resolve_workers(workers));
    double mean = 0.0;
    for (double d : dists) mean += d / static_cast<double>(n);
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double d : dists) {
        double x = d / static_cast<double>(n) - mean;
        var += x * x;
    }
    var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
    return DriftEstimate{mean, std::sqrt(var / static_cast<double>(trials)), n, trials};
}

TailEstimate drift_tail(const StepDistribution& mu, std::size_t n, double L, int trials,
                        std::uint64_t seed, int workers) {
    require_tree_walk(mu, "drift tail estimation");
    if (L <= 0.0) throw std::invalid_argument("L must be positive");
    auto hits = parallel_trials<int>(
        trials,
        [&](int t) {
            WalkCursor cur(mu, derive_stream(seed, static_cast<std::uint64_t>(t)));
            for (std::size_t k = 0; k < n; ++k) cur.step();
            return static_cast<double>(cur.tree_length()) <= L * static_cast<double>(n) ? 1 : 0;
        },
        resolve_workers(workers));
    std::uint64_t h = 0;
    for (int x : hits) h += static_cast<std::uint64_t>(x);
    TailEstimate e;
    e.hits = h;
    e.trials = static_cast<std::uint64_t>(trials);
    e.p_hat = static_cast<double>(h) / static_cast<double>(trials);
    e.wilson = wilson_interval(h, e.trials, 1.959963984540054);
    return e;
}

// ---------------------------------------------------------------------------
// Persistence.
// ---------------------------------------------------------------------------

namespace {

/// All pairwise common-prefix lengths of a family of words, via one
/// lexicographic sort and adjacent comparisons.
class PairwiseLcp {
public:
    explicit PairwiseLcp(const std::vector<const Word*>& words) : words_(words) {
        std::size_t n = words.size();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return lex_less(*words[a], *words[b]);
        });
        pos_.resize(n);
        for (std::size_t r = 0; r < n; ++r) pos_[order_[r]] = r;
        adj_.resize(n > 0 ? n - 1 : 0);
        for (std::size_t r = 0; r + 1 < n; ++r)
            adj_[r] = words[order_[r]]->common_prefix_len(*words[order_[r + 1]]);
        // Dense table of range minima; the families here are small.
        table_.assign(n, std::vector<std::size_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t m = words[order_[i]]->size();
            table_[i][i] = m;
            for (std::size_t j = i + 1; j < n; ++j) {
                m = std::min(m, adj_[j - 1]);
                table_[i][j] = m;
            }
        }
    }

    long long lcp(std::size_t a, std::size_t b) const {
        std::size_t ra = pos_[a], rb = pos_[b];
        if (ra > rb) std::swap(ra, rb);
        return static_cast<long long>(table_[ra][rb]);
    }

    long long dist(std::size_t a, std::size_t b) const {
        return static_cast<long long>(words_[a]->size() + words_[b]->size()) - 2 * lcp(a, b);
    }

private:
    static bool lex_less(const Word& a, const Word& b) {
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            int ra = Word::letter_rank(a[i]), rb = Word::letter_rank(b[i]);
            if (ra != rb) return ra < rb;
        }
        return a.size() < b.size();
    }

    std::vector<const Word*> words_;
    std::vector<std::size_t> order_, pos_;
    std::vector<std::size_t> adj_;
    std::vector<std::vector<std::size_t>> table_;
};

} // namespace

PersistenceStats persistent_segments(const SamplePath& path, std::size_t k, Rat R, Rat C, Rat C0) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    std::size_t n = path.length() / k; // points x_0 .. x_n
    if (n < 1) throw std::invalid_argument("path too short for one k-step segment");
    std::vector<const Word*> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) pts[i] = &path.locations[i * k].word;
    PairwiseLcp lcp(pts);

    // (x_a . x_b)_{x_c} as an exact rational.
    auto gp = [&](std::size_t a, std::size_t b, std::size_t c) {
        return Rat(lcp.dist(c, a) + lcp.dist(c, b) - lcp.dist(a, b)) / 2;
    };

    Rat min_len = 2 * R + 2 * C + C0;
    PersistenceStats st;
    st.k = k;
    st.R = R;
    st.C = C;
    st.C0 = C0;
    st.segments = n;
    for (std::size_t i = 0; i + 1 <= n; ++i) {
        if (Rat(lcp.dist(i, i + 1)) < min_len) continue;
        Rat d = Rat(lcp.dist(i, i + 1));
        bool ok = true;
        // Past trapped in the shadow behind x_i (based at x_{i+1}).
        for (std::size_t m = 0; ok && m <= i; ++m)
            ok = gp(i, m, i + 1) >= d - R;
        // Future trapped in the shadow beyond x_{i+1} (based at x_i).
        for (std::size_t m = i + 1; ok && m <= n; ++m)
            ok = gp(i + 1, m, i) >= d - R;
        if (ok) ++st.z;
    }
    st.density = static_cast<double>(st.z) / static_cast<double>(st.segments);
    Rat endpoint_dist(static_cast<long long>(pts[n]->size()));
    st.lower_bound_ok = endpoint_dist >= (C0 / 2) * Rat(static_cast<long long>(st.z));
    return st;
}

PersistenceExperiment persistence_experiment(const StepDistribution& mu, std::size_t k, Rat R,
                                             Rat C, Rat C0, std::size_t n, int trials,
                                             std::uint64_t seed, int workers) {
    require_tree_walk(mu, "persistence");
    PersistenceExperiment ex;
    ex.k = k;
    ex.R = R;
    ex.C = C;
    ex.C0 = C0;
    ex.trials = parallel_trials<PersistenceStats>(
        trials,
        [&](int t) {
            SamplePath path = sample_path(mu, k * n, derive_stream(seed, static_cast<std::uint64_t>(t)));
            return persistent_segments(path, k, R, C, C0);
        },
        resolve_workers(workers));
    std::uint64_t z = 0, total = 0;
    bool all_ok = true;
    for (const auto& st : ex.trials) {
        z += st.z;
        total += st.segments;
        all_ok = all_ok && st.lower_bound_ok;
    }
    ex.density = static_cast<double>(z) / static_cast<double>(total);
    ex.density_wilson = wilson_interval(z, total, 2.5758293035489004); // 99%
    ex.all_lower_bounds_ok = all_ok;
    return ex;
}

PersistenceRecipe persistence_recipe(const StepDistribution& mu, double eps, std::uint64_t seed,
                                     int workers) {
    require_tree_walk(mu, "persistence recipe");
    const int pilot_trials = 800;
    const std::size_t pilot_horizon = 160;

    // R: smallest distance parameter whose shadows the walk hits with
    // probability <= eps, probed over both directions and a spread of centers.
    Rat R_rec(1);
    for (int r = 1; r <= 12; ++r) {
        double worst = 0.0;
        std::uint64_t probe = 0;
        std::vector<Word> centers;
        for_each_word(mu.rank(), 1, [&](const Word& w) {
            if (w.size() == 1) centers.push_back(w.pow(r + 2));
        });
        {
            Sampler s(derive_stream(seed, 7001 + static_cast<std::uint64_t>(r)));
            for (int extra = 0; extra < 6; ++extra) {
                Word w;
                while (static_cast<int>(w.size()) < r + 2) {
                    auto l = static_cast<Word::Letter>(1 + static_cast<int>(s.raw() % static_cast<std::uint64_t>(mu.rank())));
                    if (s.raw() & 1) l = static_cast<Word::Letter>(-l);
                    w.push(l);
                }
                centers.push_back(w);
            }
        }
        for (const Word& c : centers) {
            Shadow sh{TreePoint{}, TreePoint{c}, Rat(static_cast<long long>(c.size()) - r)};
            for (WalkDirection dir : {WalkDirection::Forward, WalkDirection::Backward}) {
                TailEstimate est = hitting_prob(mu, sh, pilot_horizon, pilot_trials, dir,
                                                derive_stream(seed, 100 + probe), workers);
                worst = std::max(worst, est.p_hat);
                ++probe;
            }
        }
        if (worst <= eps) {
            R_rec = Rat(r);
            break;
        }
        R_rec = Rat(r + 1);
    }

    // k: smallest with P(d(x0, w_k x0) <= 2R + C0) < eps (C = 0 on trees).
    Rat threshold = 2 * R_rec + Rat(1);
    std::size_t k_rec = 2;
    for (std::size_t k = 2; k <= 400; k += 2) {
        TailEstimate est = drift_tail(mu, k, to_double(threshold) / static_cast<double>(k),
                                      pilot_trials, derive_stream(seed, 9000 + k), workers);
        if (est.p_hat < eps) {
            k_rec = k;
            break;
        }
        k_rec = k + 2;
    }
    return PersistenceRecipe{R_rec, k_rec};
}

// ---------------------------------------------------------------------------
// Hitting and decay.
// ---------------------------------------------------------------------------

TailEstimate hitting_prob(const StepDistribution& mu, const Shadow& shadow, std::size_t horizon,
                          int trials, WalkDirection direction, std::uint64_t seed, int workers) {
    require_tree_walk(mu, "hitting probability");
    const ModelSpace space = ModelSpace::free_group(std::max({2, mu.rank(),
        std::get<TreePoint>(shadow.base).w.max_index(), std::get<TreePoint>(shadow.center).w.max_index()}));
    StepDistribution stepper = direction == WalkDirection::Forward ? mu : mu.reflected();
    // Work in coordinates rooted at the shadow base: membership of y is
    // lcp(base^{-1} center, base^{-1} y) >= dparam, checked incrementally.
    Word base_inv = std::get<TreePoint>(shadow.base).w.inverse();
    Word center = base_inv * std::get<TreePoint>(shadow.center).w;
    Rat dparam = shadow.distance_parameter(space);
    auto hits = parallel_trials<int>(
        trials,
        [&](int t) {
            WalkCursor cur(stepper, derive_stream(seed, static_cast<std::uint64_t>(t)));
            for (std::size_t n = 0; n <= horizon; ++n) {
                if (n > 0) cur.step();
                Word y = base_inv * cur.word();
                if (Rat(static_cast<long long>(center.common_prefix_len(y))) >= dparam) return 1;
            }
            return 0;
        },
        resolve_workers(workers));
    std::uint64_t h = 0;
    for (int x : hits) h += static_cast<std::uint64_t>(x);
    TailEstimate e;
    e.hits = h;
    e.trials = static_cast<std::uint64_t>(trials);
    e.p_hat = static_cast<double>(h) / static_cast<double>(trials);
    e.wilson = wilson_interval(h, e.trials, 1.959963984540054);
    return e;
}

DecayFit shadow_decay(const StepDistribution& mu, int r_lo, int r_hi, int trials,
                      std::size_t walk_len, std::uint64_t seed, int workers) {
    require_tree_walk(mu, "shadow decay");
    if (r_lo < 1 || r_hi < r_lo) throw std::invalid_argument("bad prefix range");
    DecayFit fit;
    fit.measure = empirical_pushforward(mu, walk_len, trials, PushforwardKey::BoundaryPrefix,
                                        static_cast<std::size_t>(r_hi), seed, false, workers);
    std::uint64_t resolved = 0;
    for (const auto& [key, count] : fit.measure.counts)
        if (key != kUnresolvedKey) resolved += count;
    if (resolved == 0) throw std::runtime_error("no walk resolved its boundary prefix");

    std::vector<double> xs, ys;
    for (int r = r_lo; r <= r_hi; ++r) {
        std::map<std::string, std::uint64_t> agg;
        for (const auto& [key, count] : fit.measure.counts) {
            if (key == kUnresolvedKey) continue;
            agg[key.substr(0, static_cast<std::size_t>(r))] += count;
        }
        // Mean mass of the nonzero cylinders at this depth; empties are
        // counted against the exhaustive census 2k (2k-1)^{r-1}.
        std::size_t cylinders = static_cast<std::size_t>(2 * mu.rank());
        for (int i = 1; i < r; ++i) cylinders *= static_cast<std::size_t>(2 * mu.rank() - 1);
        fit.dropped_zero_cylinders += cylinders - agg.size();
        double mean = 0.0;
        for (const auto& [key, count] : agg)
            mean += static_cast<double>(count) / static_cast<double>(resolved);
        mean /= static_cast<double>(agg.size());
        fit.pairs.emplace_back(r, mean);
        xs.push_back(static_cast<double>(r));
        ys.push_back(std::log(mean));
    }
    LineFit lf = fit_line(xs, ys);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.residual = lf.rmse;
    return fit;
}

// ---------------------------------------------------------------------------
// Translation length.
// ---------------------------------------------------------------------------

long long translation_length_exact(const GroupElement& g) {
    auto [core, conj] = cyclic_reduce(g);
    return static_cast<long long>(core.word.size());
}

std::optional<Rat> translation_length_formula(const ModelSpace& space, const GroupElement& g,
                                              Rat C0) {
    ModelPoint x0 = space.basepoint();
    ModelPoint gx = act(space, g, x0);
    ModelPoint ginvx = act(space, inv(g), x0);
    Rat d = dist(space, x0, gx);
    Rat gp = gromov_product(space, x0, ginvx, gx);
    if (d < 2 * gp + C0) return std::nullopt;
    return d - 2 * gp;
}

TranslationGrowth translation_growth(const StepDistribution& mu, std::size_t n, double L,
                                     int trials, std::uint64_t seed, int workers) {
    require_tree_walk(mu, "translation growth");
    auto rows = parallel_trials<TranslationSample>(
        trials,
        [&](int t) {
            WalkCursor cur(mu, derive_stream(seed, static_cast<std::uint64_t>(t)));
            for (std::size_t k = 0; k < n; ++k) cur.step();
            GroupElement w{cur.word(), false};
            TranslationSample sample;
            sample.tau_exact = translation_length_exact(w);
            // Companion: the coarse formula, whenever its guard holds
            // (C0 = 1 on the tree).
            long long len = static_cast<long long>(w.word.size());
            long long sq = static_cast<long long>((w.word * w.word).size());
            Rat gp = Rat(2 * len - sq) / 2; // (g x0 . g^{-1} x0)_{x0}
            if (Rat(len) >= 2 * gp + 1) {
                sample.guard_held = true;
                sample.tau_formula = Rat(len) - 2 * gp;
            }
            return sample;
        },
        resolve_workers(workers));
    TranslationGrowth out;
    std::uint64_t hits = 0;
    long long min_tau = std::numeric_limits<long long>::max();
    for (const TranslationSample& sample : rows) {
        if (static_cast<double>(sample.tau_exact) <= L * static_cast<double>(n)) ++hits;
        if (sample.guard_held) {
            ++out.formula_checked;
            if (!sample.tau_formula || *sample.tau_formula != Rat(sample.tau_exact))
                ++out.formula_mismatches;
        }
        min_tau = std::min(min_tau, sample.tau_exact);
    }
    out.min_tau = min_tau;
    out.samples = std::move(rows);
    out.tail.hits = hits;
    out.tail.trials = static_cast<std::uint64_t>(trials);
    out.tail.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    out.tail.wilson = wilson_interval(hits, out.tail.trials, 1.959963984540054);
    return out;
}

// ---------------------------------------------------------------------------
// Tracking.
// ---------------------------------------------------------------------------

namespace {

TrackingSeries track_against_prefix(const std::vector<const Word*>& locations, const Word& ray) {
    TrackingSeries ts;
    ts.distances.reserve(locations.size());
    for (const Word* w : locations) {
        long long ell = static_cast<long long>(w->common_prefix_len(ray));
        long long d = static_cast<long long>(w->size()) - ell;
        if (ell == static_cast<long long>(ray.size()) && d > 0) ts.ray_exhausted = true;
        ts.distances.push_back(d);
    }
    std::size_t n = ts.distances.size() - 1;
    ts.final_over_n = n == 0 ? 0.0 : static_cast<double>(ts.distances[n]) / static_cast<double>(n);
    for (std::size_t t = 100; t <= n; ++t)
        ts.max_over_log = std::max(
            ts.max_over_log, static_cast<double>(ts.distances[t]) / std::log(static_cast<double>(t)));
    return ts;
}

} // namespace

TrackingSeries tracking_series(const SamplePath& path, std::size_t prefix_depth) {
    if (!limit_point(path, prefix_depth))
        throw std::invalid_argument("limit point unresolved at the requested depth");
    // The ray toward the limit point, extended along the path's own final
    // location. Entries where the location outruns the stable prefix may
    // overestimate by at most the final excursion and are flagged.
    const Word& ray = path.locations.back().word;
    std::vector<const Word*> locs;
    locs.reserve(path.locations.size());
    for (const GroupElement& g : path.locations) locs.push_back(&g.word);
    return track_against_prefix(locs, ray);
}

TrackingExperiment tracking_experiment(const StepDistribution& mu, std::size_t n_eval, int trials,
                                       std::uint64_t seed, double buffer_factor, int workers) {
    require_tree_walk(mu, "tracking");
    std::size_t n_sim = static_cast<std::size_t>(std::ceil(static_cast<double>(n_eval) * buffer_factor));
    int margin = default_limit_margin(mu);
    struct One {
        double final_over_n = 0.0;
        double max_over_log = 0.0;
        int exhausted = 0;
    };
    auto rows = parallel_trials<One>(
        trials,
        [&](int t) {
            std::uint64_t s = derive_stream(seed, static_cast<std::uint64_t>(t));
            // Pass 1: find the stable boundary prefix of the full simulation.
            WalkCursor scout(mu, s);
            for (std::size_t k = 0; k < n_sim; ++k) scout.step();
            long long depth = scout.tree_length() - margin - 1;
            One one;
            if (depth <= 0) {
                one.exhausted = 1;
                return one;
            }
            Word ray = scout.word().prefix(static_cast<std::size_t>(depth));
            // Pass 2: replay, tracking |w_t| and lcp(w_t, ray) incrementally.
            Sampler sampler(s);
            std::vector<Word::Letter> w;
            std::size_t ell = 0;
            double max_over_log = 0.0;
            for (std::size_t t2 = 1; t2 <= n_eval; ++t2) {
                const GroupElement& g = mu.atom(sampler.pick(mu.cdf()));
                for (Word::Letter l : g.word.letters()) {
                    if (!w.empty() && w.back() == static_cast<Word::Letter>(-l)) {
                        w.pop_back();
                        ell = std::min(ell, w.size());
                    } else {
                        if (ell == w.size() && ell < ray.size() && ray[ell] == l) ++ell;
                        w.push_back(l);
                    }
                }
                long long d = static_cast<long long>(w.size()) - static_cast<long long>(ell);
                if (ell == ray.size() && d > 0) one.exhausted = 1;
                if (t2 >= 100)
                    max_over_log = std::max(max_over_log,
                                            static_cast<double>(d) / std::log(static_cast<double>(t2)));
                if (t2 == n_eval)
                    one.final_over_n = static_cast<double>(d) / static_cast<double>(n_eval);
            }
            one.max_over_log = max_over_log;
            return one;
        },
        resolve_workers(workers));
    TrackingExperiment ex;
    ex.n_eval = n_eval;
    for (const One& one : rows) {
        ex.final_over_n.push_back(one.final_over_n);
        ex.max_over_log.push_back(one.max_over_log);
        ex.exhausted_trials += one.exhausted;
    }
    return ex;
}

// ---------------------------------------------------------------------------
// Midpoint Gromov products.
// ---------------------------------------------------------------------------

double MidpointGp::fraction_mid_at_least(double threshold) const {
    std::size_t c = 0;
    for (long long v : gp_mid)
        if (static_cast<double>(v) >= threshold) ++c;
    return static_cast<double>(c) / static_cast<double>(gp_mid.size());
}

double MidpointGp::fraction_cross_at_most(double threshold) const {
    std::size_t c = 0;
    for (long long v : gp_cross)
        if (static_cast<double>(v) <= threshold) ++c;
    return static_cast<double>(c) / static_cast<double>(gp_cross.size());
}

double MidpointGp::median_cross() const {
    std::vector<long long> v = gp_cross;
    std::sort(v.begin(), v.end());
    return static_cast<double>(v[v.size() / 2]);
}

MidpointGp midpoint_gp_experiment(const StepDistribution& mu, std::size_t n, int trials,
                                  std::uint64_t seed, int workers) {
    require_tree_walk(mu, "midpoint experiment");
    std::size_t m = (n + 1) / 2;
    struct One {
        long long mid = 0, cross = 0;
    };
    auto rows = parallel_trials<One>(
        trials,
        [&](int t) {
            WalkCursor cur(mu, derive_stream(seed, static_cast<std::uint64_t>(t)));
            for (std::size_t k = 0; k < m; ++k) cur.step();
            Word wm = cur.word();
            for (std::size_t k = m; k < n; ++k) cur.step();
            Word wn = cur.word();
            Word um = wm.inverse() * wn;
            One one;
            // 2 (w_m . w_n)_e = |w_m| + |w_n| - |u_m|; products here are integers
            // only up to the half-integer grid, so keep doubled values exact.
            long long mid2 = static_cast<long long>(wm.size() + wn.size()) -
                             static_cast<long long>(um.size());
            one.mid = mid2 / 2;
            one.cross = static_cast<long long>(um.inverse().common_prefix_len(wm));
            return one;
        },
        resolve_workers(workers));
    MidpointGp out;
    out.n = n;
    for (const One& one : rows) {
        out.gp_mid.push_back(one.mid);
        out.gp_cross.push_back(one.cross);
    }
    return out;
}

} // namespace hypwalk
