// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line. Every tolerance is pinned here, in code.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypwalk/config.hpp"
#include "hypwalk/estimators.hpp"
#include "hypwalk/horofunction.hpp"
#include "hypwalk/strips.hpp"
#include "hypwalk/verify.hpp"
#include "hypwalk/walk.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

using namespace hypwalk;

namespace {

Word W(const char* text) { return *Word::parse(text, 26); }
GroupElement G(const char* text) { return GroupElement{W(text), false}; }
const ModelSpace f2 = ModelSpace::free_group(2);

/// Collects failures for one criterion and prints the verdict line.
class Criterion {
public:
    Criterion(std::string id, std::string title) : id_(std::move(id)), title_(std::move(title)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool cond, const std::string& what) {
        if (!cond) failures_.push_back(what);
    }

    void finish() {
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
        std::cout << "ACCEPTANCE " << id_ << " " << title_ << ": "
                  << (failures_.empty() ? "PASS" : "FAIL") << "  (" << std::fixed
                  << elapsed.count() << " s)" << std::defaultfloat << "\n";
        for (const std::string& f : failures_) std::cout << "    - " << f << "\n";
        CHECK_MESSAGE(failures_.empty(), "criterion " << id_ << " failed");
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::string id_, title_;
    std::vector<std::string> failures_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) { return format_double(v); }

} // namespace

TEST_CASE("c01 shadow-horofunction equivalence") {
    Criterion crit("c01", "shadow membership == horofunction depth test (exhaustive)");
    std::size_t tested = 0;
    for_each_word(2, 4, [&](const Word& c) {
        for (Rat R : {Rat(1, 2), Rat(3, 2), Rat(5, 2)}) {
            Shadow sh{TreePoint{}, TreePoint{c}, R};
            Rat depth = sh.depth(f2);
            for_each_word(2, 6, [&](const Word& y) {
                bool by_def = shadow_contains(f2, sh, TreePoint{y});
                Horofunction rho = orbit_horofunction(f2, TreePoint{y}, sh.base);
                bool by_horo = horo_eval(rho, sh.center) <= depth;
                if (by_def != by_horo)
                    crit.expect(false, "mismatch at y=" + y.str() + " center=" + c.str() +
                                           " R=" + to_string(R));
                ++tested;
            });
        }
    });
    crit.expect(tested == std::size_t(161) * 3 * 1457, "unexpected census " + std::to_string(tested));
    crit.expect(crit.seconds() < 60.0, "runtime exceeded one minute");
    crit.finish();
}

TEST_CASE("c02 translation formula equals the cyclic-core oracle") {
    Criterion crit("c02", "translation length: formula == cyclic core, |g| <= 8");
    std::size_t tested = 0;
    for_each_word(2, 8, [&](const Word& w) {
        if (w.empty()) return;
        GroupElement g{w, false};
        long long tau = translation_length_exact(g);
        long long sq = static_cast<long long>((w * w).size());
        if (sq - static_cast<long long>(w.size()) != tau)
            crit.expect(false, "|g^2|-|g| != tau for " + w.str());
        auto formula = translation_length_formula(f2, g, Rat(1));
        if (!formula)
            crit.expect(false, "guard with C0=1 fails for " + w.str());
        else if (*formula != Rat(tau))
            crit.expect(false, "formula != oracle for " + w.str());
        ++tested;
    });
    crit.expect(tested == 13120, "unexpected census " + std::to_string(tested));
    crit.expect(crit.seconds() < 120.0, "runtime exceeded two minutes");
    crit.finish();
}

TEST_CASE("c03 positive drift at one half") {
    Criterion crit("c03", "uniform F2 drift: L^ in [0.48, 0.52], 3 stderr of the chain oracle");
    // the chain oracle itself: exact counts reproduce brute-force
    // enumeration wherever enumerating all 4^n sequences is feasible, and the
    // large-n probabilities match the exact counts through n = 30.
    for (std::size_t n = 1; n <= 9; ++n) {
        auto chain = oracles::chain_distance_counts(n);
        auto brute = oracles::brute_force_distance_counts(n);
        for (std::size_t d = 0; d <= n; ++d)
            crit.expect(chain[d] == brute[d], "count mismatch at n=" + std::to_string(n));
    }
    for (std::size_t n : {15u, 30u}) {
        auto counts = oracles::chain_distance_counts(n);
        unsigned __int128 total = 0;
        for (auto c : counts) total += c;
        unsigned __int128 expect = 1;
        for (std::size_t i = 0; i < n; ++i) expect *= 4;
        crit.expect(total == expect, "counts do not sum to 4^n at n=" + std::to_string(n));
        auto probs = oracles::chain_distance_probs(n);
        long double scale = std::pow(4.0L, static_cast<long double>(n));
        for (std::size_t d = 0; d <= n; ++d) {
            long double exact = static_cast<long double>(counts[d]) / scale;
            crit.expect(std::abs(static_cast<double>(exact) - probs[d]) <= 1e-14,
                        "probability route deviates at n=" + std::to_string(n));
        }
    }

    const std::size_t n = 10000;
    DriftEstimate est = estimate_drift(StepDistribution::uniform_f2(), n, 200, 0xD01F7ULL);
    double oracle = oracles::chain_expected_distance(n) / static_cast<double>(n);
    crit.expect(est.l_hat >= 0.48 && est.l_hat <= 0.52,
                "L^ = " + fmt(est.l_hat) + " outside [0.48, 0.52]");
    crit.expect(std::abs(est.l_hat - oracle) <= 3.0 * est.stderr_,
                "L^ = " + fmt(est.l_hat) + " more than 3 stderr from the oracle " + fmt(oracle));
    crit.finish();
}

TEST_CASE("c04 drift tail decays like the exact chain") {
    Criterion crit("c04", "P(d <= n/4) matches the chain oracle and decays superlinearly");
    StepDistribution mu = StepDistribution::uniform_f2();
    const int trials = 500000;
    std::vector<double> log_emp, log_oracle, ns;
    int idx = 0;
    for (std::size_t n : {50u, 100u, 200u}) {
        TailEstimate est = drift_tail(mu, n, 0.25, trials, 0x7A11ULL + idx);
        double oracle = oracles::chain_tail_probability(n, 0.25 * static_cast<double>(n));
        double sigma = std::sqrt(oracle * (1.0 - oracle) / static_cast<double>(trials));
        crit.expect(std::abs(est.p_hat - oracle) <= 3.0 * sigma,
                    "n=" + std::to_string(n) + ": empirical " + fmt(est.p_hat) +
                        " vs oracle " + fmt(oracle) + " beyond 3 sigma");
        ns.push_back(static_cast<double>(n));
        log_emp.push_back(std::log(std::max(est.p_hat, 1e-12)));
        log_oracle.push_back(std::log(oracle));
        ++idx;
    }
    // the log-tail falls, with monotone decreasing differences: the early
    // decay is superlinear and settles toward its linear rate
    auto monotone = [&](const std::vector<double>& a, const char* which) {
        std::vector<double> rate;
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
            crit.expect(a[i + 1] < a[i], std::string(which) + " log-tail fails to decrease");
            rate.push_back((a[i + 1] - a[i]) / (ns[i + 1] - ns[i]));
        }
        for (std::size_t i = 0; i + 1 < rate.size(); ++i) {
            crit.expect(rate[i] < 0.0 && rate[i + 1] < 0.0,
                        std::string(which) + " decay rate is not negative");
            crit.expect(rate[i + 1] > rate[i],
                        std::string(which) + " decay differences fail to decrease");
        }
    };
    monotone(log_oracle, "oracle");
    monotone(log_emp, "empirical");
    crit.finish();
}

TEST_CASE("c05 translation length grows linearly") {
    Criterion crit("c05", "P(tau(w_500) <= 125) <= 0.01 over 1000 trials");
    TranslationGrowth tg =
        translation_growth(StepDistribution::uniform_f2(), 500, 0.25, 1000, 0x7A0ULL);
    crit.expect(tg.tail.p_hat <= 0.01,
                "tail fraction " + fmt(tg.tail.p_hat) + " above 0.01");
    crit.expect(tg.formula_mismatches == 0, "coarse formula disagreed with the exact value");
    crit.finish();
}

TEST_CASE("c06 shadow decay along boundary cylinders") {
    Criterion crit("c06", "cylinder masses (1/4)(1/3)^{r-1} and slope -log 3");
    StepDistribution mu = StepDistribution::uniform_f2();
    const int trials = 100000;
    DecayFit fit = shadow_decay(mu, 1, 8, trials, 120, 0xDECA3ULL);
    std::uint64_t resolved = 0;
    for (const auto& [key, count] : fit.measure.counts)
        if (key != kUnresolvedKey) resolved += count;
    crit.expect(static_cast<double>(resolved) / trials > 0.99, "resolution rate below 99%");
    // the four generator-axis cylinders at every depth, within 3 sigma
    for (int r = 1; r <= 8; ++r) {
        EmpiricalMeasure at_r = aggregate_prefixes(fit.measure, mu, static_cast<std::size_t>(r));
        double expect = oracles::harmonic_cylinder_mass(static_cast<std::size_t>(r));
        double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(resolved));
        for (const char* gen : {"a", "A", "b", "B"}) {
            Word cyl = W(gen).pow(r);
            double mass = static_cast<double>(at_r.counts.count(cyl.str()) ? at_r.counts.at(cyl.str()) : 0) /
                          static_cast<double>(resolved);
            crit.expect(std::abs(mass - expect) <= 3.0 * sigma,
                        std::string(gen) + "^" + std::to_string(r) + " mass " + fmt(mass) +
                            " vs " + fmt(expect) + " beyond 3 sigma");
        }
    }
    crit.expect(std::abs(fit.slope + std::log(3.0)) <= 0.1,
                "fitted slope " + fmt(fit.slope) + " not within 0.1 of -log 3");
    crit.expect(crit.seconds() < 300.0, "runtime exceeded five minutes");
    crit.finish();
}

TEST_CASE("c07 geodesic tracking is sublinear and logarithmic") {
    Criterion crit("c07", "tracking: final d/n <= 0.01 and d/log n bounded, 95% of 100 trials");
    // Committed regression baseline from the pilot runs of this
    // configuration: the 95th percentile of max d/log n was 1.24 (200 trials,
    // independent seed), with headroom above the observed maximum 1.56.
    const double kLogTrackingBound = 1.6;
    TrackingExperiment ex =
        tracking_experiment(StepDistribution::uniform_f2(), 10000, 100, 0x7AC4ULL);
    crit.expect(ex.exhausted_trials == 0, "a trial outran its resolved prefix");
    int final_ok = 0, log_ok = 0;
    for (double v : ex.final_over_n)
        if (v <= 0.01) ++final_ok;
    for (double v : ex.max_over_log)
        if (v <= kLogTrackingBound) ++log_ok;
    crit.expect(final_ok >= 95, "final d/n <= 0.01 in only " + std::to_string(final_ok) + "/100");
    crit.expect(log_ok >= 95,
                "max d/log n <= " + fmt(kLogTrackingBound) + " in only " + std::to_string(log_ok) + "/100");
    crit.finish();
}

TEST_CASE("c08 persistent segments have positive density") {
    Criterion crit("c08", "recipe-chosen (k,R): positive density, deterministic lower bound");
    StepDistribution mu = StepDistribution::uniform_f2();
    PersistenceRecipe recipe = persistence_recipe(mu, 0.1, 0xEC1BEULL);
    PersistenceExperiment ex = persistence_experiment(mu, recipe.k, recipe.R, Rat(0), Rat(1), 300,
                                                      40, 0x9E51ULL);
    crit.expect(ex.density_wilson.lo > 0.0,
                "99% Wilson interval [" + fmt(ex.density_wilson.lo) + ", " +
                    fmt(ex.density_wilson.hi) + "] does not exclude 0");
    crit.expect(ex.all_lower_bounds_ok, "d(x0, w_kn x0) >= (C0/2) Z failed on a path");
    std::cout << "    recipe: k=" << recipe.k << " R=" << to_string(recipe.R)
              << " density=" << fmt(ex.density) << "\n";
    crit.finish();
}

TEST_CASE("c09 stationarity of the empirical boundary measure") {
    Criterion crit("c09", "TV(nu^, mu * nu^) <= 0.01 on depth-3 cylinders at 1e6 samples");
    StationarityResult res =
        stationarity_check(StepDistribution::uniform_f2(), 3, 1000000, 150, 0x57A7ULL);
    crit.expect(res.resolved_fraction > 0.999, "resolution rate below 99.9%");
    crit.expect(res.tv_distance <= 0.01,
                "TV distance " + fmt(res.tv_distance) + " above 0.01");
    crit.finish();
}

TEST_CASE("c10 strips grow linearly and the criterion series vanishes") {
    Criterion crit("c10", "strip log-cardinality at n=2000 and linear growth to r=60");
    StepDistribution mu = StepDistribution::uniform_f2();
    BGParams walk_params(Rat(1), Rat(4), G("aaaa"));
    auto all = strip_series_experiment(mu, walk_params, {2000}, 5000, 100, 0x5717ULL);
    int resolved = 0, small = 0;
    double density_sum = 0.0;
    for (const StripSeries& s : all) {
        if (!s.pair_resolved || s.points.empty() || !s.points[0].resolved) continue;
        ++resolved;
        if (s.points[0].log_card_over_n <= 0.01) ++small;
        density_sum += s.bg_time_density;
    }
    crit.expect(resolved >= 95, "only " + std::to_string(resolved) + "/100 pairs resolved");
    crit.expect(small >= 95,
                "series <= 0.01 in only " + std::to_string(small) + "/" + std::to_string(resolved));
    crit.expect(density_sum > 0.0, "no strip times observed across 100 trials");

    // axis pair, exhaustive linear growth against the displacement census
    BGParams axis_params(Rat(1, 2), Rat(3), G("aaaa"));
    BoundaryPair axis(TreeEnd(Word{}, W("A")), TreeEnd(Word{}, W("a")));
    std::size_t census = displacement_count(2, Word{}, W("a").pow(30), 11);
    const double cover_factor = 3.0;
    for (int r = 1; r <= 60; ++r) {
        std::size_t count = count_bg_in_ball(axis, axis_params, r);
        crit.expect(static_cast<double>(count) / r <= static_cast<double>(census) * cover_factor,
                    "count(" + std::to_string(r) + ")/r exceeds the census bound");
    }
    // spot-check the tube enumeration against brute force at small radius
    for (int r : {4, 7}) {
        auto brute = enumerate_bg_brute(axis, axis_params, r);
        crit.expect(brute.size() == count_bg_in_ball(axis, axis_params, r),
                    "tube enumeration disagrees with brute force at r=" + std::to_string(r));
    }
    crit.finish();
}

TEST_CASE("c11 model-space horofunction examples reproduce exactly") {
    Criterion crit("c11", "line, wedge, ZxZ2 and F2xZ2 horofunction values, zero tolerance");

    // line: rho_{+inf}(x) = -x
    ModelSpace line = ModelSpace::line();
    Horofunction plus = busemann_horofunction(line, LineEnd{true});
    Horofunction minus = busemann_horofunction(line, LineEnd{false});
    for (long long x = -5; x <= 5; ++x) {
        crit.expect(horo_eval(plus, LinePoint{Rat(x)}) == Rat(-x), "rho_inf value off");
        crit.expect(horo_eval(minus, LinePoint{Rat(x)}) == Rat(x), "rho_-inf value off");
    }

    // wedge: h_n -> rho_x0 and rho_{x_n} -> rho_x0 on finite test sets
    ModelSpace wedge = ModelSpace::wedge();
    std::vector<ModelPoint> pts;
    for (std::uint32_t ray = 1; ray <= 5; ++ray)
        for (int s = 1; s <= 4; ++s) pts.push_back(make_ray_point(ray, Rat(s)));
    Horofunction rho0 = orbit_horofunction(wedge, wedge.basepoint());
    std::vector<Horofunction> hn, rn;
    for (std::uint32_t n = 6; n <= 14; ++n) {
        hn.push_back(busemann_horofunction(wedge, WedgeEnd{n}));
        rn.push_back(orbit_horofunction(wedge, make_ray_point(n, Rat(n))));
    }
    crit.expect(pointwise_limit_check(hn, rho0, pts) == Rat(0), "wedge Busemann limit misses rho_x0");
    crit.expect(pointwise_limit_check(rn, rho0, pts) == Rat(0), "wedge orbit limit misses rho_x0");

    // ZxZ2: the two sheets take values +-1 at (0,1)
    ModelSpace z = ModelSpace::zxz2();
    for (long long n = 1; n <= 8; ++n) {
        crit.expect(horo_eval(orbit_horofunction(z, ZxZ2Point{n, 0}), ZxZ2Point{0, 1}) == Rat(1),
                    "sheet-0 value at (0,1) is not +1");
        crit.expect(horo_eval(orbit_horofunction(z, ZxZ2Point{n, 1}), ZxZ2Point{0, 1}) == Rat(-1),
                    "sheet-1 value at (0,1) is not -1");
    }

    // F2xZ2: rho_g(c) = 1 and rho_{gc}(c) = -1, so coset-alternating paths
    // oscillate forever
    ModelSpace fz = ModelSpace::f2xz2();
    ModelPoint c = F2Z2Point{Word{}, 1};
    Word w;
    for (int i = 0; i < 10; ++i) {
        w.push(static_cast<Word::Letter>(i % 2 == 0 ? 1 : 2));
        std::uint8_t bit = static_cast<std::uint8_t>(i % 2);
        Rat value = horo_eval(orbit_horofunction(fz, F2Z2Point{w, bit}), c);
        crit.expect(value == (bit == 0 ? Rat(1) : Rat(-1)), "F2xZ2 oscillation value off");
    }
    crit.finish();
}

TEST_CASE("c12 verify quick under a minute, full under twenty") {
    Criterion crit("c12", "verify quick < 60 s and verify full < 20 min, all green");
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport quick = run_verify(VerifyLevel::Quick);
    double quick_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const CheckResult& c : quick.checks)
        crit.expect(c.pass, "quick check failed: " + c.name + " [" + c.detail + "]");
    crit.expect(quick_s < 60.0, "verify quick took " + fmt(quick_s) + " s");

    auto t1 = std::chrono::steady_clock::now();
    VerifyReport full = run_verify(VerifyLevel::Full);
    double full_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    for (const CheckResult& c : full.checks)
        crit.expect(c.pass, "full check failed: " + c.name + " [" + c.detail + "]");
    crit.expect(full_s < 1200.0, "verify full took " + fmt(full_s) + " s");
    std::cout << "    verify quick " << fmt(quick_s) << " s, full " << fmt(full_s) << " s\n";
    crit.finish();
}
