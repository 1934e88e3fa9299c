#include "hypwalk/estimators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hypwalk;

namespace {
Word W(const char* text) { return *Word::parse(text, 26); }
GroupElement G(const char* text) { return GroupElement{W(text), false}; }
const ModelSpace f2 = ModelSpace::free_group(2);
} // namespace

TEST_CASE("drift of a point mass is exactly one") {
    DriftEstimate est = estimate_drift(StepDistribution::point_mass(G("a")), 200, 5, 42);
    CHECK(est.l_hat == 1.0);
    CHECK(est.stderr_ == 0.0);
}

TEST_CASE("drift precondition separates one-directional from balanced supports") {
    CHECK(drift_precondition(StepDistribution::uniform_f2()));
    CHECK(drift_precondition(StepDistribution::point_mass(G("a"))));
    CHECK(drift_precondition(StepDistribution::point_mass(G("ab"))));
    std::string reason;
    CHECK(!drift_precondition(StepDistribution::uniform({G("a"), G("A")}), &reason));
    CHECK(!reason.empty());
    CHECK_THROWS_AS(estimate_drift(StepDistribution::uniform({G("a"), G("A")}), 100, 5, 1),
                    std::invalid_argument);
}

TEST_CASE("uniform F2 drift approaches one half") {
    DriftEstimate est = estimate_drift(StepDistribution::uniform_f2(), 2000, 60, 2718);
    double oracle = oracles::chain_expected_distance(2000) / 2000.0;
    CHECK(std::abs(est.l_hat - oracle) <= 3.5 * est.stderr_);
    CHECK(est.l_hat > 0.46);
    CHECK(est.l_hat < 0.54);
}

TEST_CASE("drift tails against the exact chain") {
    TailEstimate zero = drift_tail(StepDistribution::point_mass(G("a")), 50, 0.5, 20, 3);
    CHECK(zero.p_hat == 0.0);
    TailEstimate one = drift_tail(StepDistribution::point_mass(G("a")), 50, 1.0, 20, 3);
    CHECK(one.p_hat == 1.0);

    StepDistribution mu = StepDistribution::uniform_f2();
    std::size_t n = 60;
    TailEstimate est = drift_tail(mu, n, 0.25, 40000, 777);
    double oracle = oracles::chain_tail_probability(n, 0.25 * static_cast<double>(n));
    double sigma = std::sqrt(oracle * (1 - oracle) / 40000.0);
    CHECK(std::abs(est.p_hat - oracle) <= 3.5 * sigma);
}

TEST_CASE("persistence counts monotone rays completely") {
    SamplePath ray = sample_path(StepDistribution::point_mass(G("a")), 30, 5);
    PersistenceStats st = persistent_segments(ray, 1, Rat(0), Rat(0), Rat(1));
    CHECK(st.segments == 30);
    CHECK(st.z == 30);
    CHECK(st.lower_bound_ok);
}

TEST_CASE("a return to the basepoint breaks straddling segments") {
    // locations e, a, aa, a, e over two 2-step segments: the first segment
    // [e, aa] fails the future-shadow condition because the path returns to e.
    SamplePath path;
    path.increments = {G("a"), G("a"), G("A"), G("A")};
    path.locations = {G(""), G("a"), G("aa"), G("a"), G("")};
    PersistenceStats st = persistent_segments(path, 2, Rat(1, 2), Rat(0), Rat(1));
    CHECK(st.segments == 2);
    CHECK(st.z == 0);
    CHECK(st.lower_bound_ok); // 0 persistent segments bound nothing
}

TEST_CASE("persistence density is positive with shrinking error") {
    StepDistribution mu = StepDistribution::uniform_f2();
    PersistenceExperiment ex =
        persistence_experiment(mu, 20, Rat(5), Rat(0), Rat(2), 120, 12, 1234);
    CHECK(ex.all_lower_bounds_ok);
    CHECK(ex.density > 0.0);
    CHECK(ex.density_wilson.lo > 0.0);
}

TEST_CASE("hitting probabilities behave at the extremes") {
    StepDistribution mu = StepDistribution::uniform_f2();
    // shadow containing the basepoint: hit at time zero
    Shadow everything{TreePoint{}, TreePoint{W("a")}, Rat(2)};
    TailEstimate hit = hitting_prob(mu, everything, 5, 50, WalkDirection::Forward, 1);
    CHECK(hit.p_hat == 1.0);
    // the a-ray never enters the b-shadow
    StepDistribution pm = StepDistribution::point_mass(G("a"));
    Shadow bshadow{TreePoint{}, TreePoint{W("b")}, Rat(1, 2)};
    TailEstimate never = hitting_prob(pm, bshadow, 50, 30, WalkDirection::Forward, 1);
    CHECK(never.p_hat == 0.0);
}

TEST_CASE("hitting probability decays with the distance parameter") {
    StepDistribution mu = StepDistribution::uniform_f2();
    double prev = 1.1;
    for (int r = 1; r <= 6; ++r) {
        Word center = W("a").pow(r + 1);
        Shadow sh{TreePoint{}, TreePoint{center}, Rat(1)};
        TailEstimate est = hitting_prob(mu, sh, 150, 3000, WalkDirection::Forward, 99);
        CHECK(est.p_hat <= prev + 0.02);
        prev = est.p_hat;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("shadow decay recovers the harmonic measure slope") {
    StepDistribution mu = StepDistribution::uniform_f2();
    DecayFit fit = shadow_decay(mu, 1, 5, 20000, 80, 4242);
    CHECK(std::abs(fit.slope + std::log(3.0)) < 0.1);
    // the a-cylinder masses match the closed form within 3.5 sigma
    std::uint64_t resolved = 0;
    for (const auto& [key, count] : fit.measure.counts)
        if (key != kUnresolvedKey) resolved += count;
    EmpiricalMeasure top = aggregate_prefixes(fit.measure, mu, 1);
    double mass = static_cast<double>(top.counts.at("a")) / static_cast<double>(resolved);
    double expect = oracles::harmonic_cylinder_mass(1);
    CHECK(std::abs(mass - expect) < 3.5 * std::sqrt(expect * (1 - expect) / resolved));

    // a point mass never reaches the b-cylinder
    DecayFit ray = shadow_decay(StepDistribution::point_mass(G("a")), 1, 2, 50, 40, 1);
    CHECK(ray.measure.counts.count("b") == 0);
}

TEST_CASE("translation lengths: exact, formula, and growth") {
    CHECK(translation_length_exact(G("abA")) == 1);
    CHECK(translation_length_exact(G("")) == 0);
    CHECK(translation_length_exact(G("aaa")) == 3);

    auto f1 = translation_length_formula(f2, G("abA"), Rat(1));
    REQUIRE(f1.has_value());
    CHECK(*f1 == Rat(1));
    CHECK(!translation_length_formula(f2, G(""), Rat(1)).has_value());
    auto f3 = translation_length_formula(f2, G("aaa"), Rat(1));
    REQUIRE(f3.has_value());
    CHECK(*f3 == Rat(3));

    // tau(g^k) = k tau(g)
    for (const char* text : {"ab", "abA", "aab"}) {
        GroupElement g = G(text);
        for (long long k = 2; k <= 4; ++k)
            CHECK(translation_length_exact(pow(g, k)) == k * translation_length_exact(g));
    }
}

TEST_CASE("exhaustive translation identities up to length 8") {
    std::size_t checked = 0;
    for_each_word(2, 8, [&](const Word& w) {
        if (w.empty()) return;
        GroupElement g{w, false};
        long long tau = translation_length_exact(g);
        CHECK(static_cast<long long>((w * w).size()) - static_cast<long long>(w.size()) == tau);
        auto formula = translation_length_formula(f2, g, Rat(1));
        REQUIRE(formula.has_value());
        CHECK(*formula == Rat(tau));
        ++checked;
    });
    CHECK(checked == 13120);
}

TEST_CASE("translation growth of deterministic and random walks") {
    TranslationGrowth det = translation_growth(StepDistribution::point_mass(G("a")), 40, 0.5, 10, 2);
    CHECK(det.tail.p_hat == 0.0);
    TranslationGrowth rnd = translation_growth(StepDistribution::uniform_f2(), 200, 0.25, 400, 97);
    CHECK(rnd.tail.p_hat <= 0.02);
    CHECK(rnd.formula_mismatches == 0);
    CHECK(rnd.formula_checked > 350);
}

TEST_CASE("tracking a deterministic ray gives zero distances") {
    SamplePath ray = sample_path(StepDistribution::point_mass(G("a")), 40, 8);
    TrackingSeries ts = tracking_series(ray, 5);
    for (long long d : ts.distances) CHECK(d == 0);
    CHECK(ts.final_over_n == 0.0);
    SamplePath back;
    back.increments = {G("a"), G("A")};
    back.locations = {G(""), G("a"), G("")};
    CHECK_THROWS_AS(tracking_series(back, 1), std::invalid_argument);
}

TEST_CASE("random walks track their limit rays sublinearly") {
    TrackingExperiment ex = tracking_experiment(StepDistribution::uniform_f2(), 1500, 30, 11235);
    CHECK(ex.exhausted_trials == 0);
    int good = 0;
    for (double v : ex.final_over_n)
        if (v <= 0.01) ++good;
    CHECK(good >= 28);
    for (double v : ex.max_over_log) CHECK(v < 12.0);
}

TEST_CASE("midpoint products separate along the walk") {
    MidpointGp det = midpoint_gp_experiment(StepDistribution::point_mass(G("a")), 40, 5, 6);
    for (long long v : det.gp_mid) CHECK(v == 20);
    MidpointGp mg = midpoint_gp_experiment(StepDistribution::uniform_f2(), 400, 200, 13);
    CHECK(mg.fraction_mid_at_least(400.0 / 8.0) >= 0.95);
    double logsq = std::log(400.0) * std::log(400.0);
    CHECK(mg.fraction_cross_at_most(logsq) >= 0.95);
    // the crossing product stays stochastically bounded as n grows: medians
    // non-increasing beyond one unit of noise
    MidpointGp small = midpoint_gp_experiment(StepDistribution::uniform_f2(), 200, 400, 29);
    MidpointGp large = midpoint_gp_experiment(StepDistribution::uniform_f2(), 800, 400, 31);
    CHECK(large.median_cross() <= small.median_cross() + 1.0);
}

TEST_CASE("Wilson intervals and least squares behave") {
    Interval iv = wilson_interval(50, 100, 1.96);
    CHECK(iv.lo > 0.40);
    CHECK(iv.hi < 0.60);
    Interval zero = wilson_interval(0, 100, 1.96);
    CHECK(zero.lo == 0.0);
    LineFit fit = fit_line({1, 2, 3, 4}, {2, 4, 6, 8});
    CHECK(std::abs(fit.slope - 2.0) < 1e-12);
    CHECK(std::abs(fit.intercept) < 1e-12);
    CHECK(fit.rmse < 1e-12);
}
