#include "hypwalk/config.hpp"

#include "hypwalk/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hypwalk {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

Rat parse_rat(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ConfigError(what + ": cannot parse rational '" + s + "'");
        }
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        for (long long den = 1; den <= 64; ++den) {
            double scaled = v * static_cast<double>(den);
            double r = std::round(scaled);
            if (std::abs(scaled - r) < 1e-9) return Rat(static_cast<long long>(r), den);
        }
        throw ConfigError(what + ": rational values need denominator <= 64");
    }
    throw ConfigError(what + ": expected a rational number");
}

Word parse_word_or_throw(const json& j, int max_rank, const std::string& what) {
    if (!j.is_string()) throw ConfigError(what + ": expected a word string");
    std::string err;
    auto w = Word::parse(j.get<std::string>(), max_rank, &err);
    if (!w) throw ConfigError(what + ": " + err);
    return *w;
}

StepDistribution parse_mu(const json& j) {
    if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
        throw ConfigError("mu: expected {\"support\": [{\"word\",\"p\"}...]}");
    std::vector<std::pair<GroupElement, double>> atoms;
    for (const json& row : j["support"]) {
        if (!row.is_object() || !row.contains("word") || !row.contains("p"))
            throw ConfigError("mu.support entries need \"word\" and \"p\"");
        std::string text = row["word"].get<std::string>();
        std::string err;
        auto w = Word::parse(text, 26, &err);
        if (!w) throw ConfigError("mu.support word '" + text + "': " + err);
        if (!w->letters_reduced(w->letters()) || w->str().size() != text.size())
            throw ConfigError("mu.support word '" + text + "' is not reduced");
        if (!row["p"].is_number()) throw ConfigError("mu.support probability must be a number");
        atoms.emplace_back(GroupElement{*w, false}, row["p"].get<double>());
    }
    try {
        return StepDistribution::from_atoms(std::move(atoms));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("mu: ") + e.what());
    }
}

TreeEnd parse_end(const json& j, int rank, const std::string& what) {
    if (!j.is_object() || !j.contains("period"))
        throw ConfigError(what + ": expected {\"prefix\",\"period\"}");
    Word prefix = j.contains("prefix") ? parse_word_or_throw(j["prefix"], rank, what + ".prefix")
                                       : Word{};
    Word period = parse_word_or_throw(j["period"], rank, what + ".period");
    try {
        return TreeEnd(prefix, period);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

const std::set<std::string> kEstimators = {
    "drift",      "tail",        "persistence",      "hitting",
    "decay",      "translation", "tracking",         "midpoint",
    "stationarity", "strips-series", "strips-enumerate", "pushforward"};

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig cfg;
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw ConfigError("config needs an integer schema_version");
    cfg.schema_version = j["schema_version"].get<int>();
    if (cfg.schema_version != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(cfg.schema_version));
    if (!j.contains("estimator") || !j["estimator"].is_string())
        throw ConfigError("config needs an estimator name");
    cfg.estimator = j["estimator"].get<std::string>();
    if (!kEstimators.count(cfg.estimator))
        throw ConfigError("unknown estimator '" + cfg.estimator + "'");
    if (!j.contains("mu")) throw ConfigError("config needs a step distribution mu");
    cfg.mu = parse_mu(j["mu"]);
    if (cfg.mu.uses_flip()) throw ConfigError("estimator walks run on free-group support");
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.trials = j.value("trials", 1);
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    cfg.allow_elementary = j.value("allow_elementary", false);
    cfg.out = j.value("out", std::string{});

    const json params = j.value("params", json::object());
    auto need = [&](const char* key) -> const json& {
        if (!params.contains(key))
            throw ConfigError(cfg.estimator + " config needs params." + std::string(key));
        return params.at(key);
    };
    auto need_size = [&](const char* key) -> std::size_t {
        const json& v = need(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ConfigError(std::string("params.") + key + " must be a nonnegative integer");
        return v.get<std::size_t>();
    };

    int rank = std::max(2, cfg.mu.rank());
    bool needs_nonelementary = false;

    if (cfg.estimator == "drift") {
        cfg.n = need_size("n");
    } else if (cfg.estimator == "tail" || cfg.estimator == "translation") {
        cfg.n = need_size("n");
        cfg.L = need("L").get<double>();
        if (cfg.L <= 0) throw ConfigError("params.L must be positive");
    } else if (cfg.estimator == "persistence") {
        cfg.n = need_size("n");
        cfg.auto_recipe = params.value("auto_recipe", false);
        if (!cfg.auto_recipe) {
            cfg.k = need_size("k");
            cfg.R = parse_rat(need("R"), "params.R");
        }
        cfg.C = params.contains("C") ? parse_rat(params["C"], "params.C") : Rat(0);
        cfg.C0 = params.contains("C0") ? parse_rat(params["C0"], "params.C0") : Rat(1);
        cfg.eps = params.value("eps", 0.1);
        needs_nonelementary = true;
    } else if (cfg.estimator == "hitting") {
        const json& sh = need("shadow");
        if (!sh.is_object()) throw ConfigError("params.shadow must be {base, center, R}");
        cfg.shadow_base = parse_word_or_throw(sh.value("base", json("")), rank, "shadow.base");
        cfg.shadow_center = parse_word_or_throw(sh.at("center"), rank, "shadow.center");
        cfg.shadow_R = parse_rat(sh.at("R"), "shadow.R");
        cfg.horizon = need_size("horizon");
        std::string dir = params.value("direction", "forward");
        if (dir == "forward") cfg.direction = WalkDirection::Forward;
        else if (dir == "backward") cfg.direction = WalkDirection::Backward;
        else throw ConfigError("params.direction must be forward or backward");
    } else if (cfg.estimator == "decay") {
        cfg.r_lo = static_cast<int>(need_size("r_lo"));
        cfg.r_hi = static_cast<int>(need_size("r_hi"));
        if (cfg.r_lo < 1 || cfg.r_hi < cfg.r_lo) throw ConfigError("need 1 <= r_lo <= r_hi");
        cfg.walk_len = need_size("walk_len");
        needs_nonelementary = true;
    } else if (cfg.estimator == "tracking") {
        cfg.n = need_size("n");
        cfg.buffer_factor = params.value("buffer", 2.5);
        if (cfg.buffer_factor < 1.0) throw ConfigError("params.buffer must be >= 1");
        needs_nonelementary = true;
    } else if (cfg.estimator == "midpoint") {
        cfg.n = need_size("n");
    } else if (cfg.estimator == "stationarity") {
        cfg.depth = need_size("depth");
        cfg.walk_len = need_size("walk_len");
        needs_nonelementary = true;
    } else if (cfg.estimator == "strips-series") {
        cfg.K = parse_rat(need("K"), "params.K");
        cfg.R = parse_rat(need("R"), "params.R");
        cfg.v = GroupElement{parse_word_or_throw(need("v"), rank, "params.v"), false};
        cfg.sim_len = need_size("sim_len");
        const json& ns = need("ns");
        if (!ns.is_array() || ns.empty()) throw ConfigError("params.ns must be a nonempty array");
        for (const json& x : ns) cfg.ns.push_back(x.get<std::size_t>());
        needs_nonelementary = true;
    } else if (cfg.estimator == "strips-enumerate") {
        cfg.K = parse_rat(need("K"), "params.K");
        cfg.R = parse_rat(need("R"), "params.R");
        cfg.v = GroupElement{parse_word_or_throw(need("v"), rank, "params.v"), false};
        cfg.alpha = parse_end(need("alpha"), rank, "params.alpha");
        cfg.beta = parse_end(need("beta"), rank, "params.beta");
        cfg.radius = static_cast<int>(need_size("r"));
    } else if (cfg.estimator == "pushforward") {
        cfg.n = need_size("n");
        cfg.depth = params.value("depth", std::size_t{0});
    }

    if (cfg.estimator == "drift" || cfg.estimator == "tail") {
        std::string reason;
        if (!cfg.allow_elementary && !drift_precondition(cfg.mu, &reason))
            throw ConfigError("step distribution rejected: " + reason);
    } else if (needs_nonelementary && !cfg.allow_elementary) {
        if (!check_nonelementary(cfg.mu).nonelementary)
            throw ConfigError("step distribution rejected: non-elementary support required "
                              "(set allow_elementary to override)");
    }
    try {
        if (cfg.estimator == "strips-series" || cfg.estimator == "strips-enumerate")
            (void)BGParams(cfg.K, cfg.R, cfg.v);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("strips params: ") + e.what());
    }
    return cfg;
}

std::string config_digest(const std::string& json_text) {
    std::string canonical;
    try {
        canonical = json::parse(json_text).dump();
    } catch (const json::parse_error&) {
        canonical = json_text;
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64-%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json run_drift(const ExperimentConfig& cfg, int workers, std::string& csv) {
    DriftEstimate est = estimate_drift(cfg.mu, cfg.n, cfg.trials, cfg.seed, workers);
    std::ostringstream os;
    os << "n,trials,l_hat,stderr\n"
       << est.n << "," << est.trials << "," << format_double(est.l_hat) << ","
       << format_double(est.stderr_) << "\n";
    csv = os.str();
    return json{{"l_hat", est.l_hat}, {"stderr", est.stderr_}, {"n", est.n}, {"trials", est.trials}};
}

json tail_json(const TailEstimate& est) {
    return json{{"p_hat", est.p_hat},
                {"hits", est.hits},
                {"trials", est.trials},
                {"wilson_lo", est.wilson.lo},
                {"wilson_hi", est.wilson.hi}};
}

json run_tail(const ExperimentConfig& cfg, int workers, std::string& csv) {
    TailEstimate est = drift_tail(cfg.mu, cfg.n, cfg.L, cfg.trials, cfg.seed, workers);
    std::ostringstream os;
    os << "n,L,hits,trials,p_hat,wilson_lo,wilson_hi\n"
       << cfg.n << "," << format_double(cfg.L) << "," << est.hits << "," << est.trials << ","
       << format_double(est.p_hat) << "," << format_double(est.wilson.lo) << ","
       << format_double(est.wilson.hi) << "\n";
    csv = os.str();
    return tail_json(est);
}

json run_persistence(const ExperimentConfig& cfg, int workers, std::string& csv) {
    std::size_t k = cfg.k;
    Rat R = cfg.R;
    json recipe;
    if (cfg.auto_recipe) {
        PersistenceRecipe rec = persistence_recipe(cfg.mu, cfg.eps, cfg.seed, workers);
        k = rec.k;
        R = rec.R;
        recipe = json{{"k", k}, {"R", to_double(R)}};
    }
    PersistenceExperiment ex =
        persistence_experiment(cfg.mu, k, R, cfg.C, cfg.C0, cfg.n, cfg.trials, cfg.seed, workers);
    std::ostringstream os;
    os << "trial,k,R,C,C0,segments,z,density,lower_bound_ok\n";
    for (std::size_t t = 0; t < ex.trials.size(); ++t) {
        const PersistenceStats& st = ex.trials[t];
        os << t << "," << st.k << "," << format_double(to_double(st.R)) << ","
           << format_double(to_double(st.C)) << "," << format_double(to_double(st.C0)) << ","
           << st.segments << "," << st.z << "," << format_double(st.density) << ","
           << (st.lower_bound_ok ? 1 : 0) << "\n";
    }
    csv = os.str();
    json out{{"density", ex.density},
             {"wilson_lo", ex.density_wilson.lo},
             {"wilson_hi", ex.density_wilson.hi},
             {"all_lower_bounds_ok", ex.all_lower_bounds_ok},
             {"k", k},
             {"R", to_double(R)}};
    if (!recipe.is_null()) out["recipe"] = recipe;
    return out;
}

json run_hitting(const ExperimentConfig& cfg, int workers, std::string& csv) {
    Shadow sh{TreePoint{cfg.shadow_base}, TreePoint{cfg.shadow_center}, cfg.shadow_R};
    TailEstimate est = hitting_prob(cfg.mu, sh, cfg.horizon, cfg.trials, cfg.direction, cfg.seed,
                                    workers);
    std::ostringstream os;
    os << "horizon,direction,hits,trials,p_hat,wilson_lo,wilson_hi\n"
       << cfg.horizon << "," << (cfg.direction == WalkDirection::Forward ? "forward" : "backward")
       << "," << est.hits << "," << est.trials << "," << format_double(est.p_hat) << ","
       << format_double(est.wilson.lo) << "," << format_double(est.wilson.hi) << "\n";
    csv = os.str();
    return tail_json(est);
}

json run_decay(const ExperimentConfig& cfg, int workers, std::string& csv) {
    DecayFit fit = shadow_decay(cfg.mu, cfg.r_lo, cfg.r_hi, cfg.trials, cfg.walk_len, cfg.seed,
                                workers);
    std::ostringstream os;
    os << "r,mean_mass,log_mass\n";
    for (const auto& [r, mass] : fit.pairs)
        os << r << "," << format_double(mass) << "," << format_double(std::log(mass)) << "\n";
    csv = os.str();
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"residual", fit.residual},
                {"dropped_zero_cylinders", fit.dropped_zero_cylinders}};
}

json run_translation(const ExperimentConfig& cfg, int workers, std::string& csv) {
    TranslationGrowth tg = translation_growth(cfg.mu, cfg.n, cfg.L, cfg.trials, cfg.seed, workers);
    std::ostringstream os;
    os << "trial,tau_exact,tau_formula,guard_held\n";
    for (std::size_t t = 0; t < tg.samples.size(); ++t) {
        const TranslationSample& s = tg.samples[t];
        os << t << "," << s.tau_exact << ","
           << (s.tau_formula ? format_double(to_double(*s.tau_formula)) : std::string{}) << ","
           << (s.guard_held ? 1 : 0) << "\n";
    }
    csv = os.str();
    json out = tail_json(tg.tail);
    out["n"] = cfg.n;
    out["L"] = cfg.L;
    out["formula_checked"] = tg.formula_checked;
    out["formula_mismatches"] = tg.formula_mismatches;
    out["min_tau"] = tg.min_tau;
    return out;
}

json run_tracking(const ExperimentConfig& cfg, int workers, std::string& csv) {
    TrackingExperiment ex =
        tracking_experiment(cfg.mu, cfg.n, cfg.trials, cfg.seed, cfg.buffer_factor, workers);
    std::ostringstream os;
    os << "trial,final_over_n,max_over_log\n";
    for (std::size_t t = 0; t < ex.final_over_n.size(); ++t)
        os << t << "," << format_double(ex.final_over_n[t]) << ","
           << format_double(ex.max_over_log[t]) << "\n";
    csv = os.str();
    double worst_final = 0.0, worst_log = 0.0;
    for (double v : ex.final_over_n) worst_final = std::max(worst_final, v);
    for (double v : ex.max_over_log) worst_log = std::max(worst_log, v);
    return json{{"n", ex.n_eval},
                {"trials", cfg.trials},
                {"max_final_over_n", worst_final},
                {"max_over_log", worst_log},
                {"exhausted_trials", ex.exhausted_trials}};
}

json run_midpoint(const ExperimentConfig& cfg, int workers, std::string& csv) {
    MidpointGp mg = midpoint_gp_experiment(cfg.mu, cfg.n, cfg.trials, cfg.seed, workers);
    std::ostringstream os;
    os << "trial,gp_mid,gp_cross\n";
    for (std::size_t t = 0; t < mg.gp_mid.size(); ++t)
        os << t << "," << mg.gp_mid[t] << "," << mg.gp_cross[t] << "\n";
    csv = os.str();
    return json{{"n", mg.n},
                {"fraction_mid_ge_n_over_8", mg.fraction_mid_at_least(static_cast<double>(mg.n) / 8.0)},
                {"median_cross", mg.median_cross()}};
}

json run_stationarity(const ExperimentConfig& cfg, int workers, std::string& csv) {
    StationarityResult res =
        stationarity_check(cfg.mu, cfg.depth, cfg.trials, cfg.walk_len, cfg.seed, workers);
    std::ostringstream os;
    os << "depth,samples,resolved_fraction,tv\n"
       << cfg.depth << "," << res.samples << "," << format_double(res.resolved_fraction) << ","
       << format_double(res.tv_distance) << "\n";
    csv = os.str();
    return json{{"tv", res.tv_distance},
                {"resolved_fraction", res.resolved_fraction},
                {"samples", res.samples}};
}

json run_strips_series(const ExperimentConfig& cfg, int workers, std::string& csv) {
    BGParams params(cfg.K, cfg.R, cfg.v);
    auto all = strip_series_experiment(cfg.mu, params, cfg.ns, cfg.sim_len, cfg.trials, cfg.seed,
                                       workers);
    std::ostringstream os;
    os << "trial,n,radius,count,log_card_over_n,resolved\n";
    double density_sum = 0.0;
    int resolved_trials = 0;
    for (std::size_t t = 0; t < all.size(); ++t) {
        if (all[t].pair_resolved) {
            ++resolved_trials;
            density_sum += all[t].bg_time_density;
        }
        for (const StripSeriesPoint& pt : all[t].points)
            os << t << "," << pt.n << "," << pt.radius << "," << pt.count << ","
               << format_double(pt.log_card_over_n) << "," << (pt.resolved ? 1 : 0) << "\n";
    }
    csv = os.str();
    return json{{"resolved_trials", resolved_trials},
                {"mean_bg_time_density",
                 resolved_trials ? density_sum / resolved_trials : 0.0}};
}

json run_strips_enumerate(const ExperimentConfig& cfg, int, std::string& csv) {
    BGParams params(cfg.K, cfg.R, cfg.v);
    BoundaryPair pair(*cfg.alpha, *cfg.beta);
    std::ostringstream os;
    os << "r,count,count_over_r\n";
    std::size_t last = 0;
    for (int r = 1; r <= cfg.radius; ++r) {
        last = count_bg_in_ball(pair, params, r);
        os << r << "," << last << ","
           << format_double(static_cast<double>(last) / static_cast<double>(r)) << "\n";
    }
    csv = os.str();
    return json{{"r", cfg.radius}, {"count", last}};
}

json run_pushforward(const ExperimentConfig& cfg, int workers, std::string& csv) {
    PushforwardKey key = cfg.depth > 0 ? PushforwardKey::BoundaryPrefix : PushforwardKey::Location;
    EmpiricalMeasure m = empirical_pushforward(cfg.mu, cfg.n, cfg.trials, key, cfg.depth, cfg.seed,
                                               false, workers);
    csv = measure_to_csv(m);
    return json{{"total", m.total}, {"distinct_keys", m.counts.size()}};
}

} // namespace

std::string measure_to_csv(const EmpiricalMeasure& m) {
    std::ostringstream os;
    os << "key,count,total\n";
    for (const auto& [key, count] : m.counts) os << key << "," << count << "," << m.total << "\n";
    return os.str();
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::string& raw_json, int workers) {
    auto t0 = std::chrono::steady_clock::now();
    std::string csv;
    json payload;
    if (cfg.estimator == "drift") payload = run_drift(cfg, workers, csv);
    else if (cfg.estimator == "tail") payload = run_tail(cfg, workers, csv);
    else if (cfg.estimator == "persistence") payload = run_persistence(cfg, workers, csv);
    else if (cfg.estimator == "hitting") payload = run_hitting(cfg, workers, csv);
    else if (cfg.estimator == "decay") payload = run_decay(cfg, workers, csv);
    else if (cfg.estimator == "translation") payload = run_translation(cfg, workers, csv);
    else if (cfg.estimator == "tracking") payload = run_tracking(cfg, workers, csv);
    else if (cfg.estimator == "midpoint") payload = run_midpoint(cfg, workers, csv);
    else if (cfg.estimator == "stationarity") payload = run_stationarity(cfg, workers, csv);
    else if (cfg.estimator == "strips-series") payload = run_strips_series(cfg, workers, csv);
    else if (cfg.estimator == "strips-enumerate") payload = run_strips_enumerate(cfg, workers, csv);
    else if (cfg.estimator == "pushforward") payload = run_pushforward(cfg, workers, csv);
    else throw ConfigError("unknown estimator '" + cfg.estimator + "'");
    auto t1 = std::chrono::steady_clock::now();

    RunResult res;
    res.csv = std::move(csv);
    res.payload_json = payload.dump();
    res.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    json record{{"schema_version", kSchemaVersion},
                {"version", kVersion},
                {"config_digest", config_digest(raw_json)},
                {"estimator", cfg.estimator},
                {"seed", cfg.seed},
                {"payload", payload},
                {"wall_ms", res.wall_ms}};
    res.record_json = record.dump(2);
    return res;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
    }
    fs::rename(tmp, target);
}

} // namespace hypwalk
