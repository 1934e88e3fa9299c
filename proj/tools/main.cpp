#include "hypwalk/config.hpp"
#include "hypwalk/horofunction.hpp"
#include "hypwalk/parallel.hpp"
#include "hypwalk/verify.hpp"
#include "hypwalk/version.hpp"
#include "hypwalk/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace hypwalk;

// Exit codes: 0 pass, 1 invariant/runtime failure, 2 config error.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ModelSpace space_from_name(const std::string& name, int k) {
    if (name == "f2") return ModelSpace::free_group(2);
    if (name == "free") return ModelSpace::free_group(k);
    if (name == "wedge") return ModelSpace::wedge();
    if (name == "line") return ModelSpace::line();
    if (name == "zxz2") return ModelSpace::zxz2();
    if (name == "f2xz2") return ModelSpace::f2xz2();
    throw ConfigError("unknown model '" + name + "'");
}

ModelPoint point_from_text(const ModelSpace& space, const std::string& text) {
    switch (space.model) {
        case Model::FreeTree: {
            std::string err;
            auto w = Word::parse(text, space.rank, &err);
            if (!w) throw ConfigError("point '" + text + "': " + err);
            return TreePoint{*w};
        }
        case Model::F2xZ2: {
            std::string body = text;
            std::uint8_t bit = 0;
            if (!body.empty() && (body.back() == 'c' || body.back() == 'C')) {
                bit = 1;
                body.pop_back();
            }
            std::string err;
            auto w = Word::parse(body, 2, &err);
            if (!w) throw ConfigError("point '" + text + "': " + err);
            return F2Z2Point{*w, bit};
        }
        case Model::Line: {
            return LinePoint{Rat(std::stoll(text))};
        }
        case Model::ZxZ2: {
            auto comma = text.find(',');
            if (comma == std::string::npos) throw ConfigError("ZxZ2 points look like n,bit");
            return ZxZ2Point{std::stoll(text.substr(0, comma)),
                             static_cast<std::uint8_t>(std::stoi(text.substr(comma + 1)))};
        }
        case Model::Wedge: {
            auto comma = text.find(',');
            if (comma == std::string::npos) throw ConfigError("wedge points look like ray,s");
            return make_ray_point(static_cast<std::uint32_t>(std::stoul(text.substr(0, comma))),
                                  Rat(std::stoll(text.substr(comma + 1))));
        }
    }
    throw ConfigError("bad model");
}

Horofunction horo_from_args(const ModelSpace& space, const std::string& type,
                            const std::string& param) {
    if (type == "orbit") return orbit_horofunction(space, point_from_text(space, param));
    if (type == "busemann") {
        switch (space.model) {
            case Model::FreeTree: {
                std::string err;
                auto w = Word::parse(param, space.rank, &err);
                if (!w || w->empty()) throw ConfigError("busemann end: need a nonempty period word");
                return busemann_horofunction(space, TreeEnd(Word{}, *w));
            }
            case Model::Line:
                return busemann_horofunction(space, LineEnd{param != "-"});
            case Model::Wedge:
                return busemann_horofunction(
                    space, WedgeEnd{static_cast<std::uint32_t>(std::stoul(param))});
            default:
                throw ConfigError("busemann horofunctions via CLI cover tree, line and wedge models");
        }
    }
    throw ConfigError("horofunction type must be orbit or busemann");
}

int cmd_horo_eval(const std::string& model, const std::string& type, const std::string& param,
                  const std::string& at) {
    ModelSpace space = space_from_name(model, 2);
    Horofunction h = horo_from_args(space, type, param);
    ModelPoint z = point_from_text(space, at);
    json out{{"schema_version", kSchemaVersion},
             {"type", type},
             {"params", {{"model", model}, {"param", param}, {"at", at}}},
             {"results", {{"value", to_double(horo_eval(h, z))}}}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_horo_classify(const std::string& model, const std::string& type, const std::string& param) {
    ModelSpace space = space_from_name(model, 2);
    Horofunction h = horo_from_args(space, type, param);
    HoroClass c = classify(h);
    const char* name = c == HoroClass::Finite ? "finite"
                       : c == HoroClass::Infinite ? "infinite"
                                                  : "unknown";
    json out{{"schema_version", kSchemaVersion},
             {"type", type},
             {"params", {{"model", model}, {"param", param}}},
             {"results", {{"class", name}}}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_horo_limit_check(const std::string& config_path) {
    json j = json::parse(slurp(config_path));
    ModelSpace space = space_from_name(j.at("model").get<std::string>(), j.value("k", 2));
    std::vector<Horofunction> seq;
    for (const json& row : j.at("seq"))
        seq.push_back(horo_from_args(space, row.at("type").get<std::string>(),
                                     row.at("param").get<std::string>()));
    const json& cand = j.at("candidate");
    Horofunction candidate = horo_from_args(space, cand.at("type").get<std::string>(),
                                            cand.at("param").get<std::string>());
    std::vector<ModelPoint> pts;
    for (const json& p : j.at("test_points"))
        pts.push_back(point_from_text(space, p.get<std::string>()));
    std::vector<Rat> devs = pointwise_deviation_series(seq, candidate, pts);
    json series = json::array();
    for (const Rat& d : devs) series.push_back(to_double(d));
    json out{{"schema_version", kSchemaVersion},
             {"type", "limit-check"},
             {"params", {{"model", j.at("model")}, {"seq_len", seq.size()}}},
             {"results", {{"deviations", series}, {"tail_deviation", to_double(devs.back())}}}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

StepDistribution mu_from_file_or_default(const std::string& path) {
    if (path.empty()) return StepDistribution::uniform_f2();
    json j = json::parse(slurp(path));
    std::vector<std::pair<GroupElement, double>> atoms;
    for (const json& row : j.at("support")) {
        std::string err;
        auto w = Word::parse(row.at("word").get<std::string>(), 26, &err);
        if (!w) throw ConfigError("mu word: " + err);
        atoms.emplace_back(GroupElement{*w, false}, row.at("p").get<double>());
    }
    return StepDistribution::from_atoms(std::move(atoms));
}

int cmd_walk_sample(const std::string& mu_path, std::size_t n, std::uint64_t seed,
                    const std::string& out) {
    StepDistribution mu = mu_from_file_or_default(mu_path);
    SamplePath path = sample_path(mu, n, seed);
    std::ostringstream os;
    os << "k,increment,location,distance\n";
    for (std::size_t k = 0; k <= path.length(); ++k) {
        os << k << "," << (k ? to_string(path.increments[k - 1]) : std::string{}) << ","
           << to_string(path.locations[k]) << "," << path.locations[k].word.size() << "\n";
    }
    if (out.empty()) std::cout << os.str();
    else write_atomic(out, os.str());
    return kExitOk;
}

int cmd_walk_limit(const std::string& mu_path, std::size_t n, std::size_t depth,
                   std::uint64_t seed) {
    StepDistribution mu = mu_from_file_or_default(mu_path);
    SamplePath path = sample_path(mu, n, seed);
    auto prefix = limit_point(path, depth);
    json out{{"schema_version", kSchemaVersion},
             {"resolved", prefix.has_value()},
             {"prefix", prefix ? prefix->str() : std::string{}}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_config(const std::string& path, const std::string& out_override,
               std::optional<std::uint64_t> seed_override, int workers) {
    std::string text = slurp(path);
    ExperimentConfig cfg = parse_config(text);
    if (seed_override) cfg.seed = *seed_override;
    RunResult res = run_experiment(cfg, text, workers);
    std::string out = out_override.empty() ? cfg.out : out_override;
    if (!out.empty()) write_atomic(out, res.csv);
    else std::cout << res.csv;
    std::cerr << res.record_json << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random walks on exactly-representable hyperbolic model spaces"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string model = "f2", type = "orbit", param, at, config_path, mu_path, out;
    std::size_t n = 100, depth = 5;
    std::uint64_t seed = 0;
    bool have_seed = false;
    int workers = 0;
    std::string level = "quick";

    auto* horo = app.add_subcommand("horo", "Evaluate and classify horofunctions");
    horo->require_subcommand(1);
    auto* horo_eval_cmd = horo->add_subcommand("eval", "Evaluate a horofunction at a point");
    horo_eval_cmd->add_option("--model", model, "f2|free|wedge|line|zxz2|f2xz2");
    horo_eval_cmd->add_option("--type", type, "orbit|busemann");
    horo_eval_cmd->add_option("--param", param, "defining point or boundary datum")->required();
    horo_eval_cmd->add_option("--at", at, "evaluation point")->required();
    auto* horo_classify_cmd = horo->add_subcommand("classify", "Finite/Infinite classification");
    horo_classify_cmd->add_option("--model", model);
    horo_classify_cmd->add_option("--type", type);
    horo_classify_cmd->add_option("--param", param)->required();
    auto* horo_limit_cmd = horo->add_subcommand("limit-check", "Pointwise limit check from a JSON config");
    horo_limit_cmd->add_option("--config", config_path)->required();

    auto* walk = app.add_subcommand("walk", "Sample seeded walks");
    walk->require_subcommand(1);
    auto* walk_sample_cmd = walk->add_subcommand("sample", "Emit one sample path as CSV");
    walk_sample_cmd->add_option("--mu", mu_path, "step distribution JSON (default uniform F2)");
    walk_sample_cmd->add_option("--n", n);
    walk_sample_cmd->add_option("--seed", seed);
    walk_sample_cmd->add_option("--out", out);
    auto* walk_limit_cmd = walk->add_subcommand("limit", "Extract the boundary limit prefix");
    walk_limit_cmd->add_option("--mu", mu_path);
    walk_limit_cmd->add_option("--n", n);
    walk_limit_cmd->add_option("--depth", depth);
    walk_limit_cmd->add_option("--seed", seed);

    auto* estimate = app.add_subcommand("estimate", "Run an estimator from a JSON config");
    std::string est_name;
    estimate->add_option("name", est_name, "estimator name (must match the config)")->required();
    estimate->add_option("--config", config_path)->required();
    estimate->add_option("--out", out, "CSV artifact path");
    auto* est_seed = estimate->add_option("--seed", seed, "override the config seed");
    estimate->add_option("--workers", workers);

    auto* strips = app.add_subcommand("strips", "Bounded-geometry strips");
    strips->require_subcommand(1);
    auto* strips_enum = strips->add_subcommand("enumerate", "Counts per radius from a config");
    strips_enum->add_option("--config", config_path)->required();
    strips_enum->add_option("--out", out);
    auto* strips_series = strips->add_subcommand("series", "Log-cardinality series from a config");
    strips_series->add_option("--config", config_path)->required();
    strips_series->add_option("--out", out);
    strips_series->add_option("--workers", workers);

    auto* verify = app.add_subcommand("verify", "Run the module invariant suites");
    verify->add_option("--level", level, "quick|full");

    auto* run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("config", config_path)->required();
    run->add_option("--out", out);
    auto* run_seed = run->add_option("--seed", seed);
    run->add_option("--workers", workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (horo_eval_cmd->parsed()) return cmd_horo_eval(model, type, param, at);
        if (horo_classify_cmd->parsed()) return cmd_horo_classify(model, type, param);
        if (horo_limit_cmd->parsed()) return cmd_horo_limit_check(config_path);
        if (walk_sample_cmd->parsed()) return cmd_walk_sample(mu_path, n, seed, out);
        if (walk_limit_cmd->parsed()) return cmd_walk_limit(mu_path, n, depth, seed);
        if (estimate->parsed()) {
            have_seed = est_seed->count() > 0;
            std::string text = slurp(config_path);
            ExperimentConfig cfg = parse_config(text);
            if (cfg.estimator != est_name)
                throw ConfigError("config estimator '" + cfg.estimator + "' does not match '" +
                                  est_name + "'");
            if (have_seed) cfg.seed = seed;
            RunResult res = run_experiment(cfg, text, workers);
            std::string target = out.empty() ? cfg.out : out;
            if (!target.empty()) write_atomic(target, res.csv);
            else std::cout << res.csv;
            std::cerr << res.record_json << "\n";
            return kExitOk;
        }
        if (strips_enum->parsed() || strips_series->parsed())
            return run_config(config_path, out, std::nullopt, workers);
        if (verify->parsed()) {
            VerifyLevel lvl;
            if (level == "quick") lvl = VerifyLevel::Quick;
            else if (level == "full") lvl = VerifyLevel::Full;
            else throw ConfigError("verify level must be quick or full");
            VerifyReport report = run_verify(lvl, &std::cout);
            std::cout << (report.all_pass() ? "verify: all checks passed"
                                            : "verify: FAILURES detected")
                      << "\n";
            return report.all_pass() ? kExitOk : kExitFailure;
        }
        if (run->parsed())
            return run_config(config_path, out,
                              run_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                              workers);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitConfig;
}
