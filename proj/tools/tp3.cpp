#include "tp3/pipeline.hpp"
#include "tp3/server.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
}

tp3::ExperimentConfig load_config(const std::string& config_path, bool seed_set,
                                  std::uint64_t seed) {
    tp3::ExperimentConfig cfg = config_path.empty()
                                    ? tp3::ExperimentConfig::defaults()
                                    : tp3::ExperimentConfig::from_json_file(config_path);
    if (seed_set) {
        // One flag reseeds every stream; streams stay distinct.
        cfg.synth.seed = seed;
        cfg.split_seed = seed + 1;
        cfg.op_params.rng_seed = seed + 2;
        cfg.workload.seed = seed + 3;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tp3: trajectory privacy toolkit and serverless pipeline simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // accept --config/--out/--seed after the subcommand too

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "override every config seed")->each([&](const std::string&) {
        seed_set = true;
    });

    auto* ingest = app.add_subcommand("ingest", "parse or generate reports, segment trajectories");
    auto* attack = app.add_subcommand("attack", "mine profiles and score the test side");
    auto* defend = app.add_subcommand("defend", "sanitize, re-score, and report utility");
    auto* bench = app.add_subcommand("bench", "run workloads and the allocation search");
    auto* serve = app.add_subcommand("serve", "HTTP sanitization facade");
    std::string host = "127.0.0.1";
    int port = 8080;
    serve->add_option("--host", host, "bind address");
    serve->add_option("--port", port, "bind port");

    CLI11_PARSE(app, argc, argv);

    try {
        const tp3::ExperimentConfig cfg = load_config(config_path, seed_set, seed);
        const std::filesystem::path out(out_dir);

        if (serve->parsed()) {
            tp3::ServerConfig scfg;
            scfg.defaults = cfg.op_params;
            std::cout << "listening on " << host << ":" << port << "\n";
            return tp3::serve_http(host, port, scfg) ? 0 : 1;
        }

        const tp3::IngestResult ing = tp3::cmd_ingest(cfg);
        write_file(out, "store.json", ing.store_json);
        write_file(out, "windows.csv", ing.windows_csv);
        if (ingest->parsed()) {
            std::cout << ing.windows_csv;
            return 0;
        }

        const tp3::AttackResult atk = tp3::cmd_attack(cfg, ing.store);
        write_file(out, "profiles.json", tp3::mined_profiles_to_json(atk.mined));
        write_file(out, "scores.csv", atk.scores_csv);
        write_file(out, "coverage.csv", atk.coverage_csv);
        if (attack->parsed()) {
            std::cout << atk.coverage_csv;
            return 0;
        }

        if (defend->parsed()) {
            const tp3::DefendResult def = tp3::cmd_defend(cfg, ing, atk);
            write_file(out, "mean_scores.csv", def.mean_scores_csv);
            write_file(out, "utility.csv", def.utility_csv);
            write_file(out, "coreset.csv", def.coreset_csv);
            write_file(out, "captured.csv", def.captured_csv);
            std::cout << def.utility_csv;
            return 0;
        }

        if (bench->parsed()) {
            const tp3::BenchResult b = tp3::cmd_bench(cfg, ing.store, atk);
            write_file(out, "metrics.csv", b.metrics_csv);
            write_file(out, "frontier.json", b.frontier_json);
            std::cout << b.metrics_csv;
            if (b.infeasible) {
                std::cerr << "no allocation fits the budget cap\n";
                return 2;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
