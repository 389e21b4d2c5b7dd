#pragma once

#include "tp3/coreset.hpp"
#include "tp3/frontier.hpp"
#include "tp3/ingest.hpp"
#include "tp3/privacy.hpp"
#include "tp3/profiles.hpp"
#include "tp3/sim.hpp"
#include "tp3/social.hpp"
#include "tp3/synth.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tp3 {

/// All experiment knobs in one place. Every random draw in a command flows
/// from the seeds below; reruns are byte-identical.
struct ExperimentConfig {
    std::string dataset_path; // empty: generate the synthetic corpus
    CheckinFormat dataset_format = CheckinFormat::foursquare_tsv;
    SynthSpec synth;

    std::int64_t window_s = 8 * 3600;
    std::vector<std::int64_t> window_sweep_s{4 * 3600, 8 * 3600, 24 * 3600};

    double train_fraction = 0.6;
    std::uint64_t split_seed = 7;

    MinerConfig miner;
    StrengthConfig strength;
    double delta = 0.3;
    std::vector<double> delta_sweep{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    std::vector<PrivacyMode> ladder{PrivacyMode::loose_dummy, PrivacyMode::loose_pathconf,
                                    PrivacyMode::moderate_cloak, PrivacyMode::strict_tempcloak};
    OpParams op_params;
    double utility_temporal_weight = 0.0;
    double utility_floor_m = 1.0;
    std::vector<double> knowledge_fractions{0.2, 0.4, 0.6, 0.8, 1.0};

    CoresetConfig coreset;

    WorkloadSpec workload;
    std::vector<int> allocations_mb = kDefaultAllocationsMb;
    CostConfig cost;
    double gamma = 0.05;

    static ExperimentConfig defaults();
    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
};

using TrajectoryStore = std::map<std::string, std::vector<Trajectory>>;

struct IngestResult {
    TrajectoryStore store;
    std::vector<Report> pois;
    std::string store_json;
    std::string windows_csv; // trajectory count / mean length per sweep window
};

IngestResult cmd_ingest(const ExperimentConfig& cfg);

TrajectoryStore store_from_json(const std::string& text);

struct AttackResult {
    UserSplit split;
    MinedProfileSet mined;
    ProfileSet profile_set;
    std::string scores_csv;   // user, traj_id, length, score
    std::string coverage_csv; // delta, coverage
    std::vector<double> coverage_by_delta;
};

AttackResult cmd_attack(const ExperimentConfig& cfg, const TrajectoryStore& store);

struct DefendResult {
    std::string mean_scores_csv;  // op, min_length, n, mean_score
    std::string utility_csv;      // op, mean_utility_percent
    std::string coreset_csv;      // op, mean_reduction_percent
    std::string captured_csv;     // knowledge_fraction, op, captured_percent
    std::map<std::string, double> mean_score_by_op;   // over all test trajectories
    std::map<std::string, double> mean_utility_by_op; // percent
};

DefendResult cmd_defend(const ExperimentConfig& cfg, const IngestResult& ingest,
                        const AttackResult& attack);

struct BenchResult {
    std::string metrics_csv; // scenario, op, memory_mb, avgT, rps, lambda, SB
    std::string frontier_json;
    std::vector<FrontierPoint> points; // the frontier-search scenario (MvM)
    std::optional<FrontierPoint> chosen;
    bool infeasible = false;
};

BenchResult cmd_bench(const ExperimentConfig& cfg, const TrajectoryStore& store,
                      const AttackResult& attack);

} // namespace tp3
