#include "tp3/pipeline.hpp"

#include "tp3/json_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tp3 {

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

MatchKey match_key_from_json(const nlohmann::json& j, MatchKey base) {
    if (j.contains("mode")) {
        const std::string m = j["mode"].get<std::string>();
        if (m == "cell") base.mode = MatchMode::cell;
        else if (m == "category") base.mode = MatchMode::category;
        else if (m == "cell_and_category") base.mode = MatchMode::cell_and_category;
        else throw std::invalid_argument("config: unknown match mode " + m);
    }
    if (j.contains("cell_size_deg")) base.grid.cell_size_deg = j["cell_size_deg"].get<double>();
    return base;
}

OpParams op_params_from_json(const nlohmann::json& j, OpParams base) {
    if (j.contains("cell_size_deg")) base.grid.cell_size_deg = j["cell_size_deg"].get<double>();
    if (j.contains("shift_min")) base.shift_min = j["shift_min"].get<std::int64_t>();
    if (j.contains("shift_max")) base.shift_max = j["shift_max"].get<std::int64_t>();
    if (j.contains("dummy_count")) base.dummy_count = j["dummy_count"].get<int>();
    if (j.contains("dummy_radius_m")) base.dummy_radius_m = j["dummy_radius_m"].get<double>();
    if (j.contains("window_q")) base.window_q = j["window_q"].get<int>();
    if (j.contains("rng_seed")) base.rng_seed = j["rng_seed"].get<std::uint64_t>();
    return base;
}

// Interned symbol sequences keep the LCS inner loop on integer compares.
struct Interner {
    std::unordered_map<Symbol, std::int32_t> ids;

    std::vector<std::int32_t> intern(const std::vector<Symbol>& seq) {
        std::vector<std::int32_t> out;
        out.reserve(seq.size());
        for (const auto& s : seq) {
            auto [it, fresh] = ids.emplace(s, static_cast<std::int32_t>(ids.size()));
            (void)fresh;
            out.push_back(it->second);
        }
        return out;
    }
};

using IntSeq = std::vector<std::int32_t>;

std::vector<std::pair<std::string, const Trajectory*>>
test_trajectories(const TrajectoryStore& store, const std::vector<std::string>& test_users) {
    std::vector<std::string> users = test_users;
    std::sort(users.begin(), users.end());
    std::vector<std::pair<std::string, const Trajectory*>> out;
    for (const auto& u : users) {
        const auto it = store.find(u);
        if (it == store.end()) continue;
        for (const auto& tr : it->second) out.emplace_back(u, &tr);
    }
    return out;
}

SanitizedTrajectory identity_sanitized(const Trajectory& tr) {
    SanitizedTrajectory s;
    s.released = tr;
    s.provenance.resize(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) s.provenance[i] = i;
    s.unsafe_flag = false;
    return s;
}

} // namespace

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig cfg;
    // The matching alphabet is coarse cells; cloaking snaps to a finer grid
    // so the cloak op perturbs cell membership only at boundaries.
    cfg.strength.alpha = 0.25;
    cfg.strength.clamp = true;
    cfg.strength.match_key.mode = MatchMode::cell;
    cfg.strength.match_key.grid.cell_size_deg = 0.01;
    cfg.miner.top_k = 5;
    cfg.miner.min_len = 2;
    cfg.miner.match_key = cfg.strength.match_key;
    cfg.op_params.grid.cell_size_deg = 0.003;
    cfg.op_params.rng_seed = 1234;
    cfg.workload.total_requests = 20000;
    cfg.workload.service.base_s = 0.004;
    cfg.workload.service.per_report_s = 0.0002;
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentConfig cfg = defaults();

    if (j.contains("dataset_path")) cfg.dataset_path = j["dataset_path"].get<std::string>();
    if (j.contains("dataset_format")) {
        const std::string f = j["dataset_format"].get<std::string>();
        if (f == "foursquare_tsv") cfg.dataset_format = CheckinFormat::foursquare_tsv;
        else if (f == "csv") cfg.dataset_format = CheckinFormat::csv;
        else throw std::invalid_argument("config: unknown dataset_format " + f);
    }
    if (j.contains("synth")) {
        const auto& s = j["synth"];
        if (s.contains("users")) cfg.synth.users = s["users"].get<int>();
        if (s.contains("groups")) cfg.synth.groups = s["groups"].get<int>();
        if (s.contains("wanderer_fraction")) cfg.synth.wanderer_fraction = s["wanderer_fraction"].get<double>();
        if (s.contains("sessions_per_user")) cfg.synth.sessions_per_user = s["sessions_per_user"].get<int>();
        if (s.contains("session_len")) cfg.synth.session_len = s["session_len"].get<int>();
        if (s.contains("session_len_min")) cfg.synth.session_len_min = s["session_len_min"].get<int>();
        if (s.contains("routine_len")) cfg.synth.routine_len = s["routine_len"].get<int>();
        if (s.contains("venues_per_group")) cfg.synth.venues_per_group = s["venues_per_group"].get<int>();
        if (s.contains("total_reports")) cfg.synth.total_reports = s["total_reports"].get<std::int64_t>();
        if (s.contains("seed")) cfg.synth.seed = s["seed"].get<std::uint64_t>();
    }
    if (j.contains("window_s")) cfg.window_s = j["window_s"].get<std::int64_t>();
    if (j.contains("window_sweep_s")) cfg.window_sweep_s = j["window_sweep_s"].get<std::vector<std::int64_t>>();
    if (j.contains("train_fraction")) cfg.train_fraction = j["train_fraction"].get<double>();
    if (j.contains("split_seed")) cfg.split_seed = j["split_seed"].get<std::uint64_t>();
    if (j.contains("miner")) {
        const auto& m = j["miner"];
        if (m.contains("top_k")) cfg.miner.top_k = m["top_k"].get<int>();
        if (m.contains("min_len")) cfg.miner.min_len = m["min_len"].get<int>();
        if (m.contains("match_key")) cfg.miner.match_key = match_key_from_json(m["match_key"], cfg.miner.match_key);
    }
    if (j.contains("strength")) {
        const auto& s = j["strength"];
        if (s.contains("alpha")) cfg.strength.alpha = s["alpha"].get<double>();
        if (s.contains("clamp")) cfg.strength.clamp = s["clamp"].get<bool>();
        if (s.contains("match_key")) cfg.strength.match_key = match_key_from_json(s["match_key"], cfg.strength.match_key);
    }
    if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
    if (j.contains("delta_sweep")) cfg.delta_sweep = j["delta_sweep"].get<std::vector<double>>();
    if (j.contains("ladder")) {
        cfg.ladder.clear();
        for (const auto& name : j["ladder"])
            cfg.ladder.push_back(privacy_mode_from_string(name.get<std::string>()));
    }
    if (j.contains("op_params")) cfg.op_params = op_params_from_json(j["op_params"], cfg.op_params);
    if (j.contains("utility_temporal_weight")) cfg.utility_temporal_weight = j["utility_temporal_weight"].get<double>();
    if (j.contains("utility_floor_m")) cfg.utility_floor_m = j["utility_floor_m"].get<double>();
    if (j.contains("knowledge_fractions")) cfg.knowledge_fractions = j["knowledge_fractions"].get<std::vector<double>>();
    if (j.contains("coreset") && j["coreset"].contains("theta"))
        cfg.coreset.theta = j["coreset"]["theta"].get<double>();
    if (j.contains("workload")) {
        const auto& w = j["workload"];
        if (w.contains("total_requests")) cfg.workload.total_requests = w["total_requests"].get<int>();
        if (w.contains("op")) cfg.workload.op = privacy_mode_from_string(w["op"].get<std::string>());
        if (w.contains("timeout_s")) cfg.workload.timeout_s = w["timeout_s"].get<double>();
        if (w.contains("queue_capacity")) cfg.workload.queue_capacity = w["queue_capacity"].get<int>();
        if (w.contains("base_s")) cfg.workload.service.base_s = w["base_s"].get<double>();
        if (w.contains("per_report_s")) cfg.workload.service.per_report_s = w["per_report_s"].get<double>();
        if (w.contains("client_count")) cfg.workload.client_count = w["client_count"].get<int>();
        if (w.contains("retry_backoff_s")) cfg.workload.retry_backoff_s = w["retry_backoff_s"].get<double>();
        if (w.contains("seed")) cfg.workload.seed = w["seed"].get<std::uint64_t>();
    }
    if (j.contains("allocations_mb")) cfg.allocations_mb = j["allocations_mb"].get<std::vector<int>>();
    if (j.contains("cost")) {
        const auto& c = j["cost"];
        if (c.contains("rate_cr")) cfg.cost.rate_cr = c["rate_cr"].get<double>();
        if (c.contains("budget_cap")) cfg.cost.budget_cap = c["budget_cap"].get<double>();
    }
    if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
    return cfg;
}

IngestResult cmd_ingest(const ExperimentConfig& cfg) {
    IngestResult out;
    std::vector<Report> reports;
    if (cfg.dataset_path.empty()) {
        SynthCorpus corpus = generate_corpus(cfg.synth);
        reports = std::move(corpus.reports);
        out.pois = std::move(corpus.pois);
    } else {
        std::ifstream in(cfg.dataset_path);
        if (!in) throw std::runtime_error("cannot open dataset: " + cfg.dataset_path);
        ParseResult parsed = parse_checkins(in, cfg.dataset_format);
        reports = std::move(parsed.reports);
        // File datasets carry no venue list; distinct report locations
        // stand in as the POI set for baselines.
        std::unordered_map<std::string, bool> seen;
        for (const auto& r : reports) {
            char key[64];
            std::snprintf(key, sizeof(key), "%.6f|%.6f", r.lat, r.lon);
            if (seen.emplace(key, true).second) out.pois.push_back(r);
        }
    }

    std::map<std::string, std::vector<Report>> by_user;
    for (auto& r : reports) by_user[r.user_id].push_back(std::move(r));

    for (const auto& [user, rs] : by_user)
        out.store[user] = segment_trajectories(rs, cfg.window_s);

    // Sensitivity of the segmentation to the session window.
    std::string csv = "window_hours,trajectories,mean_length\n";
    for (const auto w : cfg.window_sweep_s) {
        std::size_t count = 0, total_reports = 0;
        for (const auto& [user, rs] : by_user) {
            const auto trajs = segment_trajectories(rs, w);
            count += trajs.size();
            for (const auto& t : trajs) total_reports += t.size();
        }
        csv += std::to_string(w / 3600) + "," + std::to_string(count) + "," +
               fmt6(count ? static_cast<double>(total_reports) / static_cast<double>(count) : 0.0) +
               "\n";
    }
    out.windows_csv = std::move(csv);

    nlohmann::json users = nlohmann::json::array();
    for (const auto& [user, trajs] : out.store) {
        nlohmann::json tj = nlohmann::json::array();
        for (const auto& t : trajs) tj.push_back(to_json(t));
        users.push_back({{"user_id", user}, {"trajectories", tj}});
    }
    out.store_json = nlohmann::json{{"users", users}}.dump(2);
    return out;
}

TrajectoryStore store_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    TrajectoryStore store;
    for (const auto& uj : j.at("users")) {
        std::vector<Trajectory> trajs;
        for (const auto& tj : uj.at("trajectories")) trajs.push_back(trajectory_from_json(tj));
        store[uj.at("user_id").get<std::string>()] = std::move(trajs);
    }
    return store;
}

AttackResult cmd_attack(const ExperimentConfig& cfg, const TrajectoryStore& store) {
    AttackResult out;
    std::vector<std::string> users;
    users.reserve(store.size());
    for (const auto& [u, trajs] : store)
        if (!trajs.empty()) users.push_back(u);
    if (users.empty()) throw std::invalid_argument("cmd_attack: empty trajectory store");

    out.split = split_users(users, cfg.train_fraction, cfg.split_seed);

    std::vector<MobilityProfile> trainset;
    trainset.reserve(out.split.train.size());
    for (const auto& u : out.split.train) trainset.push_back({u, store.at(u)});
    out.mined = mine_profiles(trainset, cfg.miner);
    out.profile_set = out.mined.as_profile_set();

    const auto symB = symbolize(out.profile_set, cfg.strength.match_key);

    std::string scores = "user_id,traj_id,length,score\n";
    const auto tests = test_trajectories(store, out.split.test);
    for (const auto& [user, tr] : tests) {
        const double s = score(symbolize(*tr, cfg.strength.match_key), symB, cfg.strength.alpha,
                               cfg.strength.clamp);
        scores += user + "," + tr->traj_id + "," + std::to_string(tr->size()) + "," + fmt6(s) + "\n";
    }
    out.scores_csv = std::move(scores);

    // Coverage counts users, not trajectories: each test user is represented
    // by their longest trajectory (first on ties).
    std::vector<double> user_scores;
    {
        std::vector<std::string> sorted_test = out.split.test;
        std::sort(sorted_test.begin(), sorted_test.end());
        for (const auto& u : sorted_test) {
            const auto& trajs = store.at(u);
            const Trajectory* rep = &trajs.front();
            for (const auto& t : trajs)
                if (t.size() > rep->size()) rep = &t;
            user_scores.push_back(score(symbolize(*rep, cfg.strength.match_key), symB,
                                        cfg.strength.alpha, cfg.strength.clamp));
        }
    }
    std::string coverage = "delta,coverage\n";
    for (const double d : cfg.delta_sweep) {
        std::size_t captured = 0;
        for (const double s : user_scores)
            if (s >= d) ++captured;
        const double cr = static_cast<double>(captured) / static_cast<double>(user_scores.size());
        out.coverage_by_delta.push_back(cr);
        coverage += fmt6(d) + "," + fmt6(cr) + "\n";
    }
    out.coverage_csv = std::move(coverage);
    return out;
}

DefendResult cmd_defend(const ExperimentConfig& cfg, const IngestResult& ingest,
                        const AttackResult& attack) {
    DefendResult out;
    const auto tests = test_trajectories(ingest.store, attack.split.test);
    if (tests.empty()) throw std::invalid_argument("cmd_defend: no test trajectories");

    Interner interner;
    std::vector<std::vector<IntSeq>> profs; // one pattern set per analyst profile
    for (const auto& g : attack.profile_set.profiles) {
        std::vector<IntSeq> seqs;
        for (const auto& tr : g.trajectories)
            seqs.push_back(interner.intern(symbolize(tr, cfg.strength.match_key)));
        profs.push_back(std::move(seqs));
    }
    if (profs.empty()) throw std::invalid_argument("cmd_defend: empty profile set");

    std::vector<std::string> variants{"none"};
    for (const auto m : cfg.ladder) variants.push_back(to_string(m));
    variants.push_back("smartmask");

    // strengths[v][t][p]: strength of test trajectory t's released form under
    // variant v against analyst profile p. Prefix means over p realize the
    // partial-knowledge sweep without re-running any LCS.
    std::vector<std::vector<std::vector<double>>> strengths(
        variants.size(), std::vector<std::vector<double>>(tests.size()));
    std::vector<std::vector<double>> utilities(variants.size(),
                                               std::vector<double>(tests.size(), 0.0));
    std::vector<std::vector<double>> reductions = utilities;
    std::vector<std::size_t> lengths(tests.size(), 0);

    for (std::size_t t = 0; t < tests.size(); ++t) {
        const Trajectory& tr = *tests[t].second;
        lengths[t] = tr.size();
        for (std::size_t v = 0; v < variants.size(); ++v) {
            SanitizedTrajectory s;
            if (variants[v] == "none") {
                s = identity_sanitized(tr);
            } else if (variants[v] == "smartmask") {
                s = smartmask_baseline(tr, ingest.pois);
            } else {
                OpParams p = cfg.op_params;
                p.rng_seed = cfg.op_params.rng_seed + 0x9E3779B9ull * (t + 1) + v;
                s = apply_privacy_op(privacy_mode_from_string(variants[v]), tr, p);
            }
            const IntSeq seq = interner.intern(symbolize(s.released, cfg.strength.match_key));
            const std::vector<IntSeq> lifted{seq};
            auto& row = strengths[v][t];
            row.reserve(profs.size());
            for (const auto& prof : profs)
                row.push_back(social_strength_t(lifted, prof, cfg.strength.alpha,
                                                cfg.strength.clamp));
            utilities[v][t] =
                utility(s, tr, cfg.utility_temporal_weight, cfg.utility_floor_m).percent;
            const Trajectory compact = compress(s.released, cfg.coreset);
            reductions[v][t] = 100.0 * (1.0 - static_cast<double>(compact.size()) /
                                                  static_cast<double>(s.released.size()));
        }
    }

    const auto full_score = [&](std::size_t v, std::size_t t) {
        double sum = 0.0;
        for (const double s : strengths[v][t]) sum += s;
        return sum / static_cast<double>(profs.size());
    };

    const std::vector<std::size_t> kappas{1, 3, 5, 8};
    std::string mean_scores = "op,min_length,n,mean_score\n";
    for (std::size_t v = 0; v < variants.size(); ++v) {
        for (const std::size_t kappa : kappas) {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t t = 0; t < tests.size(); ++t) {
                if (lengths[t] < kappa) continue;
                sum += full_score(v, t);
                ++n;
            }
            mean_scores += variants[v] + "," + std::to_string(kappa) + "," + std::to_string(n) +
                           "," + fmt6(n ? sum / static_cast<double>(n) : 0.0) + "\n";
        }
        double score_sum = 0.0, util_sum = 0.0;
        for (std::size_t t = 0; t < tests.size(); ++t) {
            score_sum += full_score(v, t);
            util_sum += utilities[v][t];
        }
        out.mean_score_by_op[variants[v]] = score_sum / static_cast<double>(tests.size());
        out.mean_utility_by_op[variants[v]] = util_sum / static_cast<double>(tests.size());
    }
    out.mean_scores_csv = std::move(mean_scores);

    std::string util_csv = "op,mean_utility_percent\n";
    std::string coreset_csv = "op,mean_reduction_percent\n";
    for (std::size_t v = 0; v < variants.size(); ++v) {
        double red_sum = 0.0;
        for (std::size_t t = 0; t < tests.size(); ++t) red_sum += reductions[v][t];
        util_csv += variants[v] + "," + fmt6(out.mean_utility_by_op[variants[v]]) + "\n";
        coreset_csv +=
            variants[v] + "," + fmt6(red_sum / static_cast<double>(tests.size())) + "\n";
    }
    out.utility_csv = std::move(util_csv);
    out.coreset_csv = std::move(coreset_csv);

    std::string captured_csv = "knowledge_fraction,op,captured_percent\n";
    for (const double f : cfg.knowledge_fractions) {
        std::size_t bn = static_cast<std::size_t>(
            std::ceil(f * static_cast<double>(profs.size()) - 1e-9));
        bn = std::min(std::max<std::size_t>(bn, 1), profs.size());
        for (std::size_t v = 0; v < variants.size(); ++v) {
            std::size_t captured = 0;
            for (std::size_t t = 0; t < tests.size(); ++t) {
                double sum = 0.0;
                for (std::size_t p = 0; p < bn; ++p) sum += strengths[v][t][p];
                if (sum / static_cast<double>(bn) >= cfg.delta) ++captured;
            }
            captured_csv += fmt6(f) + "," + variants[v] + "," +
                            fmt6(100.0 * static_cast<double>(captured) /
                                 static_cast<double>(tests.size())) +
                            "\n";
        }
    }
    out.captured_csv = std::move(captured_csv);
    return out;
}

BenchResult cmd_bench(const ExperimentConfig& cfg, const TrajectoryStore& store,
                      const AttackResult& attack) {
    BenchResult out;

    // Request payload sizes per scenario: a single report, one trajectory,
    // or a user's full trajectory set.
    std::vector<int> per_traj, per_user;
    {
        std::vector<std::string> users = attack.split.test;
        std::sort(users.begin(), users.end());
        for (const auto& u : users) {
            const auto it = store.find(u);
            if (it == store.end()) continue;
            int total = 0;
            for (const auto& t : it->second) {
                per_traj.push_back(static_cast<int>(t.size()));
                total += static_cast<int>(t.size());
            }
            per_user.push_back(total);
        }
    }
    if (per_traj.empty()) throw std::invalid_argument("cmd_bench: no test payloads");

    std::string csv = "scenario,op,memory_mb,avgT,rps,lambda,SB\n";
    for (const Scenario sc : {Scenario::OvO, Scenario::OvM, Scenario::MvM}) {
        const std::vector<int> single(per_traj.size(), 1);
        const std::vector<int>& corpus =
            sc == Scenario::OvO ? single : (sc == Scenario::OvM ? per_traj : per_user);
        for (const int mb : cfg.allocations_mb) {
            WorkloadSpec w = cfg.workload;
            w.scenario = sc;
            const AllocationProfile alloc{mb, 512};
            SimMetrics m = run_workload(w, alloc, corpus);
            m.spending_budget = spending_budget(m, alloc, cfg.cost);
            csv += to_string(sc) + "," + to_string(w.op) + "," + std::to_string(mb) + "," +
                   fmt6(m.avg_response_time) + "," + fmt6(m.throughput) + "," +
                   fmt6(m.success_rate) + "," + fmt6(m.spending_budget) + "\n";
            if (sc == Scenario::MvM)
                out.points.push_back(
                    {mb, m.success_rate, headroom(m.spending_budget, cfg.cost), m});
        }
    }
    out.metrics_csv = std::move(csv);

    const auto frontier = greedy_frontier(out.points);
    try {
        out.chosen = select_allocation(frontier, cfg.cost, cfg.gamma);
    } catch (const InfeasibleBudget&) {
        out.infeasible = true;
    }
    out.frontier_json = frontier_to_json(out.points, frontier,
                                         out.chosen ? &*out.chosen : nullptr, cfg.gamma);
    return out;
}

} // namespace tp3
