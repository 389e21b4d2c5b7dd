#include "tp3/profiles.hpp"

#include "tp3/json_io.hpp"
#include "tp3/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace tp3 {

UserSplit split_users(const std::vector<std::string>& users, double train_fraction,
                      std::uint64_t seed) {
    if (users.empty()) throw std::invalid_argument("split_users: users must be non-empty");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split_users: train_fraction must be in (0, 1)");
    std::vector<std::string> pool = users;
    std::sort(pool.begin(), pool.end()); // input-order independence
    SeededRng rng(seed);
    rng.shuffle(pool);
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(pool.size())));
    UserSplit out;
    out.train.assign(pool.begin(), pool.begin() + n_train);
    out.test.assign(pool.begin() + n_train, pool.end());
    return out;
}

namespace {

struct Occurrence {
    std::size_t traj = 0;
    std::size_t start = 0;
    std::size_t len = 0;
};

struct PatternInfo {
    int support = 0;
    Occurrence first;
};

Trajectory materialize(const MobilityProfile& user, const Occurrence& occ,
                       const MatchKey& key, std::size_t pattern_idx) {
    const Trajectory& src = user.trajectories[occ.traj];
    Trajectory out;
    out.user_id = user.user_id;
    out.traj_id = user.user_id + "/p" + std::to_string(pattern_idx);
    for (std::size_t i = occ.start; i < occ.start + occ.len; ++i) {
        Report r = src.reports[i];
        if (key.mode == MatchMode::cell || key.mode == MatchMode::cell_and_category) {
            // Represent cell symbols by their cell centers rather than the
            // exact first-occurrence coordinates.
            const auto center = cell_center(r.lat, r.lon, key.grid);
            r.lat = center.first;
            r.lon = center.second;
        }
        out.reports.push_back(std::move(r));
    }
    return out;
}

MinedProfile mine_user(const MobilityProfile& user, const MinerConfig& cfg) {
    MinedProfile out;
    out.user_id = user.user_id;

    std::vector<std::vector<Symbol>> seqs;
    for (const auto& tr : user.trajectories) seqs.push_back(symbolize(tr, cfg.match_key));

    // std::map keys iterate in lexicographic symbol order, which is the
    // final tiebreak after (support desc, length desc).
    std::map<std::vector<Symbol>, PatternInfo> patterns;
    for (std::size_t ti = 0; ti < seqs.size(); ++ti) {
        const auto& seq = seqs[ti];
        std::set<std::vector<Symbol>> seen_here;
        for (std::size_t start = 0; start < seq.size(); ++start) {
            for (std::size_t len = static_cast<std::size_t>(cfg.min_len);
                 start + len <= seq.size(); ++len) {
                std::vector<Symbol> pat(seq.begin() + start, seq.begin() + start + len);
                if (!seen_here.insert(pat).second) continue; // one support unit per trajectory
                auto [it, inserted] = patterns.try_emplace(std::move(pat));
                if (inserted) it->second.first = Occurrence{ti, start, len};
                ++it->second.support;
            }
        }
    }

    if (patterns.empty()) {
        // No pattern of length >= min_len: the longest raw trajectory stands in.
        const auto longest = std::max_element(
            user.trajectories.begin(), user.trajectories.end(),
            [](const Trajectory& a, const Trajectory& b) { return a.size() < b.size(); });
        MinedPattern p;
        p.symbols = symbolize(*longest, cfg.match_key);
        p.support = 1;
        p.reports = *longest;
        out.patterns.push_back(std::move(p));
        out.fallback = true;
        return out;
    }

    std::vector<const std::pair<const std::vector<Symbol>, PatternInfo>*> order;
    order.reserve(patterns.size());
    for (const auto& entry : patterns) order.push_back(&entry);
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        if (a->second.support != b->second.support) return a->second.support > b->second.support;
        return a->first.size() > b->first.size();
    });

    const auto keep = std::min<std::size_t>(order.size(), static_cast<std::size_t>(cfg.top_k));
    for (std::size_t i = 0; i < keep; ++i) {
        MinedPattern p;
        p.symbols = order[i]->first;
        p.support = order[i]->second.support;
        p.reports = materialize(user, order[i]->second.first, cfg.match_key, i);
        out.patterns.push_back(std::move(p));
    }
    return out;
}

} // namespace

MinedProfileSet mine_profiles(const std::vector<MobilityProfile>& trainset,
                              const MinerConfig& cfg) {
    if (trainset.empty()) throw std::invalid_argument("mine_profiles: trainset must be non-empty");
    if (cfg.top_k < 1) throw std::invalid_argument("mine_profiles: top_k must be >= 1");
    if (cfg.min_len < 2) throw std::invalid_argument("mine_profiles: min_len must be >= 2");
    MinedProfileSet out;
    for (const auto& user : trainset) {
        if (user.trajectories.empty())
            throw std::invalid_argument("mine_profiles: profile without trajectories");
        out.users.push_back(mine_user(user, cfg));
    }
    return out;
}

ProfileSet MinedProfileSet::as_profile_set() const {
    ProfileSet out;
    for (const auto& u : users) {
        MobilityProfile g;
        g.user_id = u.user_id;
        for (const auto& p : u.patterns) g.trajectories.push_back(p.reports);
        out.profiles.push_back(std::move(g));
    }
    return out;
}

std::string mined_profiles_to_json(const MinedProfileSet& set) {
    nlohmann::json users = nlohmann::json::array();
    for (const auto& u : set.users) {
        nlohmann::json patterns = nlohmann::json::array();
        for (const auto& p : u.patterns) {
            nlohmann::json reports = nlohmann::json::array();
            for (const auto& r : p.reports.reports) reports.push_back(to_json(r));
            patterns.push_back({{"symbols", p.symbols},
                                {"support", p.support},
                                {"traj_id", p.reports.traj_id},
                                {"reports", reports}});
        }
        users.push_back({{"user_id", u.user_id}, {"fallback", u.fallback}, {"patterns", patterns}});
    }
    return nlohmann::json{{"users", users}}.dump(2);
}

MinedProfileSet mined_profiles_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    MinedProfileSet set;
    for (const auto& uj : j.at("users")) {
        MinedProfile u;
        u.user_id = uj.at("user_id").get<std::string>();
        u.fallback = uj.at("fallback").get<bool>();
        for (const auto& pj : uj.at("patterns")) {
            MinedPattern p;
            p.symbols = pj.at("symbols").get<std::vector<std::string>>();
            p.support = pj.at("support").get<int>();
            p.reports.traj_id = pj.at("traj_id").get<std::string>();
            p.reports.user_id = u.user_id;
            for (const auto& rj : pj.at("reports")) p.reports.reports.push_back(report_from_json(rj));
            u.patterns.push_back(std::move(p));
        }
        set.users.push_back(std::move(u));
    }
    return set;
}

} // namespace tp3
