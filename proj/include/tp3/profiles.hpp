#pragma once

#include "tp3/social.hpp"
#include "tp3/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tp3 {

struct MinerConfig {
    int top_k = 5;
    int min_len = 2;
    MatchKey match_key;
};

/// Deterministic under seed and independent of input order; sizes are
/// round(train_fraction * N) and the remainder.
struct UserSplit {
    std::vector<std::string> train;
    std::vector<std::string> test;
};

UserSplit split_users(const std::vector<std::string>& users, double train_fraction,
                      std::uint64_t seed);

/// A mined contiguous pattern, materialized back into a trajectory so mined
/// profiles are type-compatible with the attack math.
struct MinedPattern {
    std::vector<Symbol> symbols;
    int support = 0;
    Trajectory reports;
};

struct MinedProfile {
    std::string user_id;
    std::vector<MinedPattern> patterns;
    bool fallback = false; // true when the longest raw trajectory stood in
};

struct MinedProfileSet {
    std::vector<MinedProfile> users;

    ProfileSet as_profile_set() const;
};

/// Per user: enumerate all contiguous subsequences of length >= min_len of
/// the user's trajectories (as symbol sequences), count support across the
/// user's trajectories, and keep the top_k by (support desc, length desc,
/// lexicographic symbol order). A user with no qualifying pattern
/// contributes their longest raw trajectory, flagged as fallback.
MinedProfileSet mine_profiles(const std::vector<MobilityProfile>& trainset,
                              const MinerConfig& cfg);

/// JSON round-trip of a mined profile set.
std::string mined_profiles_to_json(const MinedProfileSet& set);
MinedProfileSet mined_profiles_from_json(const std::string& text);

} // namespace tp3
