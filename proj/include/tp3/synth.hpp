#pragma once

#include "tp3/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tp3 {

/// Seeded check-in corpus generator shaped like location-based-service
/// data: users belong to groups, every group has a fixed venue pool and a
/// short routine sequence that reappears in each session, the rest of a
/// session visits per-user venues.
struct SynthSpec {
    int users = 220;
    int groups = 5;
    double wanderer_fraction = 0.25; // users that never follow their group routine
    int sessions_per_user = 6;
    int session_len = 14;     // max reports per session
    int session_len_min = 8;  // per-session length is drawn from [min, max]
    int routine_len = 4;
    int venues_per_group = 12;
    double base_lat = 40.50;
    double base_lon = -74.20;
    double group_extent_deg = 0.10; // side of each group's venue area
    std::int64_t start_ts = 1334102400; // 2012-04-11 00:00:00 UTC
    std::int64_t session_gap_s = 86400; // >> the 8-hour segmentation window
    std::int64_t intra_gap_min_s = 300;
    std::int64_t intra_gap_max_s = 900;
    std::int64_t total_reports = 0; // when > 0, overrides sessions_per_user per user
    std::uint64_t seed = 1;
};

struct SynthCorpus {
    std::vector<Report> reports;
    std::vector<Report> pois; // the group venues, usable as a POI list
};

SynthCorpus generate_corpus(const SynthSpec& spec);

/// Renders reports in the 8-column tab-separated check-in format.
std::string to_foursquare_tsv(const std::vector<Report>& reports);

} // namespace tp3
