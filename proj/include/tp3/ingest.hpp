#pragma once

#include "tp3/types.hpp"

#include <istream>
#include <string>
#include <vector>

namespace tp3 {

enum class CheckinFormat {
    foursquare_tsv, // 8 tab-separated columns, no header
    csv             // same columns, comma-separated, with header
};

/// Columns, in order: user_id, venue_id, category_id, category_name,
/// lat, lon, tz_offset_minutes, utc_timestamp.
struct ParseError {
    std::size_t line_no = 0; // 1-based
    std::string message;
};

/// Bad rows are collected, never fatal.
struct ParseResult {
    std::vector<Report> reports;
    std::vector<ParseError> errors;
};

ParseResult parse_checkins(std::istream& in, CheckinFormat format);

/// Sorts one user's reports by timestamp and splits them into maximal runs
/// whose consecutive gaps are <= window_s. Each run becomes a Trajectory
/// with a fresh id; singleton runs are allowed.
std::vector<Trajectory> segment_trajectories(const std::vector<Report>& reports,
                                             std::int64_t window_s);

} // namespace tp3
