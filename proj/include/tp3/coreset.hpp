#pragma once

#include "tp3/social.hpp"
#include "tp3/types.hpp"

namespace tp3 {

struct CoresetConfig {
    double theta = 0.0005;
};

/// Slope (delta lat / delta lon) of the segment from prev to cur.
/// Returns signed infinity when delta lon is 0 and delta lat is not,
/// and 0 when both deltas are 0.
double heading_tangent(const Report& prev, const Report& cur);

/// Relative change between two consecutive segment tangents.
/// Conventions: equal tangents (including equal infinities) -> 0;
/// zero base with a nonzero difference -> infinity; any infinity
/// otherwise -> infinity.
double tangent_rel_change(double tan_in, double tan_out);

/// Tangent-threshold compression. Endpoints are always retained; an
/// interior report is retained iff the relative tangent change between its
/// incoming and outgoing segment is >= theta. Output is a subsequence of
/// the input with ids preserved; length <= 2 inputs come back unchanged.
Trajectory compress(const Trajectory& tr, const CoresetConfig& cfg);

enum class CoresetQuery { path_length, report_count, lcs_self_score };

/// |Q(coreset) - Q(original)| / Q(original) for the chosen query.
/// path_length is the summed haversine distance; lcs_self_score scores the
/// coreset against a one-profile set holding the original trajectory.
double approximation_error(const Trajectory& original, const Trajectory& coreset,
                           CoresetQuery q);
double approximation_error(const Trajectory& original, const Trajectory& coreset,
                           CoresetQuery q, const StrengthConfig& cfg);

} // namespace tp3
