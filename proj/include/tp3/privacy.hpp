#pragma once

#include "tp3/social.hpp"
#include "tp3/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tp3 {

enum class PrivacyMode { loose_dummy, loose_pathconf, moderate_cloak, strict_tempcloak };

std::string to_string(PrivacyMode m);
PrivacyMode privacy_mode_from_string(const std::string& s);

struct OpParams {
    GridSpec grid{0.01};            // cloaking
    std::int64_t shift_min = 0;     // temp cloaking, seconds
    std::int64_t shift_max = 7200;  // temp cloaking, seconds
    int dummy_count = 2;            // dummies per report
    double dummy_radius_m = 200.0;  // dummy locations
    int window_q = 3;               // path confusion block size
    std::uint64_t rng_seed = 0;
};

/// A released trajectory plus, for each released report, the index of the
/// true report it derives from (dummies map to the report they were
/// generated from).
struct SanitizedTrajectory {
    Trajectory released;
    std::vector<std::size_t> provenance;
    PrivacyMode op_applied = PrivacyMode::moderate_cloak;
    bool unsafe_flag = false;
};

/// Replace each report's position with the center of its grid cell.
SanitizedTrajectory cloak(const Trajectory& tr, const OpParams& p);

/// Shift each timestamp by an independent uniform draw from
/// [shift_min, shift_max], then re-sort to restore the timestamp invariant.
SanitizedTrajectory temp_cloak(const Trajectory& tr, const OpParams& p);

/// For each report emit dummy_count extra reports placed uniformly within
/// dummy_radius_m (uniform angle, uniform distance), same timestamp and
/// payload, interleaved with the originals in timestamp order.
SanitizedTrajectory dummy_locations(const Trajectory& tr, const OpParams& p);

/// Permute report locations/payloads within consecutive blocks of size
/// <= window_q, keeping the original timestamp slots.
SanitizedTrajectory path_confusion(const Trajectory& tr, const OpParams& p);

SanitizedTrajectory apply_privacy_op(PrivacyMode mode, const Trajectory& tr, const OpParams& p);

/// Baseline: snap each report to the nearest point of interest (haversine,
/// ties by POI list order); timestamps unchanged.
SanitizedTrajectory smartmask_baseline(const Trajectory& tr, const std::vector<Report>& pois);

struct UtilityResult {
    double raw = 0.0;
    double percent = 0.0; // in [0, 100]
};

/// Inverse-root-distance utility over the provenance pairing.
/// d = sqrt(d_geo^2 + (temporal_weight * dt)^2) floored at floor_m.
UtilityResult utility(const SanitizedTrajectory& s, const Trajectory& truth,
                      double temporal_weight = 0.0, double floor_m = 1.0);

/// Applies ladder entries in order to the original trajectory (never
/// stacked) and returns the first whose score drops below delta; if none
/// does, the minimal-score entry is returned flagged unsafe.
struct SanitizeOutcome {
    SanitizedTrajectory sanitized;
    double achieved_score = 0.0;
};

SanitizeOutcome sanitize_until_safe(const Trajectory& tr, const ProfileSet& B, double delta,
                                    const std::vector<std::pair<PrivacyMode, OpParams>>& ladder,
                                    const StrengthConfig& cfg);

/// JSON form: {op, released, provenance, unsafe_flag}.
std::string sanitized_to_json(const SanitizedTrajectory& s);
SanitizedTrajectory sanitized_from_json(const std::string& text);

} // namespace tp3
