#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tp3 {

/// One timestamped geolocated data point shared by a user. The payload is an
/// optional semantic tag (venue category, traffic state, ...).
struct Report {
    std::string user_id;
    double lat = 0.0;
    double lon = 0.0;
    std::int64_t timestamp = 0; // seconds since epoch
    std::optional<std::string> payload;
};

inline bool report_valid(const Report& r) {
    return r.lat >= -90.0 && r.lat <= 90.0 && r.lon >= -180.0 && r.lon <= 180.0 &&
           r.timestamp >= 0;
}

/// Ordered report sequence with identity. Reports are non-empty and
/// timestamps are non-decreasing along the list.
struct Trajectory {
    std::string traj_id;
    std::string user_id;
    std::vector<Report> reports;

    std::size_t size() const { return reports.size(); }
};

inline bool trajectory_valid(const Trajectory& tr) {
    if (tr.reports.empty()) return false;
    for (std::size_t i = 0; i < tr.reports.size(); ++i) {
        if (!report_valid(tr.reports[i])) return false;
        if (i > 0 && tr.reports[i].timestamp < tr.reports[i - 1].timestamp) return false;
    }
    return true;
}

/// A user's set of trajectories.
struct MobilityProfile {
    std::string user_id;
    std::vector<Trajectory> trajectories;
};

/// Uniform lat/lon grid; realizes the region cell used by spatial cloaking
/// and by cell-based report matching.
struct GridSpec {
    double cell_size_deg = 0.001;
};

using Cell = std::pair<std::int64_t, std::int64_t>;

/// Grid cell of a position, floor convention on both axes.
inline Cell to_cell(double lat, double lon, const GridSpec& g) {
    if (!(g.cell_size_deg > 0.0)) throw std::invalid_argument("GridSpec: cell_size_deg must be > 0");
    return {static_cast<std::int64_t>(std::floor(lat / g.cell_size_deg)),
            static_cast<std::int64_t>(std::floor(lon / g.cell_size_deg))};
}

inline Cell to_cell(const Report& r, const GridSpec& g) { return to_cell(r.lat, r.lon, g); }

/// Center of the cell containing a position.
inline std::pair<double, double> cell_center(double lat, double lon, const GridSpec& g) {
    const auto c = to_cell(lat, lon, g);
    return {(static_cast<double>(c.first) + 0.5) * g.cell_size_deg,
            (static_cast<double>(c.second) + 0.5) * g.cell_size_deg};
}

enum class MatchMode { cell, category, cell_and_category };

/// Defines when two reports count as "the same symbol" for all
/// sequence-similarity math (the LCS alphabet).
struct MatchKey {
    MatchMode mode = MatchMode::cell;
    GridSpec grid;
};

/// Symbols are opaque strings; distinct encodings per mode keep the
/// alphabets disjoint and give a total lexicographic order for tiebreaks.
using Symbol = std::string;

Symbol match_symbol(const Report& r, const MatchKey& k);

std::vector<Symbol> symbolize(const Trajectory& tr, const MatchKey& k);

/// Category matching when every report carries a payload, else 0.001-degree
/// cells.
MatchKey default_match_key(const Trajectory& tr);

} // namespace tp3
