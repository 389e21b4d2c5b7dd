#include "tp3/privacy.hpp"

#include "tp3/geo.hpp"
#include "tp3/json_io.hpp"
#include "tp3/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tp3 {

std::string to_string(PrivacyMode m) {
    switch (m) {
    case PrivacyMode::loose_dummy: return "dummy_locations";
    case PrivacyMode::loose_pathconf: return "path_confusion";
    case PrivacyMode::moderate_cloak: return "cloak";
    case PrivacyMode::strict_tempcloak: return "temp_cloak";
    }
    throw std::logic_error("to_string: unknown PrivacyMode");
}

PrivacyMode privacy_mode_from_string(const std::string& s) {
    if (s == "dummy_locations") return PrivacyMode::loose_dummy;
    if (s == "path_confusion") return PrivacyMode::loose_pathconf;
    if (s == "cloak") return PrivacyMode::moderate_cloak;
    if (s == "temp_cloak") return PrivacyMode::strict_tempcloak;
    throw std::invalid_argument("unknown privacy op: " + s);
}

SanitizedTrajectory cloak(const Trajectory& tr, const OpParams& p) {
    SanitizedTrajectory out;
    out.op_applied = PrivacyMode::moderate_cloak;
    out.released = tr;
    for (std::size_t i = 0; i < out.released.reports.size(); ++i) {
        auto& r = out.released.reports[i];
        const auto center = cell_center(r.lat, r.lon, p.grid);
        r.lat = center.first;
        r.lon = center.second;
        out.provenance.push_back(i);
    }
    return out;
}

SanitizedTrajectory temp_cloak(const Trajectory& tr, const OpParams& p) {
    if (p.shift_min > p.shift_max)
        throw std::invalid_argument("temp_cloak: shift_min must be <= shift_max");
    SeededRng rng(p.rng_seed);
    std::vector<Report> shifted = tr.reports;
    for (auto& r : shifted) r.timestamp += rng.uniform_int(p.shift_min, p.shift_max);

    std::vector<std::size_t> order(shifted.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return shifted[a].timestamp < shifted[b].timestamp;
    });

    SanitizedTrajectory out;
    out.op_applied = PrivacyMode::strict_tempcloak;
    out.released.traj_id = tr.traj_id;
    out.released.user_id = tr.user_id;
    for (const auto src : order) {
        out.released.reports.push_back(shifted[src]);
        out.provenance.push_back(src);
    }
    return out;
}

SanitizedTrajectory dummy_locations(const Trajectory& tr, const OpParams& p) {
    if (p.dummy_count < 0) throw std::invalid_argument("dummy_locations: dummy_count must be >= 0");
    if (p.dummy_radius_m < 0) throw std::invalid_argument("dummy_locations: dummy_radius_m must be >= 0");
    SeededRng rng(p.rng_seed);
    std::vector<std::pair<Report, std::size_t>> pool; // (report, source index)
    pool.reserve(tr.reports.size() * (static_cast<std::size_t>(p.dummy_count) + 1));
    for (std::size_t i = 0; i < tr.reports.size(); ++i) {
        const Report& src = tr.reports[i];
        pool.emplace_back(src, i);
        for (int d = 0; d < p.dummy_count; ++d) {
            // Draw order per dummy: angle, then distance.
            const double angle = rng.uniform(0.0, 2.0 * kPi);
            const double dist = rng.uniform(0.0, p.dummy_radius_m);
            Report dummy = src;
            dummy.lat = src.lat + (dist * std::sin(angle)) / kMetersPerDegLat;
            dummy.lon = src.lon + (dist * std::cos(angle)) / meters_per_deg_lon(src.lat);
            pool.emplace_back(std::move(dummy), i);
        }
    }
    // Stable sort keeps each original ahead of its own dummies at equal times.
    std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
        return a.first.timestamp < b.first.timestamp;
    });
    SanitizedTrajectory out;
    out.op_applied = PrivacyMode::loose_dummy;
    out.released.traj_id = tr.traj_id;
    out.released.user_id = tr.user_id;
    for (auto& [r, src] : pool) {
        out.released.reports.push_back(std::move(r));
        out.provenance.push_back(src);
    }
    return out;
}

SanitizedTrajectory path_confusion(const Trajectory& tr, const OpParams& p) {
    if (p.window_q < 1) throw std::invalid_argument("path_confusion: window_q must be >= 1");
    SeededRng rng(p.rng_seed);
    const std::size_t n = tr.reports.size();
    const auto q = static_cast<std::size_t>(p.window_q);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t block = 0; block < n; block += q) {
        const std::size_t len = std::min(q, n - block);
        // Fisher-Yates within the block, back to front.
        for (std::size_t i = len; i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(perm[block + i - 1], perm[block + j]);
        }
    }
    SanitizedTrajectory out;
    out.op_applied = PrivacyMode::loose_pathconf;
    out.released.traj_id = tr.traj_id;
    out.released.user_id = tr.user_id;
    for (std::size_t slot = 0; slot < n; ++slot) {
        Report r = tr.reports[perm[slot]];        // location + payload
        r.timestamp = tr.reports[slot].timestamp; // timestamp stays in its slot
        out.released.reports.push_back(std::move(r));
        out.provenance.push_back(perm[slot]);
    }
    return out;
}

SanitizedTrajectory apply_privacy_op(PrivacyMode mode, const Trajectory& tr, const OpParams& p) {
    switch (mode) {
    case PrivacyMode::loose_dummy: return dummy_locations(tr, p);
    case PrivacyMode::loose_pathconf: return path_confusion(tr, p);
    case PrivacyMode::moderate_cloak: return cloak(tr, p);
    case PrivacyMode::strict_tempcloak: return temp_cloak(tr, p);
    }
    throw std::logic_error("apply_privacy_op: unknown mode");
}

SanitizedTrajectory smartmask_baseline(const Trajectory& tr, const std::vector<Report>& pois) {
    if (pois.empty()) throw std::invalid_argument("smartmask_baseline: pois must be non-empty");
    SanitizedTrajectory out;
    out.op_applied = PrivacyMode::moderate_cloak; // baseline reuses the mode slot for serialization only
    out.released = tr;
    for (std::size_t i = 0; i < out.released.reports.size(); ++i) {
        auto& r = out.released.reports[i];
        double best = std::numeric_limits<double>::infinity();
        const Report* nearest = nullptr;
        for (const auto& poi : pois) {
            const double d = haversine_m(r.lat, r.lon, poi.lat, poi.lon);
            if (d < best) { // strict: ties keep the earlier POI
                best = d;
                nearest = &poi;
            }
        }
        r.lat = nearest->lat;
        r.lon = nearest->lon;
        out.provenance.push_back(i);
    }
    return out;
}

UtilityResult utility(const SanitizedTrajectory& s, const Trajectory& truth,
                      double temporal_weight, double floor_m) {
    if (!(floor_m > 0.0)) throw std::invalid_argument("utility: floor_m must be > 0");
    if (s.provenance.size() != s.released.reports.size())
        throw std::invalid_argument("utility: provenance must cover every released report");
    UtilityResult out;
    for (std::size_t i = 0; i < s.released.reports.size(); ++i) {
        const std::size_t src = s.provenance[i];
        if (src >= truth.reports.size())
            throw std::invalid_argument("utility: provenance index out of range");
        const Report& rel = s.released.reports[i];
        const Report& tru = truth.reports[src];
        const double d_geo = haversine_m(rel.lat, rel.lon, tru.lat, tru.lon);
        const double dt = static_cast<double>(std::llabs(rel.timestamp - tru.timestamp));
        const double d = std::max(floor_m, std::sqrt(d_geo * d_geo +
                                                     temporal_weight * dt * temporal_weight * dt));
        out.raw += 1.0 / std::sqrt(d);
    }
    const double n = static_cast<double>(s.released.reports.size());
    out.percent = n > 0 ? 100.0 * out.raw / (n / std::sqrt(floor_m)) : 0.0;
    return out;
}

SanitizeOutcome sanitize_until_safe(const Trajectory& tr, const ProfileSet& B, double delta,
                                    const std::vector<std::pair<PrivacyMode, OpParams>>& ladder,
                                    const StrengthConfig& cfg) {
    if (ladder.empty()) throw std::invalid_argument("sanitize_until_safe: ladder must be non-empty");
    const auto symB = symbolize(B, cfg.match_key);
    SanitizeOutcome best;
    double best_score = std::numeric_limits<double>::infinity();
    for (const auto& [mode, params] : ladder) {
        auto sanitized = apply_privacy_op(mode, tr, params);
        const double sc = score(symbolize(sanitized.released, cfg.match_key), symB,
                                cfg.alpha, cfg.clamp);
        if (sc < delta) return {std::move(sanitized), sc};
        if (sc < best_score) {
            best_score = sc;
            best.sanitized = std::move(sanitized);
            best.achieved_score = sc;
        }
    }
    best.sanitized.unsafe_flag = true;
    return best;
}

std::string sanitized_to_json(const SanitizedTrajectory& s) {
    nlohmann::json released = nlohmann::json::array();
    for (const auto& r : s.released.reports) released.push_back(to_json(r));
    const nlohmann::json j{{"op", to_string(s.op_applied)},
                           {"traj_id", s.released.traj_id},
                           {"user_id", s.released.user_id},
                           {"released", released},
                           {"provenance", s.provenance},
                           {"unsafe_flag", s.unsafe_flag}};
    return j.dump();
}

SanitizedTrajectory sanitized_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    SanitizedTrajectory s;
    s.op_applied = privacy_mode_from_string(j.at("op").get<std::string>());
    s.released.traj_id = j.at("traj_id").get<std::string>();
    s.released.user_id = j.at("user_id").get<std::string>();
    for (const auto& rj : j.at("released")) s.released.reports.push_back(report_from_json(rj));
    s.provenance = j.at("provenance").get<std::vector<std::size_t>>();
    s.unsafe_flag = j.at("unsafe_flag").get<bool>();
    return s;
}

} // namespace tp3
