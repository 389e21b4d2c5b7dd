#pragma once

#include "tp3/types.hpp"

#include <json.hpp>

namespace tp3 {

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j{{"user_id", r.user_id}, {"lat", r.lat}, {"lon", r.lon},
                     {"timestamp", r.timestamp}};
    if (r.payload) j["payload"] = *r.payload;
    return j;
}

inline Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.user_id = j.at("user_id").get<std::string>();
    r.lat = j.at("lat").get<double>();
    r.lon = j.at("lon").get<double>();
    r.timestamp = j.at("timestamp").get<std::int64_t>();
    if (j.contains("payload") && !j["payload"].is_null())
        r.payload = j["payload"].get<std::string>();
    return r;
}

inline nlohmann::json to_json(const Trajectory& tr) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : tr.reports) reports.push_back(to_json(r));
    return {{"traj_id", tr.traj_id}, {"user_id", tr.user_id}, {"reports", reports}};
}

inline Trajectory trajectory_from_json(const nlohmann::json& j) {
    Trajectory tr;
    tr.traj_id = j.at("traj_id").get<std::string>();
    tr.user_id = j.at("user_id").get<std::string>();
    for (const auto& rj : j.at("reports")) tr.reports.push_back(report_from_json(rj));
    return tr;
}

} // namespace tp3
