#include "tp3/coreset.hpp"

#include "tp3/geo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tp3 {

double heading_tangent(const Report& prev, const Report& cur) {
    const double dlat = cur.lat - prev.lat;
    const double dlon = cur.lon - prev.lon;
    if (dlon == 0.0) {
        if (dlat == 0.0) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(), dlat);
    }
    return dlat / dlon;
}

double tangent_rel_change(double tan_in, double tan_out) {
    if (tan_in == tan_out) return 0.0; // covers equal infinities of the same sign
    if (std::isinf(tan_in) || std::isinf(tan_out))
        return std::numeric_limits<double>::infinity();
    const double num = std::abs(tan_out - tan_in);
    if (num == 0.0) return 0.0;
    if (tan_in == 0.0) return std::numeric_limits<double>::infinity();
    return num / std::abs(tan_in);
}

Trajectory compress(const Trajectory& tr, const CoresetConfig& cfg) {
    if (!(cfg.theta >= 0.0)) throw std::invalid_argument("compress: theta must be >= 0");
    if (tr.reports.size() <= 2) return tr;
    Trajectory out;
    out.traj_id = tr.traj_id;
    out.user_id = tr.user_id;
    out.reports.push_back(tr.reports.front());
    for (std::size_t i = 1; i + 1 < tr.reports.size(); ++i) {
        const double tan_in = heading_tangent(tr.reports[i - 1], tr.reports[i]);
        const double tan_out = heading_tangent(tr.reports[i], tr.reports[i + 1]);
        if (tangent_rel_change(tan_in, tan_out) >= cfg.theta) out.reports.push_back(tr.reports[i]);
    }
    out.reports.push_back(tr.reports.back());
    return out;
}

namespace {

double path_length_m(const Trajectory& tr) {
    double total = 0.0;
    for (std::size_t i = 1; i < tr.reports.size(); ++i)
        total += haversine_m(tr.reports[i - 1].lat, tr.reports[i - 1].lon,
                             tr.reports[i].lat, tr.reports[i].lon);
    return total;
}

double eval_query(const Trajectory& tr, const Trajectory& original, CoresetQuery q,
                  const StrengthConfig& cfg) {
    switch (q) {
    case CoresetQuery::path_length:
        return path_length_m(tr);
    case CoresetQuery::report_count:
        return static_cast<double>(tr.size());
    case CoresetQuery::lcs_self_score:
        return score(tr, ProfileSet{{lift(original)}}, cfg);
    }
    throw std::logic_error("eval_query: unknown query");
}

} // namespace

double approximation_error(const Trajectory& original, const Trajectory& coreset,
                           CoresetQuery q, const StrengthConfig& cfg) {
    const double q_orig = eval_query(original, original, q, cfg);
    if (q_orig == 0.0) throw std::invalid_argument("approximation_error: Q(original) is 0");
    const double q_core = eval_query(coreset, original, q, cfg);
    return std::abs(q_core - q_orig) / q_orig;
}

double approximation_error(const Trajectory& original, const Trajectory& coreset,
                           CoresetQuery q) {
    StrengthConfig cfg;
    cfg.alpha = 1.0;
    cfg.clamp = true;
    cfg.match_key = default_match_key(original);
    return approximation_error(original, coreset, q, cfg);
}

} // namespace tp3
