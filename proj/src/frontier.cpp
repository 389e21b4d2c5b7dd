#include "tp3/frontier.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace tp3 {

namespace {

double sb(const FrontierPoint& p) { return p.metrics.spending_budget; }

void sort_by_memory(std::vector<FrontierPoint>& v) {
    std::stable_sort(v.begin(), v.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        return a.memory_mb < b.memory_mb;
    });
}

} // namespace

bool dominates(const FrontierPoint& a, const FrontierPoint& b) {
    const bool weak = sb(a) <= sb(b) && a.ep >= b.ep;
    const bool strict = sb(a) < sb(b) || a.ep > b.ep;
    return weak && strict;
}

std::vector<FrontierPoint> exhaustive_frontier(const std::vector<FrontierPoint>& points) {
    if (points.empty()) throw std::invalid_argument("exhaustive_frontier: points must be non-empty");
    std::vector<FrontierPoint> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j)
            if (j != i && dominates(points[j], points[i])) dominated = true;
        if (!dominated) out.push_back(points[i]);
    }
    sort_by_memory(out);
    return out;
}

std::vector<FrontierPoint> greedy_frontier(const std::vector<FrontierPoint>& points) {
    if (points.empty()) throw std::invalid_argument("greedy_frontier: points must be non-empty");
    std::vector<FrontierPoint> sorted = points;
    std::stable_sort(sorted.begin(), sorted.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.ep != b.ep) return a.ep > b.ep;
        if (sb(a) != sb(b)) return sb(a) < sb(b);
        return a.memory_mb < b.memory_mb;
    });
    // Sweep: earlier points have ep >= current, so the only possible
    // dominators are those at the running minimum budget.
    std::vector<FrontierPoint> out;
    double min_sb = std::numeric_limits<double>::infinity();
    double ep_at_min = 0.0;
    for (const auto& p : sorted) {
        if (sb(p) < min_sb) {
            min_sb = sb(p);
            ep_at_min = p.ep;
            out.push_back(p);
        } else if (sb(p) == min_sb && p.ep == ep_at_min) {
            out.push_back(p); // mutually non-dominated tie
        }
    }
    sort_by_memory(out);
    return out;
}

FrontierPoint select_allocation(const std::vector<FrontierPoint>& frontier, const CostConfig& c,
                                double gamma) {
    (void)c; // headroom was computed against this config upstream
    if (frontier.empty()) throw std::invalid_argument("select_allocation: frontier must be non-empty");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("select_allocation: gamma must be in [0, 1)");
    std::vector<FrontierPoint> feasible;
    for (const auto& p : frontier)
        if (p.headroom > 0.0) feasible.push_back(p);
    if (feasible.empty()) throw InfeasibleBudget("no allocation satisfies W(m) > 0");
    double max_ep = 0.0;
    for (const auto& p : feasible) max_ep = std::max(max_ep, p.ep);
    const FrontierPoint* best = nullptr;
    for (const auto& p : feasible) {
        if (p.ep < (1.0 - gamma) * max_ep) continue;
        if (best == nullptr || sb(p) < sb(*best) ||
            (sb(p) == sb(*best) && p.memory_mb < best->memory_mb))
            best = &p;
    }
    return *best;
}

namespace {

nlohmann::json point_to_json(const FrontierPoint& p) {
    return {{"memory_mb", p.memory_mb},
            {"ep", p.ep},
            {"headroom", p.headroom},
            {"sb", p.metrics.spending_budget},
            {"avg_response_time", p.metrics.avg_response_time},
            {"throughput", p.metrics.throughput},
            {"success_count", p.metrics.success_count},
            {"total", p.metrics.total}};
}

} // namespace

std::string frontier_to_json(const std::vector<FrontierPoint>& points,
                             const std::vector<FrontierPoint>& frontier,
                             const FrontierPoint* chosen, double gamma) {
    nlohmann::json j;
    j["gamma"] = gamma;
    j["points"] = nlohmann::json::array();
    for (const auto& p : points) j["points"].push_back(point_to_json(p));
    j["frontier"] = nlohmann::json::array();
    for (const auto& p : frontier) j["frontier"].push_back(point_to_json(p));
    j["chosen"] = chosen != nullptr ? point_to_json(*chosen) : nlohmann::json();
    return j.dump(2);
}

} // namespace tp3
