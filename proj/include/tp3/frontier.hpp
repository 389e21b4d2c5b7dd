#pragma once

#include "tp3/sim.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tp3 {

/// One memory allocation in the (performance, budget) plane.
struct FrontierPoint {
    int memory_mb = 0;
    double ep = 0.0;       // lambda_m
    double headroom = 0.0; // W(m) = cap - SB
    SimMetrics metrics;    // metrics.spending_budget holds SB_m
};

/// Standard Pareto dominance: a weakly better on both axes and strictly
/// better on at least one (lower SB, higher ep).
bool dominates(const FrontierPoint& a, const FrontierPoint& b);

/// Testing oracle: every point not dominated by any other, ordered by
/// memory_mb.
std::vector<FrontierPoint> exhaustive_frontier(const std::vector<FrontierPoint>& points);

/// Single descending-performance sweep with a running minimum budget.
/// Equals exhaustive_frontier on every input.
std::vector<FrontierPoint> greedy_frontier(const std::vector<FrontierPoint>& points);

struct InfeasibleBudget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Among frontier points with positive headroom whose performance is within
/// (1 - gamma) of the best, pick the one with minimal spending budget
/// (ties: smaller memory). Throws InfeasibleBudget when no point has
/// positive headroom.
FrontierPoint select_allocation(const std::vector<FrontierPoint>& frontier, const CostConfig& c,
                                double gamma);

std::string frontier_to_json(const std::vector<FrontierPoint>& points,
                             const std::vector<FrontierPoint>& frontier,
                             const FrontierPoint* chosen, double gamma);

} // namespace tp3
