#include "tp3/types.hpp"

#include <algorithm>

namespace tp3 {

Symbol match_symbol(const Report& r, const MatchKey& k) {
    switch (k.mode) {
    case MatchMode::cell: {
        const auto c = to_cell(r, k.grid);
        return "c:" + std::to_string(c.first) + "," + std::to_string(c.second);
    }
    case MatchMode::category:
        if (!r.payload) throw std::invalid_argument("match_symbol: category mode requires a payload");
        return "k:" + *r.payload;
    case MatchMode::cell_and_category: {
        if (!r.payload) throw std::invalid_argument("match_symbol: cell_and_category mode requires a payload");
        const auto c = to_cell(r, k.grid);
        return "b:" + std::to_string(c.first) + "," + std::to_string(c.second) + "|" + *r.payload;
    }
    }
    throw std::logic_error("match_symbol: unknown mode");
}

std::vector<Symbol> symbolize(const Trajectory& tr, const MatchKey& k) {
    std::vector<Symbol> out;
    out.reserve(tr.reports.size());
    for (const auto& r : tr.reports) out.push_back(match_symbol(r, k));
    return out;
}

MatchKey default_match_key(const Trajectory& tr) {
    const bool all_payloads = std::all_of(tr.reports.begin(), tr.reports.end(),
                                          [](const Report& r) { return r.payload.has_value(); });
    MatchKey k;
    if (all_payloads && !tr.reports.empty()) {
        k.mode = MatchMode::category;
    } else {
        k.mode = MatchMode::cell;
        k.grid.cell_size_deg = 0.001;
    }
    return k;
}

} // namespace tp3
