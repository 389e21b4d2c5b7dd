#include "tp3/social.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tp3 {

MobilityProfile lift(const Trajectory& tr) {
    return MobilityProfile{tr.user_id, {tr}};
}

std::size_t lcs_consecutive(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    if (a.empty() || b.empty()) return 0;
    // Rolling single-row DP; row[j] = longest common suffix of a[..i], b[..j].
    std::vector<std::size_t> row(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t prev_diag = 0;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            if (a[i - 1] == b[j - 1]) {
                row[j] = prev_diag + 1;
                best = std::max(best, row[j]);
            } else {
                row[j] = 0;
            }
            prev_diag = up;
        }
    }
    return best;
}

std::size_t lcs_consecutive(const Trajectory& a, const Trajectory& b, const MatchKey& k) {
    return lcs_consecutive(symbolize(a, k), symbolize(b, k));
}

double pair_prob(const Trajectory& a, const Trajectory& b, const MatchKey& k) {
    if (a.reports.empty()) throw std::invalid_argument("pair_prob: |a| must be >= 1");
    return static_cast<double>(lcs_consecutive(a, b, k)) / static_cast<double>(a.size());
}

namespace detail {

double entropy_term(double p) {
    return p > 0.0 ? -p * std::log(p) : 0.0; // 0 * ln 0 = 0
}

} // namespace detail

double conditional_entropy(const std::vector<SymbolSeq>& g1, const std::vector<SymbolSeq>& g2) {
    double h = 0.0;
    for (const auto& z : g1) {
        if (z.empty()) throw std::invalid_argument("conditional_entropy: empty trajectory");
        for (const auto& y : g2) {
            const double p = static_cast<double>(lcs_consecutive(z, y)) / static_cast<double>(z.size());
            h += detail::entropy_term(p);
        }
    }
    return h;
}

double conditional_entropy(const MobilityProfile& g1, const MobilityProfile& g2,
                           const MatchKey& k) {
    if (g1.trajectories.empty() || g2.trajectories.empty())
        throw std::invalid_argument("conditional_entropy: profiles must be non-empty");
    std::vector<SymbolSeq> s1, s2;
    for (const auto& tr : g1.trajectories) s1.push_back(symbolize(tr, k));
    for (const auto& tr : g2.trajectories) s2.push_back(symbolize(tr, k));
    return conditional_entropy(s1, s2);
}

double social_strength(const std::vector<SymbolSeq>& g1, const std::vector<SymbolSeq>& g2,
                       double alpha, bool clamp) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("social_strength: alpha must be in (0, 1]");
    const double s = alpha * std::exp(conditional_entropy(g1, g2));
    return clamp ? std::min(s, 1.0) : s;
}

double social_strength(const MobilityProfile& g1, const MobilityProfile& g2,
                       const StrengthConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw std::invalid_argument("social_strength: alpha must be in (0, 1]");
    const double s = cfg.alpha * std::exp(conditional_entropy(g1, g2, cfg.match_key));
    return cfg.clamp ? std::min(s, 1.0) : s;
}

SymbolizedProfile symbolize(const MobilityProfile& g, const MatchKey& k) {
    SymbolizedProfile out;
    out.user_id = g.user_id;
    for (const auto& tr : g.trajectories) out.trajectories.push_back(symbolize(tr, k));
    return out;
}

std::vector<SymbolizedProfile> symbolize(const ProfileSet& B, const MatchKey& k) {
    std::vector<SymbolizedProfile> out;
    out.reserve(B.profiles.size());
    for (const auto& g : B.profiles) out.push_back(symbolize(g, k));
    return out;
}

double score(const SymbolSeq& tr, const std::vector<SymbolizedProfile>& B, double alpha, bool clamp) {
    if (B.empty()) throw std::invalid_argument("score: profile set must be non-empty");
    const std::vector<SymbolSeq> lifted{tr};
    double sum = 0.0;
    for (const auto& g : B) sum += social_strength(lifted, g.trajectories, alpha, clamp);
    return sum / static_cast<double>(B.size());
}

double score(const Trajectory& tr, const ProfileSet& B, const StrengthConfig& cfg) {
    if (B.profiles.empty()) throw std::invalid_argument("score: profile set must be non-empty");
    return score(symbolize(tr, cfg.match_key), symbolize(B, cfg.match_key), cfg.alpha, cfg.clamp);
}

double coverage_rate(const std::vector<std::pair<std::string, Trajectory>>& users,
                     const ProfileSet& B, double delta, const StrengthConfig& cfg) {
    if (users.empty()) throw std::invalid_argument("coverage_rate: users must be non-empty");
    const auto symB = symbolize(B, cfg.match_key);
    std::size_t captured = 0;
    for (const auto& [id, tr] : users) {
        (void)id;
        if (score(symbolize(tr, cfg.match_key), symB, cfg.alpha, cfg.clamp) >= delta) ++captured;
    }
    return static_cast<double>(captured) / static_cast<double>(users.size());
}

} // namespace tp3
