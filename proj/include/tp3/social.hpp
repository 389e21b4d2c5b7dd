#pragma once

#include "tp3/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace tp3 {

/// Tuning for the entropy-based social strength. alpha in (0, 1]; clamp
/// caps the strength at 1 so the documented (0, 1] range holds.
struct StrengthConfig {
    double alpha = 0.5;
    MatchKey match_key;
    bool clamp = true;
};

/// The data analyst's compiled list of mobility profiles.
struct ProfileSet {
    std::vector<MobilityProfile> profiles;
};

/// A trajectory lifted to a one-trajectory profile, wherever the strength
/// formula needs a profile.
MobilityProfile lift(const Trajectory& tr);

/// Length of the longest common substring of the two symbol sequences.
std::size_t lcs_consecutive(const std::vector<Symbol>& a, const std::vector<Symbol>& b);
std::size_t lcs_consecutive(const Trajectory& a, const Trajectory& b, const MatchKey& k);

/// LCS(a, b) / |a|.
double pair_prob(const Trajectory& a, const Trajectory& b, const MatchKey& k);

/// -sum over all trajectory pairs of p * ln(p), with 0 * ln 0 = 0.
double conditional_entropy(const MobilityProfile& g1, const MobilityProfile& g2,
                           const MatchKey& k);

/// alpha * exp(H(g1|g2)), clamped to 1 when cfg.clamp is set.
double social_strength(const MobilityProfile& g1, const MobilityProfile& g2,
                       const StrengthConfig& cfg);

/// Mean social strength of tr (as a one-trajectory profile) over the set.
double score(const Trajectory& tr, const ProfileSet& B, const StrengthConfig& cfg);

/// Fraction of users whose score against B is >= delta.
double coverage_rate(const std::vector<std::pair<std::string, Trajectory>>& users,
                     const ProfileSet& B, double delta, const StrengthConfig& cfg);

// --- pre-symbolized variants -------------------------------------------------
// The pair-sum over large profile sets re-symbolizes the same trajectories
// many times; these overloads let callers symbolize once.

using SymbolSeq = std::vector<Symbol>;

struct SymbolizedProfile {
    std::string user_id;
    std::vector<SymbolSeq> trajectories;
};

SymbolizedProfile symbolize(const MobilityProfile& g, const MatchKey& k);
std::vector<SymbolizedProfile> symbolize(const ProfileSet& B, const MatchKey& k);

double conditional_entropy(const std::vector<SymbolSeq>& g1, const std::vector<SymbolSeq>& g2);
double social_strength(const std::vector<SymbolSeq>& g1, const std::vector<SymbolSeq>& g2,
                       double alpha, bool clamp);
double score(const SymbolSeq& tr, const std::vector<SymbolizedProfile>& B, double alpha, bool clamp);

// Generic-alphabet forms of the same math; the string alphabet delegates
// here. Callers with hot loops can intern symbols to integers first.

template <typename Sym>
std::size_t lcs_consecutive_t(const std::vector<Sym>& a, const std::vector<Sym>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> row(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t prev_diag = 0;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            if (a[i - 1] == b[j - 1]) {
                row[j] = prev_diag + 1;
                if (row[j] > best) best = row[j];
            } else {
                row[j] = 0;
            }
            prev_diag = up;
        }
    }
    return best;
}

namespace detail {
double entropy_term(double p);
}

template <typename Sym>
double conditional_entropy_t(const std::vector<std::vector<Sym>>& g1,
                             const std::vector<std::vector<Sym>>& g2) {
    double h = 0.0;
    for (const auto& z : g1)
        for (const auto& y : g2)
            h += detail::entropy_term(static_cast<double>(lcs_consecutive_t(z, y)) /
                                      static_cast<double>(z.size()));
    return h;
}

template <typename Sym>
double social_strength_t(const std::vector<std::vector<Sym>>& g1,
                         const std::vector<std::vector<Sym>>& g2, double alpha, bool clamp) {
    const double s = alpha * std::exp(conditional_entropy_t(g1, g2));
    return clamp ? (s < 1.0 ? s : 1.0) : s;
}

} // namespace tp3
