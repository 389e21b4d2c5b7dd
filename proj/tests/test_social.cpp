#include "tp3/rng.hpp"
#include "tp3/social.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace tp3;

namespace {

Trajectory from_categories(const std::string& traj_id, const std::vector<std::string>& cats) {
    Trajectory tr{traj_id, "u", {}};
    std::int64_t ts = 0;
    for (const auto& c : cats) {
        Report r;
        r.user_id = "u";
        r.timestamp = ts++;
        r.payload = c;
        tr.reports.push_back(std::move(r));
    }
    return tr;
}

const MatchKey kCat{MatchMode::category, GridSpec{0.01}};

// All-substring-pairs oracle for the longest common substring length.
std::size_t lcs_brute(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t len = 0;
            while (i + len < a.size() && j + len < b.size() && a[i + len] == b[j + len]) ++len;
            best = std::max(best, len);
        }
    return best;
}

std::vector<Symbol> random_seq(SeededRng& rng, std::size_t max_len, int alphabet) {
    std::vector<Symbol> out;
    const auto len = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_len)));
    for (std::size_t i = 0; i < len; ++i)
        out.push_back(std::string(1, static_cast<char>('A' + rng.uniform_int(0, alphabet - 1))));
    return out;
}

} // namespace

TEST_CASE("lcs_consecutive matches hand examples") {
    CHECK(lcs_consecutive({"A", "B", "C"}, {"B", "C", "D"}) == 2);
    CHECK(lcs_consecutive({"A", "B", "C"}, {"A", "B", "C"}) == 3);
    CHECK(lcs_consecutive({"A", "B"}, {"X", "Y"}) == 0);
    CHECK(lcs_consecutive({}, {"A"}) == 0);
    // Common symbols but no common run longer than 1.
    CHECK(lcs_consecutive({"A", "B", "A"}, {"B", "A", "B"}) == 2);
}

TEST_CASE("lcs_consecutive equals the brute-force oracle on random pairs") {
    SeededRng rng(101);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_seq(rng, 8, 3);
        const auto b = random_seq(rng, 8, 3);
        CHECK(lcs_consecutive(a, b) == lcs_brute(a, b));
        CHECK(lcs_consecutive(a, b) <= std::min(a.size(), b.size()));
    }
}

TEST_CASE("pair_prob normalizes by the first trajectory") {
    const auto a = from_categories("a", {"A", "B", "C"});
    const auto b = from_categories("b", {"B", "C", "D"});
    CHECK(pair_prob(a, b, kCat) == doctest::Approx(2.0 / 3.0));
    CHECK(pair_prob(a, a, kCat) == doctest::Approx(1.0));
    CHECK(pair_prob(a, from_categories("c", {"X"}), kCat) == 0.0);
}

TEST_CASE("conditional_entropy anchors") {
    const auto a = from_categories("a", {"A", "B"});
    CHECK(conditional_entropy(lift(a), lift(a), kCat) == 0.0); // p = 1

    const auto half = from_categories("h", {"A", "X"}); // p = 1/2
    CHECK(conditional_entropy(lift(a), lift(half), kCat) == doctest::Approx(0.34657).epsilon(1e-4));

    const auto other = from_categories("o", {"X", "Y"}); // p = 0
    CHECK(conditional_entropy(lift(a), lift(other), kCat) == 0.0);
}

TEST_CASE("social_strength anchors and clamp") {
    const auto a = from_categories("a", {"A", "B"});
    StrengthConfig one{1.0, kCat, true};
    CHECK(social_strength(lift(a), lift(a), one) == 1.0);

    StrengthConfig half_alpha{0.5, kCat, true};
    const auto half = from_categories("h", {"A", "X"});
    CHECK(social_strength(lift(a), lift(half), half_alpha) ==
          doctest::Approx(0.70711).epsilon(1e-4));

    StrengthConfig low{0.3, kCat, true};
    const auto other = from_categories("o", {"X", "Y"});
    CHECK(social_strength(lift(a), lift(other), low) == doctest::Approx(0.3));

    StrengthConfig unclamped{0.5, kCat, false};
    CHECK(social_strength(lift(a), lift(half), unclamped) > 0.70710);
    CHECK_THROWS_AS(social_strength(lift(a), lift(a), StrengthConfig{0.0, kCat, true}),
                    std::invalid_argument);
}

TEST_CASE("clamped strength stays within (0, 1] on random profiles") {
    SeededRng rng(77);
    StrengthConfig cfg{1.0, kCat, true};
    for (int i = 0; i < 10000; ++i) {
        std::vector<std::string> ca, cb;
        for (const auto& s : random_seq(rng, 6, 2)) ca.push_back(s);
        for (const auto& s : random_seq(rng, 6, 2)) cb.push_back(s);
        const double s = social_strength(lift(from_categories("a", ca)),
                                         lift(from_categories("b", cb)), cfg);
        CHECK(s > 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("score is the mean strength over the profile set") {
    const auto tr = from_categories("t", {"A", "B"});
    // Profile 1: identical -> strength alpha. Profile 2: two half-matching
    // trajectories -> H = 2 * 0.346574 = ln 2, strength = alpha * 2 (clamped to 1).
    MobilityProfile p1 = lift(tr);
    MobilityProfile p2{"v", {from_categories("y1", {"A", "X"}), from_categories("y2", {"B", "Y"})}};
    StrengthConfig cfg{0.5, kCat, true};
    CHECK(social_strength(lift(tr), p1, cfg) == doctest::Approx(0.5));
    CHECK(social_strength(lift(tr), p2, cfg) == doctest::Approx(1.0));
    CHECK(score(tr, ProfileSet{{p1, p2}}, cfg) == doctest::Approx(0.75));
    CHECK_THROWS_AS(score(tr, ProfileSet{}, cfg), std::invalid_argument);
}

TEST_CASE("score is invariant under profile duplication") {
    const auto tr = from_categories("t", {"A", "B", "C"});
    ProfileSet B{{lift(from_categories("y", {"B", "C"})),
                  lift(from_categories("z", {"A", "X", "C"}))}};
    ProfileSet doubled{{B.profiles[0], B.profiles[1], B.profiles[0], B.profiles[1]}};
    StrengthConfig cfg{0.4, kCat, true};
    CHECK(score(tr, B, cfg) == doctest::Approx(score(tr, doubled, cfg)));
}

TEST_CASE("coverage_rate boundaries and monotonicity") {
    StrengthConfig cfg{0.5, kCat, true};
    ProfileSet B{{lift(from_categories("y", {"A", "B"}))}};
    std::vector<std::pair<std::string, Trajectory>> users{
        {"u1", from_categories("t1", {"A", "B"})},       // p = 1 -> 0.5
        {"u2", from_categories("t2", {"A", "X"})},       // ~0.707
        {"u3", from_categories("t3", {"X", "Y"})},       // 0.5
        {"u4", from_categories("t4", {"X", "Y", "Z"})}}; // 0.5
    CHECK(coverage_rate(users, B, 0.0, cfg) == doctest::Approx(1.0));
    CHECK(coverage_rate(users, B, 1.01, cfg) == 0.0);
    CHECK(coverage_rate(users, B, 0.6, cfg) == doctest::Approx(0.25));
    // score exactly delta counts as captured
    CHECK(coverage_rate(users, B, 0.5, cfg) == doctest::Approx(1.0));
    double prev = 1.0;
    for (double d = 0.0; d <= 1.0; d += 0.05) {
        const double cr = coverage_rate(users, B, d, cfg);
        CHECK(cr <= prev);
        prev = cr;
    }
    CHECK_THROWS_AS(coverage_rate({}, B, 0.5, cfg), std::invalid_argument);
}

TEST_CASE("generic-alphabet variants agree with the string alphabet") {
    SeededRng rng(55);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_seq(rng, 7, 3);
        const auto b = random_seq(rng, 7, 3);
        std::vector<int> ia, ib;
        for (const auto& s : a) ia.push_back(s[0]);
        for (const auto& s : b) ib.push_back(s[0]);
        CHECK(lcs_consecutive_t(ia, ib) == lcs_consecutive(a, b));
        CHECK(social_strength_t(std::vector<std::vector<int>>{ia},
                                std::vector<std::vector<int>>{ib}, 0.5, true) ==
              doctest::Approx(social_strength({a}, {b}, 0.5, true)));
    }
}
