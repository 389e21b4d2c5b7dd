#include "tp3/geo.hpp"
#include "tp3/privacy.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace tp3;

namespace {

Report at(double lat, double lon, std::int64_t ts, const char* payload = nullptr) {
    Report r;
    r.user_id = "u";
    r.lat = lat;
    r.lon = lon;
    r.timestamp = ts;
    if (payload) r.payload = payload;
    return r;
}

Trajectory walk(int n, std::int64_t gap_s = 600) {
    Trajectory tr{"w", "u", {}};
    for (int i = 0; i < n; ++i)
        tr.reports.push_back(at(40.0 + 0.013 * i, -74.0 + 0.007 * i, i * gap_s, "Cafe"));
    return tr;
}

std::multiset<std::pair<double, double>> locations(const Trajectory& tr) {
    std::multiset<std::pair<double, double>> out;
    for (const auto& r : tr.reports) out.insert({r.lat, r.lon});
    return out;
}

} // namespace

TEST_CASE("privacy mode names round-trip") {
    for (const auto m : {PrivacyMode::loose_dummy, PrivacyMode::loose_pathconf,
                         PrivacyMode::moderate_cloak, PrivacyMode::strict_tempcloak})
        CHECK(privacy_mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(privacy_mode_from_string("nope"), std::invalid_argument);
}

TEST_CASE("cloak snaps to cell centers with identity provenance") {
    OpParams p;
    p.grid.cell_size_deg = 0.01;
    Trajectory tr{"t", "u", {at(40.7128, -74.0060, 0), at(40.715, -74.005, 60)}};
    const auto s = cloak(tr, p);
    CHECK(s.released.size() == tr.size());
    CHECK(s.released.reports[0].lat == doctest::Approx(40.715));
    CHECK(s.released.reports[0].lon == doctest::Approx(-74.005));
    // already at a center -> unchanged
    CHECK(s.released.reports[1].lat == doctest::Approx(40.715));
    CHECK(s.released.reports[1].lon == doctest::Approx(-74.005));
    CHECK(s.provenance == std::vector<std::size_t>{0, 1});
    CHECK(s.released.reports[0].timestamp == 0);
    CHECK(trajectory_valid(s.released));
}

TEST_CASE("temp_cloak degenerate and constant shifts") {
    Trajectory tr = walk(4);
    OpParams zero;
    zero.shift_min = zero.shift_max = 0;
    const auto id = temp_cloak(tr, zero);
    CHECK(id.released.reports[2].timestamp == tr.reports[2].timestamp);
    CHECK(id.provenance == std::vector<std::size_t>{0, 1, 2, 3});

    OpParams hour;
    hour.shift_min = hour.shift_max = 3600;
    const auto shifted = temp_cloak(tr, hour);
    for (std::size_t i = 0; i < tr.size(); ++i)
        CHECK(shifted.released.reports[i].timestamp == tr.reports[i].timestamp + 3600);
    CHECK(shifted.provenance == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(temp_cloak(tr, [] { OpParams p; p.shift_min = 5; p.shift_max = 1; return p; }()),
                    std::invalid_argument);
}

TEST_CASE("temp_cloak seeded draws replay bit-identically and stay in range") {
    Trajectory tr = walk(3);
    OpParams p;
    p.shift_min = 0;
    p.shift_max = 7200;
    p.rng_seed = 99;
    const auto a = temp_cloak(tr, p);
    const auto b = temp_cloak(tr, p);
    REQUIRE(a.released.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.released.reports[i].timestamp == b.released.reports[i].timestamp);
        const auto src = a.provenance[i];
        const auto shift = a.released.reports[i].timestamp - tr.reports[src].timestamp;
        CHECK(shift >= 0);
        CHECK(shift <= 7200);
    }
    CHECK(trajectory_valid(a.released));
    p.rng_seed = 100;
    const auto c = temp_cloak(tr, p);
    bool any_diff = false;
    for (std::size_t i = 0; i < 3; ++i)
        any_diff |= c.released.reports[i].timestamp != a.released.reports[i].timestamp;
    CHECK(any_diff);
}

TEST_CASE("dummy_locations multiplies the report count and stays within radius") {
    Trajectory tr = walk(5);
    OpParams p;
    p.dummy_count = 2;
    p.dummy_radius_m = 200.0;
    p.rng_seed = 5;
    const auto s = dummy_locations(tr, p);
    CHECK(s.released.size() == 15);
    CHECK(trajectory_valid(s.released));
    for (std::size_t i = 0; i < s.released.size(); ++i) {
        const auto& rel = s.released.reports[i];
        const auto& src = tr.reports[s.provenance[i]];
        CHECK(rel.timestamp == src.timestamp);
        // small slack for the planar draw vs spherical measurement
        CHECK(haversine_m(rel.lat, rel.lon, src.lat, src.lon) <= 200.0 + 0.05);
    }

    OpParams none;
    none.dummy_count = 0;
    CHECK(dummy_locations(tr, none).released.size() == tr.size());

    OpParams degenerate;
    degenerate.dummy_count = 1;
    degenerate.dummy_radius_m = 0.0;
    const auto zero = dummy_locations(tr, degenerate);
    for (std::size_t i = 0; i < zero.released.size(); ++i) {
        const auto& src = tr.reports[zero.provenance[i]];
        CHECK(zero.released.reports[i].lat == doctest::Approx(src.lat));
        CHECK(zero.released.reports[i].lon == doctest::Approx(src.lon));
    }
}

TEST_CASE("path_confusion permutes locations within blocks, timestamps in place") {
    Trajectory tr = walk(7);
    OpParams p;
    p.window_q = 3;
    p.rng_seed = 21;
    const auto s = path_confusion(tr, p);
    CHECK(s.released.size() == tr.size());
    CHECK(locations(s.released) == locations(tr));
    for (std::size_t i = 0; i < tr.size(); ++i) {
        CHECK(s.released.reports[i].timestamp == tr.reports[i].timestamp);
        // permutation stays inside its own block
        CHECK(s.provenance[i] / 3 == i / 3);
    }

    OpParams identity;
    identity.window_q = 1;
    const auto id = path_confusion(tr, identity);
    CHECK(id.provenance == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("path_confusion can reverse a whole 3-report trajectory under some seed") {
    Trajectory tr = walk(3);
    OpParams p;
    p.window_q = 3;
    bool reversed = false;
    for (std::uint64_t seed = 0; seed < 64 && !reversed; ++seed) {
        p.rng_seed = seed;
        const auto s = path_confusion(tr, p);
        if (s.provenance == std::vector<std::size_t>{2, 1, 0}) {
            reversed = true;
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(s.released.reports[i].lat == tr.reports[2 - i].lat);
                CHECK(s.released.reports[i].timestamp == tr.reports[i].timestamp);
            }
        }
    }
    CHECK(reversed);
}

TEST_CASE("smartmask snaps to the nearest POI") {
    const std::vector<Report> pois{at(40.0, -74.0, 0, "A"), at(40.2, -74.0, 0, "B")};
    Trajectory tr{"t", "u", {at(40.0, -74.0, 0), at(40.19, -74.0, 60), at(40.04, -74.0, 120)}};
    const auto s = smartmask_baseline(tr, pois);
    CHECK(s.released.reports[0].lat == doctest::Approx(40.0)); // already on a POI
    CHECK(s.released.reports[1].lat == doctest::Approx(40.2)); // nearer the second
    CHECK(s.released.reports[2].lat == doctest::Approx(40.0));
    CHECK(s.released.size() == tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i)
        CHECK(s.released.reports[i].timestamp == tr.reports[i].timestamp);
    // single POI: everything snaps to it
    const auto single = smartmask_baseline(tr, {pois[1]});
    for (const auto& r : single.released.reports) CHECK(r.lat == doctest::Approx(40.2));
    CHECK_THROWS_AS(smartmask_baseline(tr, {}), std::invalid_argument);
}

TEST_CASE("utility anchors") {
    Trajectory tr = walk(5);
    OpParams p;
    p.window_q = 3;
    p.rng_seed = 2;
    CHECK(utility(path_confusion(tr, p), tr, 0.0, 1.0).percent == doctest::Approx(100.0));
    p.shift_min = 0;
    p.shift_max = 7200;
    CHECK(utility(temp_cloak(tr, p), tr, 0.0, 1.0).percent == doctest::Approx(100.0));
    // with a temporal weight, shifting costs utility
    OpParams shift;
    shift.shift_min = shift.shift_max = 3600;
    CHECK(utility(temp_cloak(tr, shift), tr, 1.0, 1.0).percent < 100.0);

    p.dummy_count = 2;
    p.dummy_radius_m = 200.0;
    CHECK(utility(dummy_locations(tr, p), tr, 0.0, 1.0).percent < 100.0);

    // single report displaced to d = 4 * floor -> 50%
    SanitizedTrajectory s;
    s.released = Trajectory{"t", "u", {at(40.0, -74.0 + 4.0 / meters_per_deg_lon(40.0), 0)}};
    s.provenance = {0};
    const Trajectory truth{"t", "u", {at(40.0, -74.0, 0)}};
    CHECK(utility(s, truth, 0.0, 1.0).percent == doctest::Approx(50.0).epsilon(0.01));

    SanitizedTrajectory broken = s;
    broken.provenance = {};
    CHECK_THROWS_AS(utility(broken, truth, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(utility(s, truth, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("apply_privacy_op dispatches and preserves invariants") {
    Trajectory tr = walk(6);
    OpParams p;
    p.rng_seed = 31;
    for (const auto m : {PrivacyMode::loose_dummy, PrivacyMode::loose_pathconf,
                         PrivacyMode::moderate_cloak, PrivacyMode::strict_tempcloak}) {
        const auto s = apply_privacy_op(m, tr, p);
        CHECK(s.op_applied == m);
        CHECK(trajectory_valid(s.released));
        CHECK(s.provenance.size() == s.released.size());
        const auto replay = apply_privacy_op(m, tr, p);
        CHECK(replay.released.size() == s.released.size());
        for (std::size_t i = 0; i < s.released.size(); ++i) {
            CHECK(replay.released.reports[i].lat == s.released.reports[i].lat);
            CHECK(replay.released.reports[i].timestamp == s.released.reports[i].timestamp);
        }
    }
}

TEST_CASE("sanitize_until_safe picks the first safe rung or flags unsafe") {
    Trajectory tr = walk(5);
    StrengthConfig cfg{0.5, MatchKey{MatchMode::cell, GridSpec{0.01}}, true};
    ProfileSet B{{lift(tr)}};
    OpParams p;
    p.rng_seed = 17;
    const std::vector<std::pair<PrivacyMode, OpParams>> ladder{
        {PrivacyMode::loose_dummy, p}, {PrivacyMode::moderate_cloak, p}};

    // delta above any score: first rung wins
    const auto loose = sanitize_until_safe(tr, B, 1.5, ladder, cfg);
    CHECK(loose.sanitized.op_applied == PrivacyMode::loose_dummy);
    CHECK(!loose.sanitized.unsafe_flag);
    CHECK(loose.achieved_score < 1.5);

    // delta = 0 can never be met: minimal-score rung, flagged unsafe
    const auto unsafe = sanitize_until_safe(tr, B, 0.0, ladder, cfg);
    CHECK(unsafe.sanitized.unsafe_flag);
    CHECK(unsafe.achieved_score > 0.0);
    CHECK_THROWS_AS(sanitize_until_safe(tr, B, 0.5, {}, cfg), std::invalid_argument);
}

TEST_CASE("sanitized trajectories round-trip through JSON") {
    Trajectory tr = walk(4);
    OpParams p;
    p.rng_seed = 3;
    const auto s = dummy_locations(tr, p);
    const auto back = sanitized_from_json(sanitized_to_json(s));
    CHECK(back.op_applied == s.op_applied);
    CHECK(back.provenance == s.provenance);
    CHECK(back.unsafe_flag == s.unsafe_flag);
    REQUIRE(back.released.size() == s.released.size());
    for (std::size_t i = 0; i < s.released.size(); ++i) {
        CHECK(back.released.reports[i].lat == doctest::Approx(s.released.reports[i].lat));
        CHECK(back.released.reports[i].timestamp == s.released.reports[i].timestamp);
    }
}
