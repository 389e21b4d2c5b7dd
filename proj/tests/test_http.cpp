#include "tp3/json_io.hpp"
#include "tp3/privacy.hpp"
#include "tp3/server.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <memory>
#include <set>
#include <thread>
#include <utility>

using namespace tp3;

namespace {

// One server for the whole test binary; handlers are stateless.
struct TestServer {
    httplib::Server srv;
    int port = 0;
    std::thread worker;

    TestServer() {
        ServerConfig cfg;
        cfg.defaults.rng_seed = 77;
        configure_routes(srv, cfg);
        port = srv.bind_to_any_port("127.0.0.1");
        worker = std::thread([this] { srv.listen_after_bind(); });
        srv.wait_until_ready();
    }

    ~TestServer() {
        srv.stop();
        worker.join();
    }
};

TestServer& server() {
    static TestServer instance;
    return instance;
}

httplib::Client client() {
    httplib::Client c("127.0.0.1", server().port);
    c.set_connection_timeout(5);
    return c;
}

nlohmann::json sample_trajectory(int n) {
    Trajectory tr{"t1", "u1", {}};
    for (int i = 0; i < n; ++i) {
        Report r;
        r.user_id = "u1";
        r.lat = 40.71 + 0.003 * i;
        r.lon = -74.01 + 0.002 * i;
        r.timestamp = 1000 * i;
        r.payload = "Cafe";
        tr.reports.push_back(std::move(r));
    }
    return to_json(tr);
}

} // namespace

TEST_CASE("healthz answers ok") {
    auto c = client();
    const auto res = c.Get("/healthz");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == "ok");
}

TEST_CASE("sanitize round-trips preserve each op's count invariants") {
    auto c = client();
    const auto body = sample_trajectory(3).dump();

    SUBCASE("cloak keeps the report count") {
        const auto res = c.Post("/sanitize/cloak", body, "application/json");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        const auto s = sanitized_from_json(res->body);
        CHECK(s.released.size() == 3);
        CHECK(s.provenance == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("temp_cloak keeps count and sorts timestamps") {
        const auto res = c.Post("/sanitize/temp_cloak", body, "application/json");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        const auto s = sanitized_from_json(res->body);
        CHECK(s.released.size() == 3);
        CHECK(trajectory_valid(s.released));
    }
    SUBCASE("dummy_locations multiplies the count") {
        const auto res = c.Post("/sanitize/dummy_locations", body, "application/json");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        const auto s = sanitized_from_json(res->body);
        CHECK(s.released.size() == 9); // default dummy_count = 2
    }
    SUBCASE("path_confusion preserves the location multiset") {
        const auto res = c.Post("/sanitize/path_confusion", body, "application/json");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        const auto s = sanitized_from_json(res->body);
        REQUIRE(s.released.size() == 3);
        const auto original = trajectory_from_json(nlohmann::json::parse(body));
        std::multiset<std::pair<double, double>> in, out;
        for (const auto& r : original.reports) in.insert({r.lat, r.lon});
        for (const auto& r : s.released.reports) out.insert({r.lat, r.lon});
        CHECK(in == out);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(s.released.reports[i].timestamp == original.reports[i].timestamp);
    }
}

TEST_CASE("per-request params override the server defaults") {
    auto c = client();
    auto body = sample_trajectory(2);
    body["params"] = {{"dummy_count", 4}, {"rng_seed", 5}};
    const auto res = c.Post("/sanitize/dummy_locations", body.dump(), "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    CHECK(sanitized_from_json(res->body).released.size() == 10);
}

TEST_CASE("error statuses") {
    auto c = client();

    const auto malformed = c.Post("/sanitize/cloak", "{not json", "application/json");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);

    const auto unknown = c.Post("/sanitize/wat", sample_trajectory(2).dump(), "application/json");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);

    auto bad_lat = sample_trajectory(2);
    bad_lat["reports"][0]["lat"] = 95.0;
    const auto invalid = c.Post("/sanitize/cloak", bad_lat.dump(), "application/json");
    REQUIRE(invalid);
    CHECK(invalid->status == 400);

    auto missing = sample_trajectory(2);
    missing.erase("reports");
    const auto incomplete = c.Post("/sanitize/cloak", missing.dump(), "application/json");
    REQUIRE(incomplete);
    CHECK(incomplete->status == 400);
}
