#include "tp3/server.hpp"

#include "tp3/json_io.hpp"

#include <httplib.h>
#include <json.hpp>

namespace tp3 {

namespace {

OpParams params_from_json(const nlohmann::json& j, OpParams base) {
    if (j.contains("params")) {
        const auto& p = j["params"];
        if (p.contains("cell_size_deg")) base.grid.cell_size_deg = p["cell_size_deg"].get<double>();
        if (p.contains("shift_min")) base.shift_min = p["shift_min"].get<std::int64_t>();
        if (p.contains("shift_max")) base.shift_max = p["shift_max"].get<std::int64_t>();
        if (p.contains("dummy_count")) base.dummy_count = p["dummy_count"].get<int>();
        if (p.contains("dummy_radius_m")) base.dummy_radius_m = p["dummy_radius_m"].get<double>();
        if (p.contains("window_q")) base.window_q = p["window_q"].get<int>();
        if (p.contains("rng_seed")) base.rng_seed = p["rng_seed"].get<std::uint64_t>();
    }
    return base;
}

void error_body(httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
}

} // namespace

void configure_routes(httplib::Server& srv, const ServerConfig& cfg) {
    srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });

    srv.Post(R"(/sanitize/([A-Za-z_]+))", [cfg](const httplib::Request& req, httplib::Response& res) {
        PrivacyMode mode;
        try {
            mode = privacy_mode_from_string(req.matches[1]);
        } catch (const std::invalid_argument& e) {
            error_body(res, 404, e.what());
            return;
        }
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::parse_error&) {
            error_body(res, 400, "malformed JSON");
            return;
        }
        try {
            const Trajectory tr = trajectory_from_json(body);
            if (!trajectory_valid(tr)) {
                error_body(res, 400, "trajectory violates invariants");
                return;
            }
            const auto sanitized = apply_privacy_op(mode, tr, params_from_json(body, cfg.defaults));
            res.set_content(sanitized_to_json(sanitized), "application/json");
        } catch (const nlohmann::json::exception&) {
            error_body(res, 400, "malformed trajectory document");
        } catch (const std::invalid_argument& e) {
            error_body(res, 400, e.what());
        }
    });
}

bool serve_http(const std::string& host, int port, const ServerConfig& cfg) {
    httplib::Server srv;
    configure_routes(srv, cfg);
    return srv.listen(host, port);
}

} // namespace tp3
