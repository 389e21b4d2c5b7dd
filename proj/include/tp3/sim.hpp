#pragma once

#include "tp3/privacy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tp3 {

/// Serverless memory allocation; replicas = memory_mb / replica_unit_mb.
struct AllocationProfile {
    int memory_mb = 512;
    int replica_unit_mb = 512;

    int replicas() const;
};

inline const std::vector<int> kDefaultAllocationsMb{512, 1024, 1536, 2048, 2560};

enum class Scenario { OvO, OvM, MvM };

std::string to_string(Scenario s);

/// Per-request service time = base_s + per_report_s * (reports in payload).
struct ServiceTimeModel {
    double base_s = 0.004;
    double per_report_s = 0.0006;
};

struct WorkloadSpec {
    Scenario scenario = Scenario::MvM;
    int total_requests = 20000;
    PrivacyMode op = PrivacyMode::moderate_cloak;
    double timeout_s = 0.3;
    int queue_capacity = 64; // waiting slots per replica
    ServiceTimeModel service;
    int client_count = 50;        // closed-loop concurrency
    double retry_backoff_s = 0.005; // client pause after a rejected request
    std::uint64_t seed = 0;
};

struct SimMetrics {
    double avg_response_time = 0.0; // over all served requests
    double throughput = 0.0;        // successful requests per second
    std::int64_t success_count = 0;
    std::int64_t total = 0;
    double success_rate = 0.0; // lambda_m
    double spending_budget = 0.0;
};

struct CostConfig {
    double rate_cr = 0.000017; // monetary units per GB-second
    double budget_cap = 1.0;
};

/// Deterministic closed-loop discrete-event simulation. Each replica serves
/// one request at a time from a bounded FIFO queue; dispatch is round-robin
/// by request index. A request counts as failed when it is rejected at a
/// full queue or its response time exceeds the timeout.
/// payload_report_counts is the request payload corpus (number of reports
/// per candidate payload); requests cycle through it after a seeded shuffle.
SimMetrics run_workload(const WorkloadSpec& w, const AllocationProfile& alloc,
                        const std::vector<int>& payload_report_counts);

double success_rate(const SimMetrics& m);

/// SB_m = c_r * avgT * memory-in-GB * successful requests.
double spending_budget(const SimMetrics& m, const AllocationProfile& alloc, const CostConfig& c);

/// W(m) = budget cap - SB_m.
double headroom(double sb, const CostConfig& c);

} // namespace tp3
