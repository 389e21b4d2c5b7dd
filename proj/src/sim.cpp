#include "tp3/sim.hpp"

#include "tp3/rng.hpp"

#include <deque>
#include <queue>
#include <stdexcept>

namespace tp3 {

int AllocationProfile::replicas() const {
    if (replica_unit_mb <= 0 || memory_mb % replica_unit_mb != 0 || memory_mb < replica_unit_mb)
        throw std::invalid_argument("AllocationProfile: memory_mb must be a positive multiple of replica_unit_mb");
    return memory_mb / replica_unit_mb;
}

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::OvO: return "OvO";
    case Scenario::OvM: return "OvM";
    case Scenario::MvM: return "MvM";
    }
    throw std::logic_error("to_string: unknown Scenario");
}

namespace {

struct Request {
    double arrival = 0.0;
    double service = 0.0;
    int client = 0;
};

struct Replica {
    bool busy = false;
    Request current;
    std::deque<Request> queue;
};

enum class EventKind { client_issue, replica_done };

struct Event {
    double time;
    std::uint64_t seq; // total order among simultaneous events
    EventKind kind;
    int idx; // client or replica index

    bool operator>(const Event& other) const {
        if (time != other.time) return time > other.time;
        return seq > other.seq;
    }
};

} // namespace

SimMetrics run_workload(const WorkloadSpec& w, const AllocationProfile& alloc,
                        const std::vector<int>& payload_report_counts) {
    if (payload_report_counts.empty())
        throw std::invalid_argument("run_workload: payload corpus must be non-empty");
    if (w.total_requests < 1) throw std::invalid_argument("run_workload: total_requests must be >= 1");
    if (!(w.timeout_s > 0.0)) throw std::invalid_argument("run_workload: timeout must be > 0");

    const int n_replicas = alloc.replicas();
    std::vector<Replica> replicas(static_cast<std::size_t>(n_replicas));

    // Same request stream for every allocation under the same seed.
    std::vector<int> corpus = payload_report_counts;
    SeededRng rng(w.seed);
    rng.shuffle(corpus);

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
    std::uint64_t seq = 0;
    for (int c = 0; c < w.client_count; ++c)
        events.push(Event{0.0, seq++, EventKind::client_issue, c});

    std::int64_t issued = 0;
    std::int64_t served = 0;
    std::int64_t success = 0;
    double sum_response = 0.0;
    double makespan = 0.0;

    auto start_service = [&](Replica& rep, Request req, double now, int rep_idx) {
        rep.busy = true;
        rep.current = req;
        events.push(Event{now + req.service, seq++, EventKind::replica_done, rep_idx});
    };

    while (!events.empty()) {
        const Event ev = events.top();
        events.pop();
        if (ev.kind == EventKind::client_issue) {
            if (issued >= w.total_requests) continue; // budget exhausted; client retires
            const std::int64_t req_idx = issued++;
            Request req;
            req.arrival = ev.time;
            req.client = ev.idx;
            req.service = w.service.base_s +
                          w.service.per_report_s *
                              corpus[static_cast<std::size_t>(req_idx) % corpus.size()];
            const int rep_idx = static_cast<int>(req_idx % n_replicas);
            Replica& rep = replicas[static_cast<std::size_t>(rep_idx)];
            if (!rep.busy) {
                start_service(rep, req, ev.time, rep_idx);
            } else if (rep.queue.size() < static_cast<std::size_t>(w.queue_capacity)) {
                rep.queue.push_back(req);
            } else {
                // Rejected; counts as failed, client retries after a backoff.
                events.push(Event{ev.time + w.retry_backoff_s, seq++, EventKind::client_issue, ev.idx});
            }
        } else {
            Replica& rep = replicas[static_cast<std::size_t>(ev.idx)];
            const Request done = rep.current;
            const double response = ev.time - done.arrival;
            ++served;
            sum_response += response;
            if (response <= w.timeout_s) ++success;
            if (ev.time > makespan) makespan = ev.time;
            rep.busy = false;
            if (!rep.queue.empty()) {
                const Request next = rep.queue.front();
                rep.queue.pop_front();
                start_service(rep, next, ev.time, ev.idx);
            }
            events.push(Event{ev.time, seq++, EventKind::client_issue, done.client});
        }
    }

    SimMetrics m;
    m.total = w.total_requests;
    m.success_count = success;
    m.avg_response_time = served > 0 ? sum_response / static_cast<double>(served) : 0.0;
    m.throughput = makespan > 0.0 ? static_cast<double>(success) / makespan : 0.0;
    m.success_rate = success_rate(m);
    return m;
}

double success_rate(const SimMetrics& m) {
    if (m.total < 1) throw std::invalid_argument("success_rate: total must be >= 1");
    return static_cast<double>(m.success_count) / static_cast<double>(m.total);
}

double spending_budget(const SimMetrics& m, const AllocationProfile& alloc, const CostConfig& c) {
    const double memory_gb = static_cast<double>(alloc.memory_mb) / 1024.0;
    return c.rate_cr * m.avg_response_time * memory_gb * static_cast<double>(m.success_count);
}

double headroom(double sb, const CostConfig& c) { return c.budget_cap - sb; }

} // namespace tp3
