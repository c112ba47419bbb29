#include "modemflow/queuesim.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <queue>
#include <string>
#include <thread>

#include "modemflow/errors.hpp"
#include "modemflow/rng.hpp"

namespace modemflow {

std::optional<double> RunMetrics::mean_delay_s() const {
    if (total.delay_count == 0) {
        return std::nullopt;
    }
    return total.delay_sum_s / static_cast<double>(total.delay_count);
}

double RunMetrics::pli_pct() const {
    if (total.offered == 0) {
        return 0.0;
    }
    return 100.0 * static_cast<double>(total.dropped) / static_cast<double>(total.offered);
}

double MetricsReport::pooled_pli_pct() const {
    if (offered == 0) {
        return 0.0;
    }
    return 100.0 * static_cast<double>(dropped) / static_cast<double>(offered);
}

namespace {

// stream families derived from the run seed
constexpr std::uint64_t kTagArrival = 1;
constexpr std::uint64_t kTagRoute = 2;
constexpr std::uint64_t kTagService = 3;

struct Event {
    double time;
    std::uint32_t seq;   // tie-breaker: insertion order gives a total order
    std::uint32_t code;  // (index << 1) | kind; kind 0 = generation, 1 = completion
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) {
            return a.time > b.time;
        }
        return a.seq > b.seq;
    }
};

struct PacketRec {
    double gen_time;
    std::int32_t commodity;
    std::int32_t route;
    std::int32_t hop;
};

struct Station {
    std::deque<PacketRec> queue;  // front is in service
    double det_service_s = 0;     // links and deterministic modems
    int service_stream = -1;      // >= 0: exponential modem, sample per packet
};

struct Engine {
    const Scenario* scenario;
    double horizon = 0;
    double warmup = 0;
    long long buffer = 0;
    bool check = false;

    std::vector<Station> stations;
    // station id sequence per commodity and route choice
    std::vector<std::vector<std::vector<std::int32_t>>> hops;
    std::vector<std::vector<double>> route_cdf;  // cumulative probabilities
    std::vector<double> lambda;

    std::vector<rng::Xoshiro256pp> arrival_rng;
    std::vector<rng::Xoshiro256pp> route_rng;
    std::vector<rng::Xoshiro256pp> service_rng;

    std::priority_queue<Event, std::vector<Event>, EventAfter> calendar;
    std::uint32_t next_seq = 0;
    double now = 0;

    std::vector<CommodityCounters> counters;

    void push(double time, std::uint32_t code) {
        calendar.push({time, next_seq++, code});
    }

    double service_time(Station& st) {
        if (st.service_stream >= 0) {
            return service_rng[st.service_stream].exponential(
                scenario->mu_pps *
                (scenario->mode == Mode::baseline ? scenario->baseline_multiplier : 1));
        }
        return st.det_service_s;
    }

    bool counted(double gen_time) const { return gen_time >= warmup; }

    void enter(std::int32_t station_id, const PacketRec& pkt) {
        Station& st = stations[station_id];
        if (static_cast<long long>(st.queue.size()) >= buffer) {
            if (counted(pkt.gen_time)) {
                ++counters[pkt.commodity].dropped;
            }
            return;  // tail drop
        }
        st.queue.push_back(pkt);
        if (check && static_cast<long long>(st.queue.size()) > buffer) {
            throw Error("buffer bound violated at station " + std::to_string(station_id));
        }
        if (st.queue.size() == 1) {
            push(now + service_time(st), (static_cast<std::uint32_t>(station_id) << 1) | 1u);
        }
    }

    void on_generation(std::int32_t k) {
        const double t = now;
        if (counted(t)) {
            ++counters[k].offered;
        }
        // route choice consumes the stream for every packet, warm-up included
        const auto& cdf = route_cdf[k];
        std::int32_t choice = 0;
        if (cdf.size() > 1) {
            const double u = route_rng[k].uniform01() * cdf.back();
            choice = static_cast<std::int32_t>(
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            if (choice >= static_cast<std::int32_t>(cdf.size())) {
                choice = static_cast<std::int32_t>(cdf.size()) - 1;
            }
        }
        enter(hops[k][choice][0], {t, k, choice, 0});

        const double next_arrival = t + arrival_rng[k].exponential(lambda[k]);
        if (next_arrival <= horizon) {
            push(next_arrival, static_cast<std::uint32_t>(k) << 1);
        }
    }

    void on_completion(std::int32_t station_id) {
        Station& st = stations[station_id];
        PacketRec pkt = st.queue.front();
        st.queue.pop_front();

        const auto& seq = hops[pkt.commodity][pkt.route];
        ++pkt.hop;
        if (pkt.hop == static_cast<std::int32_t>(seq.size())) {
            if (counted(pkt.gen_time)) {
                CommodityCounters& c = counters[pkt.commodity];
                ++c.delivered;
                const double delay = now - pkt.gen_time;
                if (check && !(delay > 0)) {
                    throw Error("nonpositive end-to-end delay");
                }
                c.delay_sum_s += delay;
                ++c.delay_count;
            }
        } else {
            enter(seq[pkt.hop], pkt);
        }
        if (!st.queue.empty()) {
            push(now + service_time(st), (static_cast<std::uint32_t>(station_id) << 1) | 1u);
        }
    }
};

void check_scenario_for_sim(const Scenario& s, const PayloadGraph& graph,
                            const std::vector<Commodity>& commodities,
                            const std::vector<double>& lambda) {
    if (s.mu_pps <= 0 || s.packet_bytes <= 0 || s.horizon_s <= 0 || s.buffer_pkts < 1 ||
        s.warmup_frac < 0 || s.warmup_frac > 0.5 ||
        (s.mode == Mode::baseline && s.baseline_multiplier < 1)) {
        throw InvalidScenarioError("scenario fails validation; run validate for details");
    }
    for (std::size_t k = 0; k < commodities.size(); ++k) {
        if (lambda[k] < 0) {
            throw InvalidScenarioError("negative arrival rate for commodity " +
                                       std::to_string(commodities[k].id));
        }
        if (commodities[k].source < 0 || commodities[k].source >= graph.node_count() ||
            commodities[k].destination < 0 ||
            commodities[k].destination >= graph.node_count()) {
            throw InvalidScenarioError("commodity " + std::to_string(commodities[k].id) +
                                       " endpoint is not a graph node");
        }
    }
}

}  // namespace

RunMetrics simulate(const Scenario& scenario, const PayloadGraph& graph,
                    const RoutingTable& routing, std::uint64_t seed,
                    const SimOptions& options) {
    const std::vector<Commodity> commodities = make_commodities(scenario);
    const int k_count = static_cast<int>(commodities.size());

    std::vector<double> lambda(k_count, 0.0);
    const double bits = scenario.packet_bytes * 8.0;
    for (int k = 0; k < k_count; ++k) {
        lambda[k] = commodities[k].demand_bps / bits;
    }
    check_scenario_for_sim(scenario, graph, commodities, lambda);

    Engine eng;
    eng.scenario = &scenario;
    eng.horizon = scenario.horizon_s;
    eng.warmup = scenario.horizon_s * scenario.warmup_frac;
    eng.buffer = scenario.buffer_pkts;
    eng.check = options.check_invariants;
    eng.lambda = lambda;
    eng.counters.assign(k_count, {});

    // stations: modem per node, then one per directed link
    const int n_nodes = graph.node_count();
    eng.stations.resize(n_nodes + graph.edges().size());
    for (int v = 0; v < n_nodes; ++v) {
        if (scenario.service_dist == ServiceDist::exponential) {
            eng.stations[v].service_stream = v;
        } else {
            eng.stations[v].det_service_s =
                1.0 / (scenario.mu_pps *
                       (scenario.mode == Mode::baseline ? scenario.baseline_multiplier : 1));
        }
    }
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        eng.stations[n_nodes + e].det_service_s = bits / graph.edges()[e].capacity_bps;
    }

    // per-packet station sequences from the routing table
    eng.hops.resize(k_count);
    eng.route_cdf.resize(k_count);
    if (scenario.mode == Mode::baseline) {
        for (int k = 0; k < k_count; ++k) {
            eng.hops[k] = {{0}};
            eng.route_cdf[k] = {1.0};
        }
    } else {
        if (static_cast<int>(routing.entries.size()) != k_count) {
            throw RoutingMismatchError("routing table covers " +
                                       std::to_string(routing.entries.size()) +
                                       " commodities, scenario has " +
                                       std::to_string(k_count));
        }
        for (int k = 0; k < k_count; ++k) {
            const auto& entries = routing.entries[k];
            double total = 0;
            for (const RouteEntry& entry : entries) {
                total += entry.probability;
            }
            if (entries.empty() || !(total > 0)) {
                throw RoutingMismatchError("commodity " + std::to_string(commodities[k].id) +
                                           " has no routing entries");
            }
            double cum = 0;
            for (const RouteEntry& entry : entries) {
                if (entry.path.nodes.front() != commodities[k].source ||
                    entry.path.nodes.back() != commodities[k].destination) {
                    throw RoutingMismatchError("routing path endpoints do not match commodity " +
                                               std::to_string(commodities[k].id));
                }
                std::vector<std::int32_t> seq;
                seq.push_back(commodities[k].source);  // ingress modem
                for (std::size_t h = 0; h < entry.path.edge_ids.size(); ++h) {
                    seq.push_back(
                        static_cast<std::int32_t>(n_nodes + entry.path.edge_ids[h]));
                    const NodeId head = entry.path.nodes[h + 1];
                    if (scenario.transit_service && head != commodities[k].destination) {
                        seq.push_back(head);
                    }
                }
                seq.push_back(commodities[k].destination);  // egress modem
                eng.hops[k].push_back(std::move(seq));
                cum += entry.probability;
                eng.route_cdf[k].push_back(cum);
            }
        }
    }

    // independent streams per arrival process, route choice, and modem
    eng.arrival_rng.reserve(k_count);
    eng.route_rng.reserve(k_count);
    for (int k = 0; k < k_count; ++k) {
        eng.arrival_rng.emplace_back(rng::split(seed, kTagArrival, k));
        eng.route_rng.emplace_back(rng::split(seed, kTagRoute, k));
    }
    eng.service_rng.reserve(n_nodes);
    for (int v = 0; v < n_nodes; ++v) {
        eng.service_rng.emplace_back(rng::split(seed, kTagService, v));
    }

    for (int k = 0; k < k_count; ++k) {
        if (lambda[k] > 0) {
            const double first = eng.arrival_rng[k].exponential(lambda[k]);
            if (first <= eng.horizon) {
                eng.push(first, static_cast<std::uint32_t>(k) << 1);
            }
        }
    }

    double last_time = 0;
    while (!eng.calendar.empty() && eng.calendar.top().time <= eng.horizon) {
        const Event ev = eng.calendar.top();
        eng.calendar.pop();
        if (eng.check && ev.time < last_time) {
            throw Error("event calendar went backwards");
        }
        last_time = ev.time;
        eng.now = ev.time;
        if (ev.code & 1u) {
            eng.on_completion(static_cast<std::int32_t>(ev.code >> 1));
        } else {
            eng.on_generation(static_cast<std::int32_t>(ev.code >> 1));
        }
    }

    RunMetrics metrics;
    metrics.seed = seed;
    metrics.per_commodity = eng.counters;
    for (CommodityCounters& c : metrics.per_commodity) {
        c.in_flight = c.offered - c.delivered - c.dropped;
        metrics.total.offered += c.offered;
        metrics.total.delivered += c.delivered;
        metrics.total.dropped += c.dropped;
        metrics.total.in_flight += c.in_flight;
        metrics.total.delay_sum_s += c.delay_sum_s;
        metrics.total.delay_count += c.delay_count;
    }
    return metrics;
}

MetricsReport run_replications(const Scenario& scenario, const PayloadGraph& graph,
                               const RoutingTable& routing, int n_reps,
                               std::uint64_t base_seed, const SimOptions& options,
                               int max_threads) {
    if (n_reps < 1) {
        throw std::invalid_argument("replication count must be >= 1");
    }
    MetricsReport report;
    report.reps = n_reps;
    report.runs.resize(n_reps);

    int threads = max_threads > 0 ? max_threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n_reps));

    if (threads == 1) {
        for (int i = 0; i < n_reps; ++i) {
            report.runs[i] = simulate(scenario, graph, routing, rng::split(base_seed, i),
                                      options);
        }
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            int i;
            while ((i = next.fetch_add(1)) < n_reps) {
                try {
                    report.runs[i] = simulate(scenario, graph, routing,
                                              rng::split(base_seed, i), options);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<double> delay_samples;
    std::vector<double> pli_samples;
    for (const RunMetrics& run : report.runs) {
        report.offered += run.total.offered;
        report.delivered += run.total.delivered;
        report.dropped += run.total.dropped;
        report.in_flight += run.total.in_flight;
        if (const auto d = run.mean_delay_s()) {
            delay_samples.push_back(*d);
        }
        pli_samples.push_back(run.pli_pct());
    }
    if (delay_samples.size() >= 2) {
        report.delay = metrics::confidence_interval(delay_samples);
    }
    if (pli_samples.size() >= 2) {
        report.pli = metrics::confidence_interval(pli_samples);
    }
    return report;
}

}  // namespace modemflow
