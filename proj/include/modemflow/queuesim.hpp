#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modemflow/maxmin_lp.hpp"
#include "modemflow/metrics.hpp"
#include "modemflow/scenario.hpp"
#include "modemflow/topology.hpp"

namespace modemflow {

struct CommodityCounters {
    long long offered = 0;    // packets generated after warm-up
    long long delivered = 0;
    long long dropped = 0;
    long long in_flight = 0;  // still in the system at the horizon
    double delay_sum_s = 0;
    long long delay_count = 0;
};

struct RunMetrics {
    std::uint64_t seed = 0;
    std::vector<CommodityCounters> per_commodity;
    CommodityCounters total;

    // mean end-to-end delay of delivered packets; absent when none delivered
    std::optional<double> mean_delay_s() const;
    // 100 * dropped / offered; 0 when nothing was offered
    double pli_pct() const;
};

struct SimOptions {
    bool check_invariants = false;  // assert buffer bound and causality per event
};

// One event-driven run over the configured horizon. Poisson arrivals per
// commodity, i.i.d. per-packet path choice from the routing probabilities,
// FIFO tail-drop stations (ingress modem, per-hop links, egress modem; a
// single station in baseline mode). Identical (scenario, routing, seed)
// yields bit-identical metrics.
RunMetrics simulate(const Scenario& scenario, const PayloadGraph& graph,
                    const RoutingTable& routing, std::uint64_t seed,
                    const SimOptions& options = {});

struct MetricsReport {
    int reps = 0;
    std::vector<RunMetrics> runs;
    // confidence intervals over per-replication values; absent below 2 samples
    std::optional<metrics::SampleStats> delay;
    std::optional<metrics::SampleStats> pli;
    // pooled across replications
    long long offered = 0;
    long long delivered = 0;
    long long dropped = 0;
    long long in_flight = 0;
    double pooled_pli_pct() const;
};

// n_reps independent runs with seeds rng::split(base_seed, rep); replications
// may execute on several threads, aggregation is in replication order.
MetricsReport run_replications(const Scenario& scenario, const PayloadGraph& graph,
                               const RoutingTable& routing, int n_reps,
                               std::uint64_t base_seed, const SimOptions& options = {},
                               int max_threads = 0);

}  // namespace modemflow
