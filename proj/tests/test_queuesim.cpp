#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "modemflow/errors.hpp"
#include "modemflow/maxmin_lp.hpp"
#include "modemflow/metrics.hpp"
#include "modemflow/queuesim.hpp"
#include "modemflow/rng.hpp"
#include "modemflow/scenario.hpp"

using namespace modemflow;

namespace {

Scenario single_station(double lambda, double mu, long long buffer, ServiceDist dist) {
    Scenario s;
    s.mode = Mode::baseline;
    s.baseline_multiplier = 1;
    s.commodity_count = 1;
    s.lambda_pps = lambda;
    s.mu_pps = mu;
    s.buffer_pkts = buffer;
    s.service_dist = dist;
    s.horizon_s = 1.0;
    s.warmup_frac = 0.1;
    return s;
}

struct Solved {
    Scenario scenario;
    PayloadGraph graph;
    RoutingTable routing;
};

Solved solve_proposed(const Scenario& scenario) {
    Solved out{scenario, build_graph(scenario), {}};
    const auto commodities = make_commodities(scenario);
    std::vector<PathSet> pathsets;
    for (const Commodity& c : commodities) {
        pathsets.push_back(enumerate_paths(out.graph, c, scenario.max_hops));
    }
    const RoutingSolution sol = solve_maxmin(out.graph, commodities, pathsets);
    out.routing = flows_to_routing_table(sol, commodities, pathsets);
    return out;
}

}  // namespace

TEST_CASE("no arrivals: zero offered, zero PLI, absent delay") {
    Scenario s = single_station(0.0, 100000, 1000000, ServiceDist::exponential);
    const RunMetrics m = simulate(s, build_graph(s), {}, 1);
    CHECK(m.total.offered == 0);
    CHECK(m.total.delivered == 0);
    CHECK(m.total.dropped == 0);
    CHECK(m.pli_pct() == 0.0);
    CHECK_FALSE(m.mean_delay_s().has_value());
}

TEST_CASE("M/M/1 mean sojourn matches 1/(mu-lambda) within the simulated CI") {
    const Scenario s = single_station(50000, 100000, 1000000, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    const MetricsReport report = run_replications(s, g, {}, 10, 4242);
    REQUIRE(report.delay.has_value());
    const double analytic = metrics::mm1_mean_sojourn(50000, 100000);  // 20 us
    CHECK(std::fabs(report.delay->mean - analytic) <= report.delay->half_width95);
    CHECK(report.pooled_pli_pct() == 0.0);  // effectively infinite buffer
}

TEST_CASE("M/D/1 mean sojourn matches Pollaczek-Khinchine within 3%") {
    const Scenario s = single_station(50000, 100000, 1000000, ServiceDist::deterministic);
    const PayloadGraph g = build_graph(s);
    const MetricsReport report = run_replications(s, g, {}, 10, 777);
    REQUIRE(report.delay.has_value());
    const double analytic = metrics::md1_mean_sojourn(50000, 100000);  // 15 us
    CHECK(std::fabs(report.delay->mean - analytic) / analytic <= 0.03);
}

TEST_CASE("M/M/1/K loss matches the blocking formula within the simulated CI") {
    Scenario s = single_station(90000, 100000, 20, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    SimOptions opts;
    opts.check_invariants = true;  // also exercises the buffer-bound assertion
    const MetricsReport report = run_replications(s, g, {}, 10, 99, opts);
    REQUIRE(report.pli.has_value());
    const double analytic = 100.0 * metrics::mm1k_blocking(0.9, 20);  // ~1.365%
    CHECK(std::fabs(report.pli->mean - analytic) <= report.pli->half_width95);
}

TEST_CASE("analytic mean falls inside the CI in at least 8 of 10 experiments") {
    const Scenario s = single_station(50000, 100000, 1000000, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    const double analytic = 20e-6;
    int covered = 0;
    for (int experiment = 0; experiment < 10; ++experiment) {
        const MetricsReport report =
            run_replications(s, g, {}, 10, rng::split(2718, experiment));
        REQUIRE(report.delay.has_value());
        if (std::fabs(report.delay->mean - analytic) <= report.delay->half_width95) {
            ++covered;
        }
    }
    CHECK(covered >= 8);
}

TEST_CASE("same seed is bit-identical, different seed is not") {
    const Scenario s = single_station(80000, 100000, 50, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    const RunMetrics a = simulate(s, g, {}, 31337);
    const RunMetrics b = simulate(s, g, {}, 31337);
    CHECK(a.total.offered == b.total.offered);
    CHECK(a.total.delivered == b.total.delivered);
    CHECK(a.total.dropped == b.total.dropped);
    CHECK(a.total.delay_sum_s == b.total.delay_sum_s);  // bitwise
    CHECK(a.total.delay_count == b.total.delay_count);

    const RunMetrics c = simulate(s, g, {}, 31338);
    CHECK(a.total.offered != c.total.offered);
}

TEST_CASE("replication seeds derive from the base seed via split") {
    const Scenario s = single_station(10000, 100000, 100, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    const MetricsReport report = run_replications(s, g, {}, 4, 5150);
    REQUIRE(report.runs.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(report.runs[i].seed == rng::split(5150, i));
        const RunMetrics direct = simulate(s, g, {}, rng::split(5150, i));
        CHECK(direct.total.offered == report.runs[i].total.offered);
        CHECK(direct.total.delay_sum_s == report.runs[i].total.delay_sum_s);
    }
}

TEST_CASE("pooled PLI equals total drops over total offered") {
    const Scenario s = single_station(95000, 100000, 10, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    const MetricsReport report = run_replications(s, g, {}, 5, 8);
    long long offered = 0;
    long long dropped = 0;
    for (const RunMetrics& run : report.runs) {
        offered += run.total.offered;
        dropped += run.total.dropped;
    }
    CHECK(report.offered == offered);
    CHECK(report.dropped == dropped);
    CHECK(report.pooled_pli_pct() ==
          doctest::Approx(100.0 * double(dropped) / double(offered)));
    CHECK(report.dropped > 0);  // overloaded with a tiny buffer
}

TEST_CASE("proposed mode: conservation and positive delays") {
    Scenario s = paper_preset(1000, 10e9, 30000);
    s.horizon_s = 0.02;
    const Solved solved = solve_proposed(s);
    SimOptions opts;
    opts.check_invariants = true;
    const RunMetrics m = simulate(solved.scenario, solved.graph, solved.routing, 7, opts);
    CHECK(m.total.offered > 0);
    CHECK(m.total.offered ==
          m.total.delivered + m.total.dropped + m.total.in_flight);
    for (const CommodityCounters& c : m.per_commodity) {
        CHECK(c.offered == c.delivered + c.dropped + c.in_flight);
        CHECK(c.in_flight >= 0);
    }
    REQUIRE(m.mean_delay_s().has_value());
    CHECK(*m.mean_delay_s() > 0);
}

TEST_CASE("delivered delay respects the deterministic lower bound") {
    Scenario s = paper_preset(1000000, 10e9, 30000);
    s.service_dist = ServiceDist::deterministic;
    s.horizon_s = 0.02;
    const Solved solved = solve_proposed(s);
    const RunMetrics m = simulate(solved.scenario, solved.graph, solved.routing, 11);
    REQUIRE(m.mean_delay_s().has_value());
    // two modem services plus at least one link transmission
    const double bound = 2.0 / s.mu_pps + (s.packet_bytes * 8.0) / s.link_rate_bps;
    CHECK(*m.mean_delay_s() >= bound);
}

TEST_CASE("transit service adds intermediate modem delay") {
    Scenario s = paper_preset(1000000, 10e9, 30000);
    s.commodities = {{0, 10, 30000}};  // 4 hops apart on the 4x4 torus
    s.commodity_count = 1;
    s.service_dist = ServiceDist::deterministic;
    s.horizon_s = 0.05;
    const Solved off = solve_proposed(s);
    const RunMetrics m_off = simulate(off.scenario, off.graph, off.routing, 5);

    Scenario st = s;
    st.transit_service = true;
    const Solved on = solve_proposed(st);
    const RunMetrics m_on = simulate(on.scenario, on.graph, on.routing, 5);

    REQUIRE(m_off.mean_delay_s().has_value());
    REQUIRE(m_on.mean_delay_s().has_value());
    CHECK(*m_on.mean_delay_s() > *m_off.mean_delay_s());
}

TEST_CASE("missing routing entries raise RoutingMismatch") {
    Scenario s = paper_preset(1000000, 10e9, 30000);
    const PayloadGraph g = build_graph(s);
    CHECK_THROWS_AS(simulate(s, g, {}, 1), RoutingMismatchError);

    const Solved solved = solve_proposed(s);
    RoutingTable truncated = solved.routing;
    truncated.entries[3].clear();
    CHECK_THROWS_AS(simulate(s, g, truncated, 1), RoutingMismatchError);
}

TEST_CASE("invalid scenario parameters raise InvalidScenario") {
    Scenario s = single_station(1000, 100000, 100, ServiceDist::exponential);
    s.mu_pps = 0;
    CHECK_THROWS_AS(simulate(s, build_single_node(), {}, 1), InvalidScenarioError);
    Scenario w = single_station(1000, 100000, 100, ServiceDist::exponential);
    w.warmup_frac = 0.9;
    CHECK_THROWS_AS(simulate(w, build_single_node(), {}, 1), InvalidScenarioError);
}

TEST_CASE("overloaded tiny buffer keeps the bound and drops the excess") {
    Scenario s = single_station(200000, 100000, 2, ServiceDist::exponential);
    const PayloadGraph g = build_graph(s);
    SimOptions opts;
    opts.check_invariants = true;
    const RunMetrics m = simulate(s, g, {}, 12, opts);
    CHECK(m.total.dropped > 0);
    // rho = 2: roughly half the packets must go
    CHECK(m.pli_pct() > 30.0);
    CHECK(m.pli_pct() < 70.0);
}
