#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "modemflow/pathgen.hpp"
#include "modemflow/topology.hpp"

namespace modemflow {

enum class ServiceDist { exponential, deterministic };
enum class Mode { proposed, baseline };

struct CommoditySpec {
    NodeId source = 0;
    NodeId destination = 0;
    double lambda_pps = 0;
};

// Full simulation configuration. Serialized as a flat key = value document
// (see serialize_scenario); serialize -> parse -> serialize is
// byte-identical.
struct Scenario {
    int rows = 4;
    int cols = 4;
    double link_rate_bps = 10e9;
    std::string edge_list_path;  // when set, graph is loaded from this file

    int commodity_count = 8;
    std::uint64_t placement_seed = 1;
    std::vector<CommoditySpec> commodities;  // explicit; empty = generated placement

    double lambda_pps = 30000;  // per-commodity arrival rate
    double packet_bytes = 1500;
    double mu_pps = 100000;  // modem service rate
    ServiceDist service_dist = ServiceDist::exponential;
    long long buffer_pkts = 1000000;
    int max_hops = 6;
    double horizon_s = 1.0;
    double warmup_frac = 0.1;
    int reps = 10;
    std::uint64_t seed = 1;
    Mode mode = Mode::proposed;
    int baseline_multiplier = 1;
    bool transit_service = false;  // modem service at intermediate hops
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_string(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& s);

// Table-driven preset: 4x4 torus, 8 commodities, 1500-byte packets,
// mu = 100k pkt/s. lambda outside {30k..90k} requires allow_any_lambda.
Scenario paper_preset(long long buffer_pkts, double link_rate_bps, double lambda_pps,
                      bool allow_any_lambda = false);

// Centralized single-modem-bank baseline: every commodity arrives at one
// station served at multiplier * mu; no links, no routing.
Scenario baseline_single(int multiplier, const Scenario& base);

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;  // e.g. demand exceeding a cut capacity
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_scenario(const Scenario& s);

// single node for baseline mode, otherwise torus or edge-list file
PayloadGraph build_graph(const Scenario& s);

// Resolved commodity list; demand_bps = lambda * packet_bytes * 8. Generated
// placement: sources on even node ids 0,2,..,2K-2, destinations a
// placement_seed-keyed shuffle of the odd ids 1,3,..,2K-1 (every role on a
// distinct node, roles interleaved across the torus).
std::vector<Commodity> make_commodities(const Scenario& s);

std::string scenario_id(const Scenario& s);

const char* to_string(ServiceDist d);
const char* to_string(Mode m);

}  // namespace modemflow
