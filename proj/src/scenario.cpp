#include "modemflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "modemflow/errors.hpp"
#include "modemflow/rng.hpp"
#include "modemflow/textio.hpp"

namespace modemflow {

using textio::format_double;
using textio::format_int;
using textio::format_uint;

const char* to_string(ServiceDist d) {
    return d == ServiceDist::exponential ? "exponential" : "deterministic";
}

const char* to_string(Mode m) { return m == Mode::proposed ? "proposed" : "baseline"; }

std::string serialize_scenario(const Scenario& s) {
    std::string out;
    auto kv = [&out](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    kv("graph.rows", format_int(s.rows));
    kv("graph.cols", format_int(s.cols));
    kv("graph.link_rate_bps", format_double(s.link_rate_bps));
    if (!s.edge_list_path.empty()) {
        kv("graph.edge_list", s.edge_list_path);
    }
    kv("commodities.count", format_int(s.commodity_count));
    kv("commodities.placement_seed", format_uint(s.placement_seed));
    for (const CommoditySpec& c : s.commodities) {
        kv("commodity", format_int(c.source) + " " + format_int(c.destination) + " " +
                            format_double(c.lambda_pps));
    }
    kv("lambda_pps", format_double(s.lambda_pps));
    kv("packet_bytes", format_double(s.packet_bytes));
    kv("mu_pps", format_double(s.mu_pps));
    kv("service_dist", to_string(s.service_dist));
    kv("buffer_pkts", format_int(s.buffer_pkts));
    kv("max_hops", format_int(s.max_hops));
    kv("horizon_s", format_double(s.horizon_s));
    kv("warmup_frac", format_double(s.warmup_frac));
    kv("reps", format_int(s.reps));
    kv("seed", format_uint(s.seed));
    kv("mode", to_string(s.mode));
    kv("baseline_multiplier", format_int(s.baseline_multiplier));
    kv("transit_service", s.transit_service ? "on" : "off");
    return out;
}

Scenario parse_scenario(std::istream& in) {
    Scenario s;
    s.commodities.clear();
    bool count_given = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string_view text = textio::trim(line);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const std::string key{textio::trim(text.substr(0, eq))};
        const std::string value{textio::trim(text.substr(eq + 1))};

        if (key == "graph.rows") {
            s.rows = static_cast<int>(textio::parse_int(value, line_no));
        } else if (key == "graph.cols") {
            s.cols = static_cast<int>(textio::parse_int(value, line_no));
        } else if (key == "graph.link_rate_bps") {
            s.link_rate_bps = textio::parse_double(value, line_no);
        } else if (key == "graph.edge_list") {
            s.edge_list_path = value;
        } else if (key == "commodities.count") {
            s.commodity_count = static_cast<int>(textio::parse_int(value, line_no));
            count_given = true;
        } else if (key == "commodities.placement_seed") {
            s.placement_seed = textio::parse_uint(value, line_no);
        } else if (key == "commodity") {
            std::istringstream fields{value};
            std::string src, dst, rate;
            if (!(fields >> src >> dst >> rate)) {
                throw ParseError("expected 'commodity = <src> <dst> <lambda_pps>'",
                                 line_no);
            }
            CommoditySpec c;
            c.source = static_cast<NodeId>(textio::parse_int(src, line_no));
            c.destination = static_cast<NodeId>(textio::parse_int(dst, line_no));
            c.lambda_pps = textio::parse_double(rate, line_no);
            s.commodities.push_back(c);
        } else if (key == "lambda_pps") {
            s.lambda_pps = textio::parse_double(value, line_no);
        } else if (key == "packet_bytes") {
            s.packet_bytes = textio::parse_double(value, line_no);
        } else if (key == "mu_pps") {
            s.mu_pps = textio::parse_double(value, line_no);
        } else if (key == "service_dist") {
            if (value == "exponential") {
                s.service_dist = ServiceDist::exponential;
            } else if (value == "deterministic") {
                s.service_dist = ServiceDist::deterministic;
            } else {
                throw ParseError("service_dist must be exponential|deterministic",
                                 line_no);
            }
        } else if (key == "buffer_pkts") {
            s.buffer_pkts = textio::parse_int(value, line_no);
        } else if (key == "max_hops") {
            s.max_hops = static_cast<int>(textio::parse_int(value, line_no));
        } else if (key == "horizon_s") {
            s.horizon_s = textio::parse_double(value, line_no);
        } else if (key == "warmup_frac") {
            s.warmup_frac = textio::parse_double(value, line_no);
        } else if (key == "reps") {
            s.reps = static_cast<int>(textio::parse_int(value, line_no));
        } else if (key == "seed") {
            s.seed = textio::parse_uint(value, line_no);
        } else if (key == "mode") {
            if (value == "proposed") {
                s.mode = Mode::proposed;
            } else if (value == "baseline") {
                s.mode = Mode::baseline;
            } else {
                throw ParseError("mode must be proposed|baseline", line_no);
            }
        } else if (key == "baseline_multiplier") {
            s.baseline_multiplier = static_cast<int>(textio::parse_int(value, line_no));
        } else if (key == "transit_service") {
            if (value == "on") {
                s.transit_service = true;
            } else if (value == "off") {
                s.transit_service = false;
            } else {
                throw ParseError("transit_service must be on|off", line_no);
            }
        } else {
            throw ParseError("unknown key '" + key + "'", line_no);
        }
    }
    if (!s.commodities.empty() && !count_given) {
        s.commodity_count = static_cast<int>(s.commodities.size());
    }
    return s;
}

Scenario parse_scenario_string(const std::string& text) {
    std::istringstream in{text};
    return parse_scenario(in);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file '" + path + "'");
    }
    return parse_scenario(in);
}

Scenario paper_preset(long long buffer_pkts, double link_rate_bps, double lambda_pps,
                      bool allow_any_lambda) {
    static const double kSweep[] = {30000, 40000, 50000, 60000, 70000, 80000, 90000};
    if (!allow_any_lambda &&
        std::none_of(std::begin(kSweep), std::end(kSweep),
                     [&](double v) { return v == lambda_pps; })) {
        throw std::invalid_argument(
            "lambda " + format_double(lambda_pps) +
            " is not one of the table sweep values; pass allow_any_lambda to override");
    }
    Scenario s;
    s.rows = 4;
    s.cols = 4;
    s.link_rate_bps = link_rate_bps;
    s.commodity_count = 8;
    s.placement_seed = 1;
    s.lambda_pps = lambda_pps;
    s.packet_bytes = 1500;
    s.mu_pps = 100000;
    s.buffer_pkts = buffer_pkts;
    s.mode = Mode::proposed;
    return s;
}

Scenario baseline_single(int multiplier, const Scenario& base) {
    if (multiplier < 1) {
        throw std::invalid_argument("baseline multiplier must be >= 1");
    }
    Scenario s = base;
    s.mode = Mode::baseline;
    s.baseline_multiplier = multiplier;
    return s;
}

PayloadGraph build_graph(const Scenario& s) {
    if (s.mode == Mode::baseline) {
        return build_single_node();
    }
    if (!s.edge_list_path.empty()) {
        return load_edge_list_file(s.edge_list_path);
    }
    return build_torus(s.rows, s.cols, s.link_rate_bps);
}

std::vector<Commodity> make_commodities(const Scenario& s) {
    std::vector<Commodity> out;
    const double bits_per_packet = s.packet_bytes * 8.0;
    if (s.mode == Mode::baseline) {
        // every commodity terminates on the single station
        const int count =
            s.commodities.empty() ? s.commodity_count : static_cast<int>(s.commodities.size());
        for (int k = 0; k < count; ++k) {
            const double rate =
                s.commodities.empty() ? s.lambda_pps : s.commodities[k].lambda_pps;
            out.push_back({k, 0, 0, rate * bits_per_packet});
        }
        return out;
    }
    if (!s.commodities.empty()) {
        for (int k = 0; k < static_cast<int>(s.commodities.size()); ++k) {
            const CommoditySpec& c = s.commodities[k];
            out.push_back({k, c.source, c.destination, c.lambda_pps * bits_per_packet});
        }
        return out;
    }
    // Generated placement: sources on even node ids, destinations a
    // seed-keyed shuffle of the odd ids. Interleaving the two roles keeps
    // every directed cut loaded well below its capacity; packing sources
    // and destinations into opposite halves of the torus would cap the
    // routable demand at the 8-edge row cut.
    const int k_count = s.commodity_count;
    std::vector<NodeId> dests(k_count);
    for (int i = 0; i < k_count; ++i) {
        dests[i] = 2 * i + 1;
    }
    rng::Xoshiro256pp shuffle_rng(rng::split(s.placement_seed, 0x706c6163));  // "plac"
    for (int i = k_count - 1; i > 0; --i) {
        const int j = static_cast<int>(shuffle_rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(dests[i], dests[j]);
    }
    for (int k = 0; k < k_count; ++k) {
        out.push_back({k, 2 * k, dests[k], s.lambda_pps * bits_per_packet});
    }
    return out;
}

ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport report;
    auto bad = [&report](const std::string& msg) { report.violations.push_back(msg); };

    if (s.packet_bytes <= 0) {
        bad("nonpositive packet size");
    }
    if (s.mu_pps <= 0) {
        bad("nonpositive service rate");
    }
    if (s.buffer_pkts < 1) {
        bad("buffer must hold at least 1 packet");
    }
    if (s.max_hops < 1) {
        bad("max_hops must be >= 1");
    }
    if (s.horizon_s <= 0) {
        bad("nonpositive horizon");
    }
    if (s.warmup_frac < 0 || s.warmup_frac > 0.5) {
        bad("warmup fraction must be in [0, 0.5]");
    }
    if (s.reps < 1) {
        bad("replication count must be >= 1");
    }
    if (s.baseline_multiplier < 1) {
        bad("baseline multiplier must be >= 1");
    }
    if (s.mode == Mode::proposed && s.edge_list_path.empty() && (s.rows < 2 || s.cols < 2)) {
        bad("torus dimensions must both be >= 2");
    }
    if (s.mode == Mode::proposed && s.link_rate_bps <= 0 && s.edge_list_path.empty()) {
        bad("nonpositive link rate");
    }

    if (s.commodities.empty()) {
        if (s.commodity_count < 1) {
            bad("commodity count must be >= 1");
        }
        if (s.lambda_pps <= 0) {
            bad("nonpositive rate");
        }
    } else {
        if (s.commodity_count != static_cast<int>(s.commodities.size())) {
            bad("commodities.count does not match explicit commodity lines");
        }
        for (const CommoditySpec& c : s.commodities) {
            if (c.lambda_pps <= 0) {
                bad("nonpositive rate");
            }
        }
    }

    PayloadGraph graph;
    bool have_graph = false;
    try {
        graph = build_graph(s);
        have_graph = true;
    } catch (const Error& e) {
        bad(e.what());
    }
    if (!have_graph) {
        return report;
    }
    if (const auto violation = validate_graph(graph)) {
        bad("graph: " + *violation);
    }

    std::vector<Commodity> commodities;
    try {
        commodities = make_commodities(s);
    } catch (const std::exception& e) {
        bad(e.what());
        return report;
    }
    if (s.mode == Mode::proposed && s.commodities.empty() &&
        2 * s.commodity_count > graph.node_count()) {
        bad("generated placement needs at least 2x commodity count nodes");
    }

    std::vector<double> source_demand(graph.node_count(), 0.0);
    std::vector<double> dest_demand(graph.node_count(), 0.0);
    for (const Commodity& c : commodities) {
        if (c.source < 0 || c.source >= graph.node_count()) {
            bad("commodity " + std::to_string(c.id) + ": unknown node " +
                std::to_string(c.source));
            continue;
        }
        if (c.destination < 0 || c.destination >= graph.node_count()) {
            bad("commodity " + std::to_string(c.id) + ": unknown node " +
                std::to_string(c.destination));
            continue;
        }
        if (s.mode == Mode::proposed && c.source == c.destination) {
            bad("commodity " + std::to_string(c.id) + ": source equals destination");
            continue;
        }
        source_demand[c.source] += c.demand_bps;
        dest_demand[c.destination] += c.demand_bps;
    }
    if (s.mode == Mode::proposed) {
        for (NodeId v = 0; v < graph.node_count(); ++v) {
            if (source_demand[v] > graph.out_capacity(v)) {
                report.warnings.push_back(
                    "demand " + format_double(source_demand[v]) + " bps out of node " +
                    std::to_string(v) + " exceeds its egress cut capacity " +
                    format_double(graph.out_capacity(v)));
            }
            if (dest_demand[v] > graph.in_capacity(v)) {
                report.warnings.push_back(
                    "demand " + format_double(dest_demand[v]) + " bps into node " +
                    std::to_string(v) + " exceeds its ingress cut capacity " +
                    format_double(graph.in_capacity(v)));
            }
        }
    }
    return report;
}

std::string scenario_id(const Scenario& s) {
    std::string id;
    if (s.mode == Mode::baseline) {
        id = "baseline" + format_int(s.baseline_multiplier) + "x";
    } else if (!s.edge_list_path.empty()) {
        id = "proposed_custom";
    } else {
        id = "proposed_" + format_int(s.rows) + "x" + format_int(s.cols) + "_r" +
             format_double(s.link_rate_bps);
    }
    id += "_b" + format_int(s.buffer_pkts) + "_l" + format_double(s.lambda_pps);
    return id;
}

}  // namespace modemflow
