#include "modemflow/maxmin_lp.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "modemflow/errors.hpp"
#include "modemflow/textio.hpp"

namespace modemflow {

LpModel build_lp(const PayloadGraph& graph, const std::vector<Commodity>& commodities,
                 const std::vector<PathSet>& pathsets) {
    if (commodities.size() != pathsets.size()) {
        throw std::invalid_argument("need exactly one path set per commodity");
    }
    LpModel model;
    for (std::size_t k = 0; k < pathsets.size(); ++k) {
        if (pathsets[k].paths().empty()) {
            throw EmptyPathSetError("commodity " + std::to_string(commodities[k].id) +
                                    " has no path");
        }
        for (std::size_t p = 0; p < pathsets[k].paths().size(); ++p) {
            model.var_owner.emplace_back(static_cast<int>(k), static_cast<int>(p));
        }
    }
    const int n_flows = static_cast<int>(model.var_owner.size());
    model.z_col = n_flows;
    model.lp.num_vars = n_flows + 1;
    model.lp.objective.assign(model.lp.num_vars, 0.0);
    model.lp.objective[model.z_col] = 1.0;

    // column offset of each commodity's first path variable
    std::vector<int> base(pathsets.size(), 0);
    for (std::size_t k = 1; k < pathsets.size(); ++k) {
        base[k] = base[k - 1] + static_cast<int>(pathsets[k - 1].paths().size());
    }

    // z >= 0 (implicit in standard form) makes each epigraph row imply the
    // capacity constraint on its edge.
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        lp::DenseLp::Row row;
        row.coeffs.assign(model.lp.num_vars, 0.0);
        row.coeffs[model.z_col] = 1.0;
        for (std::size_t k = 0; k < pathsets.size(); ++k) {
            for (int p : pathsets[k].paths_through(static_cast<int>(e))) {
                row.coeffs[base[k] + p] = 1.0;
            }
        }
        row.rhs = graph.edges()[e].capacity_bps;
        row.kind = lp::RowKind::less_equal;
        model.lp.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < pathsets.size(); ++k) {
        lp::DenseLp::Row row;
        row.coeffs.assign(model.lp.num_vars, 0.0);
        for (std::size_t p = 0; p < pathsets[k].paths().size(); ++p) {
            row.coeffs[base[k] + static_cast<int>(p)] = 1.0;
        }
        row.rhs = commodities[k].demand_bps;
        row.kind = lp::RowKind::equal;
        model.lp.rows.push_back(std::move(row));
    }
    return model;
}

RoutingSolution solve_maxmin(const PayloadGraph& graph,
                             const std::vector<Commodity>& commodities,
                             const std::vector<PathSet>& pathsets) {
    const LpModel model = build_lp(graph, commodities, pathsets);
    const lp::SimplexResult lpres = lp::solve(model.lp);
    if (lpres.status == lp::SolveStatus::infeasible) {
        throw InfeasibleError(
            "demands cannot be routed within link capacities (scenario overloaded)");
    }
    if (lpres.status == lp::SolveStatus::unbounded) {
        throw Error("max-min LP unbounded; graph has no edges");
    }

    RoutingSolution sol;
    sol.flows_bps.resize(commodities.size());
    for (std::size_t k = 0; k < pathsets.size(); ++k) {
        sol.flows_bps[k].assign(pathsets[k].paths().size(), 0.0);
    }
    for (std::size_t col = 0; col < model.var_owner.size(); ++col) {
        const auto [k, p] = model.var_owner[col];
        sol.flows_bps[k][p] = lpres.x[col];
    }
    sol.objective_bps = lpres.objective;

    sol.edge_flow_bps.assign(graph.edges().size(), 0.0);
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        double total = 0;
        for (std::size_t k = 0; k < pathsets.size(); ++k) {
            for (int p : pathsets[k].paths_through(static_cast<int>(e))) {
                total += sol.flows_bps[k][p];
            }
        }
        sol.edge_flow_bps[e] = total;
    }
    double min_residual = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        const double r = graph.edges()[e].capacity_bps - sol.edge_flow_bps[e];
        if (r < min_residual) {
            min_residual = r;
            sol.min_residual_edge = static_cast<int>(e);
        }
    }
    return sol;
}

std::vector<double> residuals(const PayloadGraph& graph, const RoutingSolution& solution) {
    std::vector<double> out(graph.edges().size(), 0.0);
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        out[e] = graph.edges()[e].capacity_bps - solution.edge_flow_bps[e];
    }
    return out;
}

RoutingTable flows_to_routing_table(const RoutingSolution& solution,
                                    const std::vector<Commodity>& commodities,
                                    const std::vector<PathSet>& pathsets) {
    RoutingTable table;
    table.commodity_ids.reserve(commodities.size());
    table.entries.resize(commodities.size());
    for (std::size_t k = 0; k < commodities.size(); ++k) {
        table.commodity_ids.push_back(commodities[k].id);
        const double demand = commodities[k].demand_bps;
        const double floor = 1e-12 * demand;
        double kept = 0;
        for (std::size_t p = 0; p < solution.flows_bps[k].size(); ++p) {
            const double flow = solution.flows_bps[k][p];
            if (flow < floor) {
                continue;  // solver noise
            }
            table.entries[k].push_back({pathsets[k].paths()[p], flow / demand});
            kept += flow / demand;
        }
        for (auto& entry : table.entries[k]) {
            entry.probability /= kept;
        }
    }
    return table;
}

void write_routing_table(std::ostream& out, const RoutingTable& table) {
    out << "# routing table: commodity <id>: <node path>, <probability>\n";
    for (std::size_t k = 0; k < table.entries.size(); ++k) {
        for (const RouteEntry& entry : table.entries[k]) {
            out << "commodity " << table.commodity_ids[k] << ": ";
            for (std::size_t i = 0; i < entry.path.nodes.size(); ++i) {
                if (i) {
                    out << "->";
                }
                out << entry.path.nodes[i];
            }
            out << ", " << textio::format_fixed9(entry.probability) << '\n';
        }
    }
}

RoutingTable read_routing_table(std::istream& in, const PayloadGraph& graph,
                                const std::vector<Commodity>& commodities) {
    std::map<int, std::size_t> pos_by_id;
    for (std::size_t k = 0; k < commodities.size(); ++k) {
        pos_by_id[commodities[k].id] = k;
    }
    RoutingTable table;
    table.entries.resize(commodities.size());
    for (const Commodity& c : commodities) {
        table.commodity_ids.push_back(c.id);
    }

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::string_view text = textio::trim(line);
        if (text.empty()) {
            continue;
        }
        if (text.substr(0, 10) != "commodity ") {
            throw ParseError("expected 'commodity <id>: <path>, <probability>'", line_no);
        }
        text.remove_prefix(10);
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("missing ':' after commodity id", line_no);
        }
        const int id = static_cast<int>(textio::parse_int(text.substr(0, colon), line_no));
        const auto it = pos_by_id.find(id);
        if (it == pos_by_id.end()) {
            throw ParseError("unknown commodity id " + std::to_string(id), line_no);
        }
        const std::size_t k = it->second;
        text.remove_prefix(colon + 1);
        const auto comma = text.rfind(',');
        if (comma == std::string_view::npos) {
            throw ParseError("missing ',' before probability", line_no);
        }
        const double prob = textio::parse_double(text.substr(comma + 1), line_no);
        if (!(prob >= 0)) {
            throw ParseError("probability must be non-negative", line_no);
        }

        Path path;
        std::string nodes_text(textio::trim(text.substr(0, comma)));
        std::size_t at = 0;
        while (at < nodes_text.size()) {
            auto arrow = nodes_text.find("->", at);
            const auto tok = nodes_text.substr(
                at, arrow == std::string::npos ? std::string::npos : arrow - at);
            path.nodes.push_back(
                static_cast<NodeId>(textio::parse_int(textio::trim(tok), line_no)));
            if (arrow == std::string::npos) {
                break;
            }
            at = arrow + 2;
        }
        if (path.nodes.size() < 2) {
            throw ParseError("path needs at least two nodes", line_no);
        }
        if (path.nodes.front() != commodities[k].source ||
            path.nodes.back() != commodities[k].destination) {
            throw ParseError("path endpoints do not match commodity " + std::to_string(id),
                             line_no);
        }
        for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
            const int edge_id = graph.edge_index(path.nodes[i], path.nodes[i + 1]);
            if (edge_id < 0) {
                throw ParseError("no edge " + std::to_string(path.nodes[i]) + "->" +
                                     std::to_string(path.nodes[i + 1]) + " in graph",
                                 line_no);
            }
            path.edge_ids.push_back(edge_id);
        }
        table.entries[k].push_back({std::move(path), prob});
    }
    return table;
}

}  // namespace modemflow
