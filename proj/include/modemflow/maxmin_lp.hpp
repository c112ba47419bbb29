#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "modemflow/pathgen.hpp"
#include "modemflow/simplex.hpp"
#include "modemflow/topology.hpp"

namespace modemflow {

// Epigraph form of the max-min residual-capacity problem:
//   maximize z  s.t.  z + sum of path flows through (u,v) <= c(u,v) per edge,
//   per-commodity flows sum to the demand, all variables >= 0.
// Columns are path flows grouped by commodity (pathset order), then z.
// Rows are edges in graph order, then one equality per commodity.
struct LpModel {
    lp::DenseLp lp;
    std::vector<std::pair<int, int>> var_owner;  // column -> (commodity pos, path idx)
    int z_col = 0;
};

// Throws EmptyPathSetError when a commodity has no path.
LpModel build_lp(const PayloadGraph& graph, const std::vector<Commodity>& commodities,
                 const std::vector<PathSet>& pathsets);

struct RoutingSolution {
    double objective_bps = 0;                    // z*: achieved minimum residual
    std::vector<std::vector<double>> flows_bps;  // [commodity pos][path idx]
    std::vector<double> edge_flow_bps;           // total routed flow per edge
    int min_residual_edge = -1;
};

// Deterministic optimum of the max-min LP. Throws InfeasibleError when the
// demands cannot be routed within link capacities.
RoutingSolution solve_maxmin(const PayloadGraph& graph,
                             const std::vector<Commodity>& commodities,
                             const std::vector<PathSet>& pathsets);

// residual(u,v) = c(u,v) - total flow, per edge in graph order
std::vector<double> residuals(const PayloadGraph& graph, const RoutingSolution& solution);

struct RouteEntry {
    Path path;
    double probability = 0;
};

// Per-commodity path split probabilities, zero-flow paths pruned.
struct RoutingTable {
    std::vector<int> commodity_ids;                // parallel to entries
    std::vector<std::vector<RouteEntry>> entries;  // [commodity pos]
};

// probability = flow / demand; paths below 1e-12 * demand are pruned and the
// rest renormalized
RoutingTable flows_to_routing_table(const RoutingSolution& solution,
                                    const std::vector<Commodity>& commodities,
                                    const std::vector<PathSet>& pathsets);

// text records `commodity <id>: n0->n1->...->nk, <probability>` with
// probabilities printed to 9 decimal places
void write_routing_table(std::ostream& out, const RoutingTable& table);
RoutingTable read_routing_table(std::istream& in, const PayloadGraph& graph,
                                const std::vector<Commodity>& commodities);

}  // namespace modemflow
