#pragma once

#include <iosfwd>
#include <vector>

#include "modemflow/topology.hpp"

namespace modemflow {

// Source-destination traffic demand. demand_bps is the required data flow
// in bits per second.
struct Commodity {
    int id = 0;
    NodeId source = 0;
    NodeId destination = 0;
    double demand_bps = 0;
};

// Simple directed path; edge_ids index into the owning graph's edges().
struct Path {
    std::vector<NodeId> nodes;
    std::vector<int> edge_ids;
    int hops() const { return static_cast<int>(edge_ids.size()); }
};

// All hop-bounded simple paths of one commodity plus an edge -> paths index.
class PathSet {
  public:
    PathSet(int commodity_id, int edge_count, std::vector<Path> paths);

    int commodity_id() const { return commodity_id_; }
    const std::vector<Path>& paths() const { return paths_; }
    // indices of paths() traversing the edge with this graph edge index
    const std::vector<int>& paths_through(int edge_id) const { return by_edge_[edge_id]; }
    int edge_count() const { return static_cast<int>(by_edge_.size()); }

  private:
    int commodity_id_;
    std::vector<Path> paths_;
    std::vector<std::vector<int>> by_edge_;
};

// Exhaustive DFS enumeration of all simple directed source->destination
// paths with at most max_hops edges, in lexicographic node-sequence order.
// Throws NoPathFoundError when the set is empty (hop bound too small or
// graph disconnected), std::invalid_argument on bad inputs.
PathSet enumerate_paths(const PayloadGraph& graph, const Commodity& commodity,
                        int max_hops);

// Path indices through directed edge (u, v); UnknownEdgeError when (u, v)
// is not a graph edge.
const std::vector<int>& paths_through_edge(const PathSet& pathset,
                                           const PayloadGraph& graph, NodeId u,
                                           NodeId v);

// text dump, one `commodity_id: n0->n1->...->nk` line per path
void dump_paths(std::ostream& out, const PathSet& pathset);

}  // namespace modemflow
