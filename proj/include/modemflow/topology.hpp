#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace modemflow {

using NodeId = int;

struct Edge {
    NodeId from;
    NodeId to;
    double capacity_bps;
};

// Directed graph of modem-bank nodes with per-link capacities. Nodes are
// dense integers 0..N-1; a torus cell (r,c) maps to id r*cols+c. Immutable
// after construction, safe to share across threads.
class PayloadGraph {
  public:
    PayloadGraph() = default;
    PayloadGraph(int node_count, std::vector<Edge> edges);

    int node_count() const { return node_count_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // indices into edges() of the edges leaving `node`
    const std::vector<int>& out_edges(NodeId node) const { return out_edges_[node]; }
    const std::vector<int>& in_edges(NodeId node) const { return in_edges_[node]; }

    // index of directed edge (u, v), or -1 when absent
    int edge_index(NodeId u, NodeId v) const;

    double out_capacity(NodeId node) const;
    double in_capacity(NodeId node) const;

  private:
    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<std::vector<int>> in_edges_;
};

// rows x cols torus with every link at link_rate_bps. Wrap neighbors that
// coincide (dimension of size 2) are merged to keep the graph simple.
// Throws InvalidDimensionError / InvalidCapacityError.
PayloadGraph build_torus(int rows, int cols, double link_rate_bps);

// one modem bank, no links (centralized baseline)
PayloadGraph build_single_node();

// First violated structural invariant (self-loop, duplicate edge,
// nonpositive capacity, dangling node reference), or nullopt when valid.
std::optional<std::string> validate_graph(const PayloadGraph& graph);

// Plain-text edge list: one `u v capacity_bits_per_s` line per directed
// edge, `#` comments; node count inferred from the highest id.
PayloadGraph load_edge_list(std::istream& in);
PayloadGraph load_edge_list_file(const std::string& path);
void save_edge_list(std::ostream& out, const PayloadGraph& graph);

// hop distances from `source` to every node (-1 when unreachable)
std::vector<int> hop_distances(const PayloadGraph& graph, NodeId source);

}  // namespace modemflow
