#include "modemflow/pathgen.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "modemflow/errors.hpp"

namespace modemflow {

PathSet::PathSet(int commodity_id, int edge_count, std::vector<Path> paths)
    : commodity_id_(commodity_id), paths_(std::move(paths)), by_edge_(edge_count) {
    for (int p = 0; p < static_cast<int>(paths_.size()); ++p) {
        for (int e : paths_[p].edge_ids) {
            by_edge_[e].push_back(p);
        }
    }
}

namespace {

struct DfsState {
    const PayloadGraph* graph;
    NodeId destination;
    int max_hops;
    std::vector<char> visited;
    Path current;
    std::vector<Path>* out;
    std::vector<std::vector<int>> sorted_out;  // out-edge ids, ascending by head
};

void extend(DfsState& st, NodeId node) {
    if (node == st.destination) {
        st.out->push_back(st.current);
        return;  // a simple path cannot revisit the destination
    }
    if (static_cast<int>(st.current.edge_ids.size()) == st.max_hops) {
        return;
    }
    for (int edge_id : st.sorted_out[node]) {
        const NodeId next = st.graph->edges()[edge_id].to;
        if (st.visited[next]) {
            continue;
        }
        st.visited[next] = 1;
        st.current.nodes.push_back(next);
        st.current.edge_ids.push_back(edge_id);
        extend(st, next);
        st.current.edge_ids.pop_back();
        st.current.nodes.pop_back();
        st.visited[next] = 0;
    }
}

}  // namespace

PathSet enumerate_paths(const PayloadGraph& graph, const Commodity& commodity,
                        int max_hops) {
    if (commodity.source < 0 || commodity.source >= graph.node_count() ||
        commodity.destination < 0 || commodity.destination >= graph.node_count()) {
        throw std::invalid_argument("commodity endpoints must be graph nodes");
    }
    if (commodity.source == commodity.destination) {
        throw std::invalid_argument("commodity source equals destination");
    }
    if (max_hops < 1) {
        throw std::invalid_argument("max_hops must be >= 1");
    }

    DfsState st;
    st.graph = &graph;
    st.destination = commodity.destination;
    st.max_hops = max_hops;
    st.visited.assign(graph.node_count(), 0);
    std::vector<Path> paths;
    st.out = &paths;

    // Visiting out-neighbors in ascending node id makes the DFS emit paths
    // in lexicographic node-sequence order.
    st.sorted_out.resize(graph.node_count());
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        st.sorted_out[u] = graph.out_edges(u);
        std::sort(st.sorted_out[u].begin(), st.sorted_out[u].end(),
                  [&](int a, int b) { return graph.edges()[a].to < graph.edges()[b].to; });
    }

    st.visited[commodity.source] = 1;
    st.current.nodes.push_back(commodity.source);
    extend(st, commodity.source);

    if (paths.empty()) {
        throw NoPathFoundError("no simple path from " + std::to_string(commodity.source) +
                               " to " + std::to_string(commodity.destination) +
                               " within " + std::to_string(max_hops) + " hops");
    }
    return PathSet(commodity.id, static_cast<int>(graph.edges().size()),
                   std::move(paths));
}

const std::vector<int>& paths_through_edge(const PathSet& pathset,
                                           const PayloadGraph& graph, NodeId u,
                                           NodeId v) {
    const int edge_id = graph.edge_index(u, v);
    if (edge_id < 0) {
        throw UnknownEdgeError("(" + std::to_string(u) + ", " + std::to_string(v) +
                               ") is not a graph edge");
    }
    return pathset.paths_through(edge_id);
}

void dump_paths(std::ostream& out, const PathSet& pathset) {
    for (const Path& path : pathset.paths()) {
        out << pathset.commodity_id() << ": ";
        for (std::size_t i = 0; i < path.nodes.size(); ++i) {
            if (i) {
                out << "->";
            }
            out << path.nodes[i];
        }
        out << '\n';
    }
}

}  // namespace modemflow
