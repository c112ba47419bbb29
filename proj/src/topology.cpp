#include "modemflow/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "modemflow/errors.hpp"
#include "modemflow/textio.hpp"

namespace modemflow {

PayloadGraph::PayloadGraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    out_edges_.resize(node_count_);
    in_edges_.resize(node_count_);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        const Edge& e = edges_[i];
        if (e.from >= 0 && e.from < node_count_) {
            out_edges_[e.from].push_back(i);
        }
        if (e.to >= 0 && e.to < node_count_) {
            in_edges_[e.to].push_back(i);
        }
    }
}

int PayloadGraph::edge_index(NodeId u, NodeId v) const {
    if (u < 0 || u >= node_count_) {
        return -1;
    }
    for (int idx : out_edges_[u]) {
        if (edges_[idx].to == v) {
            return idx;
        }
    }
    return -1;
}

double PayloadGraph::out_capacity(NodeId node) const {
    double total = 0;
    for (int idx : out_edges_[node]) {
        total += edges_[idx].capacity_bps;
    }
    return total;
}

double PayloadGraph::in_capacity(NodeId node) const {
    double total = 0;
    for (int idx : in_edges_[node]) {
        total += edges_[idx].capacity_bps;
    }
    return total;
}

PayloadGraph build_torus(int rows, int cols, double link_rate_bps) {
    if (rows < 2 || cols < 2) {
        throw InvalidDimensionError("torus dimensions must both be >= 2, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!(link_rate_bps > 0)) {
        throw InvalidCapacityError("link rate must be positive, got " +
                                   textio::format_double(link_rate_bps));
    }
    const int n = rows * cols;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * 4);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const NodeId u = r * cols + c;
            const NodeId candidates[4] = {
                ((r - 1 + rows) % rows) * cols + c,  // up
                ((r + 1) % rows) * cols + c,         // down
                r * cols + (c - 1 + cols) % cols,    // left
                r * cols + (c + 1) % cols,           // right
            };
            for (NodeId v : candidates) {
                bool seen = false;
                for (const Edge& e : edges) {
                    if (e.from == u && e.to == v) {
                        seen = true;  // dimension of size 2 wraps onto itself
                        break;
                    }
                }
                if (!seen) {
                    edges.push_back({u, v, link_rate_bps});
                }
            }
        }
    }
    return PayloadGraph(n, std::move(edges));
}

PayloadGraph build_single_node() { return PayloadGraph(1, {}); }

std::optional<std::string> validate_graph(const PayloadGraph& graph) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
        const Edge& e = graph.edges()[i];
        if (e.from < 0 || e.from >= graph.node_count() || e.to < 0 ||
            e.to >= graph.node_count()) {
            return "edge " + std::to_string(i) + " (" + std::to_string(e.from) + "->" +
                   std::to_string(e.to) + "): dangling node reference";
        }
        if (e.from == e.to) {
            return "edge " + std::to_string(i) + " (" + std::to_string(e.from) + "->" +
                   std::to_string(e.to) + "): self-loop";
        }
        if (!(e.capacity_bps > 0)) {
            return "edge " + std::to_string(i) + " (" + std::to_string(e.from) + "->" +
                   std::to_string(e.to) + "): nonpositive capacity";
        }
        if (!seen.insert({e.from, e.to}).second) {
            return "edge " + std::to_string(i) + " (" + std::to_string(e.from) + "->" +
                   std::to_string(e.to) + "): duplicate directed edge";
        }
    }
    return std::nullopt;
}

PayloadGraph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    NodeId max_node = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto text = textio::trim(line);
        if (text.empty()) {
            continue;
        }
        std::istringstream fields{std::string(text)};
        std::string u_tok, v_tok, cap_tok, extra;
        if (!(fields >> u_tok >> v_tok >> cap_tok) || (fields >> extra)) {
            throw ParseError("expected 'u v capacity_bits_per_s'", line_no);
        }
        const long long u = textio::parse_int(u_tok, line_no);
        const long long v = textio::parse_int(v_tok, line_no);
        if (u < 0 || v < 0) {
            throw ParseError("node ids must be non-negative", line_no);
        }
        const double cap = textio::parse_double(cap_tok, line_no);
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), cap});
        max_node = std::max({max_node, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    return PayloadGraph(max_node + 1, std::move(edges));
}

PayloadGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open edge list file '" + path + "'");
    }
    return load_edge_list(in);
}

void save_edge_list(std::ostream& out, const PayloadGraph& graph) {
    out << "# directed edge list: u v capacity_bits_per_s\n";
    for (const Edge& e : graph.edges()) {
        out << e.from << ' ' << e.to << ' ' << textio::format_double(e.capacity_bps)
            << '\n';
    }
}

std::vector<int> hop_distances(const PayloadGraph& graph, NodeId source) {
    std::vector<int> dist(graph.node_count(), -1);
    dist[source] = 0;
    std::deque<NodeId> frontier{source};
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop_front();
        for (int idx : graph.out_edges(u)) {
            const NodeId v = graph.edges()[idx].to;
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    return dist;
}

}  // namespace modemflow
