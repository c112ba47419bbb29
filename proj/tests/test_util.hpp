#pragma once

// Shared test oracles and instance generators. Everything here is
// independent of the library's enumeration/solver code paths: the DFS
// oracle walks raw edges with an explicit stack, and the grid oracle scores
// flow splits directly from path edge lists.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "modemflow/maxmin_lp.hpp"
#include "modemflow/pathgen.hpp"
#include "modemflow/rng.hpp"
#include "modemflow/topology.hpp"

namespace testutil {

using modemflow::Commodity;
using modemflow::NodeId;
using modemflow::PathSet;
using modemflow::PayloadGraph;

// All simple node sequences source -> destination with at most max_hops
// edges, via breadth-first extension over an explicit work stack.
inline std::vector<std::vector<NodeId>> brute_force_paths(const PayloadGraph& graph,
                                                          NodeId source,
                                                          NodeId destination,
                                                          int max_hops) {
    std::vector<std::vector<NodeId>> found;
    std::vector<std::vector<NodeId>> stack{{source}};
    while (!stack.empty()) {
        std::vector<NodeId> seq = std::move(stack.back());
        stack.pop_back();
        const NodeId tail = seq.back();
        if (tail == destination && seq.size() > 1) {
            found.push_back(seq);
            continue;
        }
        if (static_cast<int>(seq.size()) - 1 == max_hops) {
            continue;
        }
        // extend by every node; keep only actual edges to unvisited nodes
        for (NodeId next = graph.node_count() - 1; next >= 0; --next) {
            if (graph.edge_index(tail, next) < 0) {
                continue;
            }
            if (std::find(seq.begin(), seq.end(), next) != seq.end()) {
                continue;
            }
            auto extended = seq;
            extended.push_back(next);
            stack.push_back(std::move(extended));
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

// Exhaustive search over flow splits discretized at demand/steps per
// commodity. Returns the best min-residual over feasible grid points, or
// nullopt when no grid point satisfies the capacity constraints.
class GridSearchOracle {
  public:
    GridSearchOracle(const PayloadGraph& graph, const std::vector<Commodity>& commodities,
                     const std::vector<PathSet>& pathsets, int steps)
        : graph_(graph), commodities_(commodities), pathsets_(pathsets), steps_(steps) {}

    std::optional<double> best_min_residual() {
        load_.assign(graph_.edges().size(), 0.0);
        best_.reset();
        descend_commodity(0);
        return best_;
    }

    // number of split combinations per commodity multiplied together
    double combination_count() const {
        double total = 1;
        for (const PathSet& ps : pathsets_) {
            const double m = static_cast<double>(ps.paths().size());
            // compositions of `steps` into m parts: C(steps + m - 1, m - 1)
            double combos = 1;
            for (int i = 1; i < m; ++i) {
                combos = combos * (steps_ + i) / i;
            }
            total *= combos;
        }
        return total;
    }

  private:
    void add_path_load(const modemflow::Path& path, double amount) {
        for (int e : path.edge_ids) {
            load_[e] += amount;
        }
    }

    bool overloaded(const modemflow::Path& path) const {
        for (int e : path.edge_ids) {
            if (load_[e] > graph_.edges()[e].capacity_bps * (1 + 1e-12) + 1e-9) {
                return true;
            }
        }
        return false;
    }

    void descend_commodity(std::size_t k) {
        if (k == commodities_.size()) {
            double min_residual = std::numeric_limits<double>::infinity();
            for (std::size_t e = 0; e < load_.size(); ++e) {
                min_residual = std::min(min_residual,
                                        graph_.edges()[e].capacity_bps - load_[e]);
            }
            if (!best_ || min_residual > *best_) {
                best_ = min_residual;
            }
            return;
        }
        descend_path(k, 0, steps_);
    }

    void descend_path(std::size_t k, std::size_t p, int remaining) {
        const auto& paths = pathsets_[k].paths();
        const double step = commodities_[k].demand_bps / steps_;
        if (p + 1 == paths.size()) {
            add_path_load(paths[p], remaining * step);
            if (!overloaded(paths[p])) {
                descend_commodity(k + 1);
            }
            add_path_load(paths[p], -remaining * step);
            return;
        }
        for (int units = 0; units <= remaining; ++units) {
            if (units > 0) {
                add_path_load(paths[p], step);
                if (overloaded(paths[p])) {
                    add_path_load(paths[p], -units * step);
                    return;  // more units only overload further
                }
            }
            descend_path(k, p + 1, remaining - units);
        }
        add_path_load(paths[p], -remaining * step);
    }

    const PayloadGraph& graph_;
    const std::vector<Commodity>& commodities_;
    const std::vector<PathSet>& pathsets_;
    int steps_;
    std::vector<double> load_;
    std::optional<double> best_;
};

// standard normal via Box-Muller
inline double normal01(modemflow::rng::Xoshiro256pp& rng) {
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace testutil
