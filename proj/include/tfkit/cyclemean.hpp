#pragma once

#include <vector>

namespace tfkit {

struct Edge {
    int from, to;
    double weight;
};

struct CycleMeanResult {
    double mean;
    std::vector<int> cycle; // node ids along one optimizing cycle, in order
};

/// Maximum mean-weight cycle by Karp's recurrence; exact up to double
/// rounding. Throws std::invalid_argument when the graph is acyclic.
CycleMeanResult max_cycle_mean(int nodes, const std::vector<Edge>& edges);

} // namespace tfkit
