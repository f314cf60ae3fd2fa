#include "tfkit/cyclemean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tfkit {

CycleMeanResult max_cycle_mean(int nodes, const std::vector<Edge>& edges) {
    if (nodes <= 0) throw std::invalid_argument("max_cycle_mean: empty graph");
    const double ninf = -std::numeric_limits<double>::infinity();
    const int n = nodes;

    // d[k][v]: max weight of a k-edge walk ending at v; parent for retrieval.
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(n, ninf));
    std::vector<std::vector<int>> parent(n + 1, std::vector<int>(n, -1));
    for (int v = 0; v < n; ++v) d[0][v] = 0.0;
    for (int k = 1; k <= n; ++k)
        for (const Edge& e : edges)
            if (d[k - 1][e.from] != ninf &&
                d[k - 1][e.from] + e.weight > d[k][e.to]) {
                d[k][e.to] = d[k - 1][e.from] + e.weight;
                parent[k][e.to] = e.from;
            }

    double best = ninf;
    int best_v = -1;
    for (int v = 0; v < n; ++v) {
        if (d[n][v] == ninf) continue;
        double m = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            if (d[k][v] == ninf) continue;
            m = std::min(m, (d[n][v] - d[k][v]) / (n - k));
        }
        if (m > best) { best = m; best_v = v; }
    }
    if (best_v < 0) throw std::invalid_argument("max_cycle_mean: graph has no cycle");

    // Some cycle on the optimal n-edge walk to best_v attains the maximum
    // mean; peel off every simple cycle of the walk and keep the best one.
    std::vector<int> walk(n + 1);
    walk[n] = best_v;
    for (int k = n; k > 0; --k) walk[k - 1] = parent[k][walk[k]];

    std::vector<std::vector<double>> w(n, std::vector<double>(n, ninf));
    for (const Edge& e : edges) w[e.from][e.to] = std::max(w[e.from][e.to], e.weight);

    std::vector<int> stack, pos(n, -1), cycle;
    double cycle_mean = ninf;
    for (int k = 0; k <= n; ++k) {
        const int v = walk[k];
        if (pos[v] >= 0) {
            double sum = 0.0;
            const int len = static_cast<int>(stack.size()) - pos[v];
            for (int i = pos[v]; i < static_cast<int>(stack.size()); ++i) {
                const int next = i + 1 < static_cast<int>(stack.size())
                                     ? stack[i + 1] : v;
                sum += w[stack[i]][next];
            }
            if (sum / len > cycle_mean) {
                cycle_mean = sum / len;
                cycle.assign(stack.begin() + pos[v], stack.end());
            }
            while (static_cast<int>(stack.size()) > pos[v] + 1) {
                pos[stack.back()] = -1;
                stack.pop_back();
            }
        } else {
            pos[v] = static_cast<int>(stack.size());
            stack.push_back(v);
        }
    }
    auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    return {best, cycle};
}

} // namespace tfkit
