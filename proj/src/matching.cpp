#include "kanon/matching.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace kanon {

void BipartiteGraph::add_edge(int left, int right, long long weight) {
    if (left < 0 || left >= left_count || right < 0 || right >= right_count)
        throw std::invalid_argument("matching: edge endpoint out of range");
    if (weight < 0) throw std::invalid_argument("matching: negative edge weight");
    edges.push_back(Edge{left, right, weight});
}

bool Matching::is_covered(Side side, int vertex) const {
    const auto& match = side == Side::Left ? left_match : right_match;
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= match.size())
        throw std::invalid_argument("matching: vertex out of range");
    return match[static_cast<std::size_t>(vertex)] != -1;
}

namespace {

// Minimum-cost perfect assignment on a dense square matrix via shortest
// augmenting paths with potentials. 1-indexed internally; p[j] = row
// assigned to column j.
std::vector<int> solve_assignment(const std::vector<std::vector<long long>>& cost) {
    const int n = static_cast<int>(cost.size());
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        minv.assign(n + 1, kInf);
        used.assign(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            long long delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    return p;
}

}  // namespace

Matching max_weight_matching(const BipartiteGraph& g) {
    if (g.left_count < 0 || g.right_count < 0)
        throw std::invalid_argument("matching: negative vertex count");

    Matching m;
    m.left_match.assign(static_cast<std::size_t>(g.left_count), -1);
    m.right_match.assign(static_cast<std::size_t>(g.right_count), -1);
    if (g.left_count == 0 || g.right_count == 0) {
        if (!g.edges.empty()) throw std::invalid_argument("matching: edge endpoint out of range");
        return m;
    }

    // Scale so total weight dominates and cardinality breaks ties.
    const long long scale = static_cast<long long>(std::min(g.left_count, g.right_count)) + 1;
    constexpr long long kLimit = std::numeric_limits<long long>::max() / 8;

    std::unordered_map<long long, std::size_t> edge_at;
    edge_at.reserve(g.edges.size() * 2);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        if (edge.left < 0 || edge.left >= g.left_count || edge.right < 0 ||
            edge.right >= g.right_count)
            throw std::invalid_argument("matching: edge endpoint out of range");
        if (edge.weight < 0) throw std::invalid_argument("matching: negative edge weight");
        if (edge.weight > kLimit / scale) throw std::overflow_error("matching: weight too large");
        long long key = static_cast<long long>(edge.left) * g.right_count + edge.right;
        if (!edge_at.emplace(key, e).second)
            throw std::invalid_argument("matching: duplicate edge");
    }

    const int n = std::max(g.left_count, g.right_count);
    std::vector<std::vector<long long>> cost(n, std::vector<long long>(n, 0));
    for (const auto& edge : g.edges)
        cost[edge.left][edge.right] = -(edge.weight * scale + 1);

    std::vector<int> p = solve_assignment(cost);
    for (int j = 1; j <= n; ++j) {
        int left = p[j] - 1;
        int right = j - 1;
        if (left >= g.left_count || right >= g.right_count) continue;
        auto it = edge_at.find(static_cast<long long>(left) * g.right_count + right);
        if (it == edge_at.end()) continue;
        const auto& edge = g.edges[it->second];
        m.edges.push_back(edge);
        m.total_weight += edge.weight;
        m.left_match[static_cast<std::size_t>(left)] = right;
        m.right_match[static_cast<std::size_t>(right)] = left;
    }
    return m;
}

}  // namespace kanon
