#pragma once

#include <vector>

namespace kanon {

/// Weighted bipartite graph over [0, left_count) x [0, right_count).
/// Weights must be nonnegative and (left, right) pairs unique.
struct BipartiteGraph {
    struct Edge {
        int left = 0;
        int right = 0;
        long long weight = 0;
    };

    int left_count = 0;
    int right_count = 0;
    std::vector<Edge> edges;

    void add_edge(int left, int right, long long weight);
};

enum class Side { Left, Right };

struct Matching {
    std::vector<BipartiteGraph::Edge> edges;
    long long total_weight = 0;
    std::vector<int> left_match;   // right endpoint or -1
    std::vector<int> right_match;  // left endpoint or -1

    bool is_covered(Side side, int vertex) const;
};

/// Exact maximum-weight matching over all matchings; vertices may stay
/// unmatched when that is optimal. Among maximum-weight matchings one of
/// maximum cardinality is returned, so zero-weight edges whose endpoints
/// are otherwise free are always included. Deterministic for a fixed input.
Matching max_weight_matching(const BipartiteGraph& g);

}  // namespace kanon
