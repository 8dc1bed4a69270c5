#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kanon/table.hpp"

namespace kanon {

/// Thrown when a clustering or vertex set fails gadget certification.
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simple undirected graph: 0-indexed vertices, no self-loops or duplicates.
struct InputGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;  // normalized (u < v), sorted

    bool has_edge(int u, int v) const;
    std::vector<int> degrees() const;
    bool is_cubic() const;
};

/// Edge-list text: one "u v" pair per line, `#` starts a comment, an
/// optional `p <n>` line fixes the vertex count (otherwise inferred).
InputGraph parse_edge_list(std::istream& in);
InputGraph parse_edge_list_string(const std::string& text);

/// Instance encoding h-clique search: one group of k+1 identical rows per
/// edge plus a deficient block of all-zero rows, k = 2h^2. Any clustering
/// of cost <= 6h^3 pinpoints an h-clique of the source graph.
struct CliqueGadget {
    Table table;
    InputGraph graph;
    long long h = 0;
    long long k = 0;       // 2h^2
    long long budget = 0;  // 6h^3
    std::vector<std::size_t> edge_row_begin;  // per edge: first of k+1 rows
    std::size_t zero_row_begin = 0;           // first all-zero row
    std::size_t zero_row_count = 0;           // k - C(h,2)
    bool clique_possible = true;              // false when C(h,2) > |E|
};

/// Builds the gadget; h must be >= 2. When the graph has fewer than C(h,2)
/// edges no h-clique can exist; the gadget is still constructed and flagged.
CliqueGadget build_clique_gadget(const InputGraph& g, long long h);

/// Moves one row of every clique-edge group into the all-zero block,
/// yielding a k-feasible clustering of cost exactly 6h^3. The clique is
/// verified first.
Clustering clique_to_clustering(const CliqueGadget& gadget, const std::vector<int>& clique);

/// Recovers the h-clique from any k-feasible clustering of cost <= 6h^3.
/// Throws CertificateError when the clustering does not have the certified
/// shape.
std::vector<int> clustering_to_clique(const CliqueGadget& gadget, const Clustering& c);

/// Instance encoding minimum vertex cover on a cubic graph into 3-column
/// 3-anonymity: 9 rows per vertex, 7 per edge, plus 3 pairwise-distant rows.
struct CoverGadget {
    Table table;
    InputGraph graph;
    long long k = 3;
    // Per vertex: rows [9v, 9v+9). Groups g1..g3 hold two rows each
    // (offsets 0-1, 2-3, 4-5), g4..g6 one row (offsets 6, 7, 8).
    // Per edge: rows [edge_row_begin(e), +7): g1 at 0, g2 at 1-2, g3 at 3,
    // g4..g6 at 4..6. The three extra rows follow at the end.
    std::vector<std::array<int, 3>> docking;  // vertex -> edge id per docking group
    std::vector<std::array<int, 2>> edge_dock;  // edge -> docking ordinal at (u, v)

    std::size_t vertex_row_begin(int v) const { return 9 * static_cast<std::size_t>(v); }
    std::size_t edge_row_begin(int e) const {
        return 9 * static_cast<std::size_t>(graph.vertex_count) + 7 * static_cast<std::size_t>(e);
    }
    std::size_t extra_row_begin() const {
        return 9 * static_cast<std::size_t>(graph.vertex_count) +
               7 * graph.edges.size();
    }
    long long cover_cost(std::size_t cover_size) const;  // 6|V| + 3|C| + 11|E| + 9
};

/// Builds the gadget for a cubic graph and verifies its pairwise-distance
/// structure. Throws std::invalid_argument when the graph is not cubic.
CoverGadget build_cover_gadget(const InputGraph& g);

/// How a vertex's nine rows are clustered.
enum class VertexPattern {
    InCover,     // three blocks pairing each 2-row group with its 1-row twin
    OutOfCover,  // docking groups merged into the incident edge blocks
    Other
};

VertexPattern classify_vertex_blocks(const CoverGadget& gadget, const Clustering& c, int vertex);

/// Canonical clustering for a verified vertex cover, of cost exactly
/// 6|V| + 3|C| + 11|E| + 9 with every block of size >= 3.
Clustering cover_to_clustering(const CoverGadget& gadget, const std::vector<int>& cover);

/// Reads the vertex cover back off a canonical clustering; verifies the
/// cover property and the cost identity. Throws CertificateError otherwise.
std::vector<int> clustering_to_cover(const CoverGadget& gadget, const Clustering& c);

}  // namespace kanon
