#include "kanon/reductions.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace kanon {

bool InputGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    std::pair<int, int> e{std::min(u, v), std::max(u, v)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> InputGraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
    for (const auto& [u, v] : edges) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

bool InputGraph::is_cubic() const {
    if (vertex_count == 0) return false;
    for (int d : degrees())
        if (d != 3) return false;
    return true;
}

InputGraph parse_edge_list(std::istream& in) {
    InputGraph g;
    int declared = -1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "p") {
            if (!(ls >> declared) || declared < 0)
                throw std::invalid_argument("graph: bad vertex count on line " +
                                            std::to_string(line_no));
            continue;
        }
        int u, v;
        try {
            u = std::stoi(first);
        } catch (const std::exception&) {
            throw std::invalid_argument("graph: bad token on line " + std::to_string(line_no));
        }
        if (!(ls >> v))
            throw std::invalid_argument("graph: expected two vertex ids on line " +
                                        std::to_string(line_no));
        if (u < 0 || v < 0)
            throw std::invalid_argument("graph: negative vertex id on line " +
                                        std::to_string(line_no));
        if (u == v)
            throw std::invalid_argument("graph: self-loop on line " + std::to_string(line_no));
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
        g.vertex_count = std::max(g.vertex_count, std::max(u, v) + 1);
    }
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
        throw std::invalid_argument("graph: duplicate edge");
    if (declared >= 0) {
        if (g.vertex_count > declared)
            throw std::invalid_argument("graph: edge endpoint exceeds declared vertex count");
        g.vertex_count = declared;
    }
    return g;
}

InputGraph parse_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

namespace {

long long choose2(long long h) { return h * (h - 1) / 2; }

std::string clique_edge_symbol(int u, int v) {
    return "e" + std::to_string(u) + "_" + std::to_string(v);
}

}  // namespace

CliqueGadget build_clique_gadget(const InputGraph& g, long long h) {
    if (h < 2) throw std::invalid_argument("clique gadget: h must be >= 2");
    if (g.edges.empty()) throw std::invalid_argument("clique gadget: graph has no edges");

    CliqueGadget gadget;
    gadget.graph = g;
    gadget.h = h;
    gadget.k = 2 * h * h;
    gadget.budget = 6 * h * h * h;
    gadget.zero_row_count = static_cast<std::size_t>(gadget.k - choose2(h));
    gadget.clique_possible = static_cast<long long>(g.edges.size()) >= choose2(h);

    const std::size_t columns = static_cast<std::size_t>(2 * h) + g.vertex_count;
    std::vector<std::vector<std::string>> records;
    records.reserve(static_cast<std::size_t>(gadget.k + 1) * g.edges.size() +
                    gadget.zero_row_count);

    for (const auto& [u, v] : g.edges) {
        gadget.edge_row_begin.push_back(records.size());
        std::vector<std::string> row(columns, "0");
        for (long long c = 0; c < 2 * h; ++c) row[static_cast<std::size_t>(c)] = clique_edge_symbol(u, v);
        row[static_cast<std::size_t>(2 * h) + u] = "1";
        row[static_cast<std::size_t>(2 * h) + v] = "1";
        for (long long x = 0; x <= gadget.k; ++x) records.push_back(row);
    }
    gadget.zero_row_begin = records.size();
    records.insert(records.end(), gadget.zero_row_count,
                   std::vector<std::string>(columns, "0"));

    gadget.table = Table::from_strings(records);

    // Every all-zero row must disagree with every edge row on the whole
    // leading band; the recovery argument rests on it.
    const Row& zero = gadget.table.row(gadget.zero_row_begin);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Row& r = gadget.table.row(gadget.edge_row_begin[e]);
        for (long long c = 0; c < 2 * h; ++c)
            if (r.entries[static_cast<std::size_t>(c)] == zero.entries[static_cast<std::size_t>(c)])
                throw std::logic_error("clique gadget: leading band collision");
    }
    return gadget;
}

Clustering clique_to_clustering(const CliqueGadget& gadget, const std::vector<int>& clique) {
    if (static_cast<long long>(clique.size()) != gadget.h)
        throw std::invalid_argument("clique gadget: expected exactly h vertices");
    std::set<int> members(clique.begin(), clique.end());
    if (members.size() != clique.size())
        throw std::invalid_argument("clique gadget: repeated vertex");
    for (int v : clique)
        if (v < 0 || v >= gadget.graph.vertex_count)
            throw std::invalid_argument("clique gadget: vertex out of range");
    for (int u : clique)
        for (int v : clique)
            if (u < v && !gadget.graph.has_edge(u, v))
                throw std::invalid_argument("clique gadget: vertices are not a clique");

    std::vector<std::size_t> zero_block;
    for (std::size_t i = 0; i < gadget.zero_row_count; ++i)
        zero_block.push_back(gadget.zero_row_begin + i);

    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t e = 0; e < gadget.graph.edges.size(); ++e) {
        const auto& [u, v] = gadget.graph.edges[e];
        const std::size_t begin = gadget.edge_row_begin[e];
        const bool in_clique = members.count(u) && members.count(v);
        std::vector<std::size_t> block;
        for (long long x = 0; x <= gadget.k; ++x) block.push_back(begin + static_cast<std::size_t>(x));
        if (in_clique) {
            zero_block.push_back(block.front());
            block.erase(block.begin());
        }
        blocks.push_back(std::move(block));
    }
    blocks.push_back(std::move(zero_block));

    Clustering c = make_clustering(gadget.table, std::move(blocks));
    if (c.cost != gadget.budget)
        throw std::logic_error("clique gadget: forward construction cost mismatch");
    if (!c.is_k_feasible(gadget.k))
        throw std::logic_error("clique gadget: forward construction below k");
    return c;
}

std::vector<int> clustering_to_clique(const CliqueGadget& gadget, const Clustering& c) {
    const Clustering norm = make_clustering(gadget.table, c.blocks);  // validates and sorts
    if (!norm.is_k_feasible(gadget.k))
        throw std::invalid_argument("clique gadget: clustering is not k-feasible");
    if (norm.cost > gadget.budget)
        throw std::invalid_argument("clique gadget: clustering cost exceeds 6h^3");

    std::size_t zero_block = norm.blocks.size();
    for (std::size_t b = 0; b < norm.blocks.size(); ++b)
        if (std::binary_search(norm.blocks[b].begin(), norm.blocks[b].end(),
                               gadget.zero_row_begin))
            zero_block = b;
    if (zero_block == norm.blocks.size())
        throw CertificateError("clique gadget: all-zero rows not found in any block");
    const auto& block = norm.blocks[zero_block];
    for (std::size_t i = 0; i < gadget.zero_row_count; ++i)
        if (!std::binary_search(block.begin(), block.end(), gadget.zero_row_begin + i))
            throw CertificateError("clique gadget: all-zero rows are split across blocks");

    std::set<std::pair<int, int>> found_edges;
    std::size_t edge_rows = 0;
    for (std::size_t idx : block) {
        if (idx >= gadget.zero_row_begin) continue;
        std::size_t e = 0;
        while (e + 1 < gadget.edge_row_begin.size() && gadget.edge_row_begin[e + 1] <= idx) ++e;
        found_edges.insert(gadget.graph.edges[e]);
        ++edge_rows;
    }
    if (edge_rows != static_cast<std::size_t>(choose2(gadget.h)))
        throw CertificateError("clique gadget: expected exactly C(h,2) edge rows beside the zeros");

    std::set<int> vertices;
    for (const auto& [u, v] : found_edges) {
        vertices.insert(u);
        vertices.insert(v);
    }
    if (static_cast<long long>(vertices.size()) != gadget.h)
        throw CertificateError("clique gadget: recovered vertex set is not of size h");
    for (int u : vertices)
        for (int v : vertices)
            if (u < v && !found_edges.count({u, v}))
                throw CertificateError("clique gadget: recovered vertices are not a clique");
    return {vertices.begin(), vertices.end()};
}

namespace {

std::string vertex_symbol(int v) { return "v" + std::to_string(v); }
std::string private_symbol(int v, int ordinal) {  // 0-based docking ordinal
    return "v" + std::to_string(v) + "p" + std::to_string(ordinal + 1);
}
std::string cover_edge_symbol(int u, int v) {
    return "e" + std::to_string(u) + "_" + std::to_string(v);
}

struct RowTag {
    int kind;   // 0 vertex, 1 edge, 2 extra
    int owner;  // vertex or edge id
    int group;  // 1..6 within its block family
};

std::vector<RowTag> tag_rows(const CoverGadget& g) {
    std::vector<RowTag> tags(g.table.row_count());
    static constexpr int kVertexGroup[9] = {1, 1, 2, 2, 3, 3, 4, 5, 6};
    static constexpr int kEdgeGroup[7] = {1, 2, 2, 3, 4, 5, 6};
    for (int v = 0; v < g.graph.vertex_count; ++v)
        for (int o = 0; o < 9; ++o)
            tags[g.vertex_row_begin(v) + static_cast<std::size_t>(o)] = {0, v, kVertexGroup[o]};
    for (std::size_t e = 0; e < g.graph.edges.size(); ++e)
        for (int o = 0; o < 7; ++o)
            tags[g.edge_row_begin(static_cast<int>(e)) + static_cast<std::size_t>(o)] = {
                1, static_cast<int>(e), kEdgeGroup[o]};
    for (int o = 0; o < 3; ++o) tags[g.extra_row_begin() + static_cast<std::size_t>(o)] = {2, o, 0};
    return tags;
}

// The reduction only works if the pairwise distances have exactly the shape
// below; verified for every built gadget.
void verify_distances(const CoverGadget& g) {
    const auto tags = tag_rows(g);
    const std::size_t n = g.table.row_count();
    auto fail = [](const char* what) { throw std::logic_error(std::string("cover gadget: ") + what); };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const RowTag& ta = tags[a];
            const RowTag& tb = tags[b];
            const int d = hamming(g.table.row(a), g.table.row(b));
            if (ta.kind == 2 || tb.kind == 2) {
                if (d != 3) fail("an extra row is not at distance 3 from everything");
                continue;
            }
            if (ta.kind == tb.kind && ta.owner == tb.owner) {
                if (ta.group == tb.group) {
                    if (d != 0) fail("rows of one group differ");
                } else if (ta.kind == 0) {
                    int p = std::min(ta.group, tb.group), q = std::max(ta.group, tb.group);
                    if (d > 2) fail("vertex-internal distance above 2");
                    if ((d == 1) != (q == p + 3 || p >= 4)) fail("vertex-internal distance-1 shape");
                } else {
                    int p = std::min(ta.group, tb.group), q = std::max(ta.group, tb.group);
                    if (d > 2) fail("edge-internal distance above 2");
                    if ((d == 1) != ((p == 1 && q == 2) || (p == 2 && q == 3)))
                        fail("edge-internal distance-1 shape");
                }
                continue;
            }
            if (ta.kind == tb.kind) {  // different vertices or different edges
                if (d != 3) fail("cross-block distance is not 3");
                continue;
            }
            const RowTag& te = ta.kind == 1 ? ta : tb;
            const RowTag& tv = ta.kind == 1 ? tb : ta;
            const auto& [u, v] = g.graph.edges[static_cast<std::size_t>(te.owner)];
            if (tv.owner != u && tv.owner != v) {
                if (d != 3) fail("edge row near a foreign vertex");
                continue;
            }
            const bool first_side = tv.owner == u;
            const int dock = g.edge_dock[static_cast<std::size_t>(te.owner)][first_side ? 0 : 1] + 1;
            const int own_group = first_side ? 1 : 3;
            if ((d == 1) != (te.group == own_group && tv.group == dock))
                fail("docking distance-1 shape");
            if (d == 2 && tv.group != dock && tv.group != dock + 3)
                fail("distance-2 outside the docking neighborhood");
        }
    }
}

}  // namespace

long long CoverGadget::cover_cost(std::size_t cover_size) const {
    return 6ll * graph.vertex_count + 3ll * static_cast<long long>(cover_size) +
           11ll * static_cast<long long>(graph.edges.size()) + 9;
}

CoverGadget build_cover_gadget(const InputGraph& g) {
    if (!g.is_cubic())
        throw std::invalid_argument("cover gadget: the source graph must be cubic");

    CoverGadget gadget;
    gadget.graph = g;
    gadget.docking.assign(static_cast<std::size_t>(g.vertex_count), {-1, -1, -1});
    gadget.edge_dock.assign(g.edges.size(), {-1, -1});
    std::vector<int> filled(static_cast<std::size_t>(g.vertex_count), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {  // edges sorted: docking by edge order
        const auto& [u, v] = g.edges[e];
        gadget.edge_dock[e][0] = filled[static_cast<std::size_t>(u)];
        gadget.edge_dock[e][1] = filled[static_cast<std::size_t>(v)];
        gadget.docking[static_cast<std::size_t>(u)][static_cast<std::size_t>(filled[static_cast<std::size_t>(u)]++)] =
            static_cast<int>(e);
        gadget.docking[static_cast<std::size_t>(v)][static_cast<std::size_t>(filled[static_cast<std::size_t>(v)]++)] =
            static_cast<int>(e);
    }

    std::vector<std::vector<std::string>> records;
    records.reserve(9 * static_cast<std::size_t>(g.vertex_count) + 7 * g.edges.size() + 3);
    for (int v = 0; v < g.vertex_count; ++v) {
        for (int h = 0; h < 3; ++h) {
            std::vector<std::string> row{private_symbol(v, h), vertex_symbol(v),
                                         private_symbol(v, h)};
            records.push_back(row);
            records.push_back(row);
        }
        for (int h = 0; h < 3; ++h)
            records.push_back({vertex_symbol(v), vertex_symbol(v), private_symbol(v, h)});
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& [u, v] = g.edges[e];
        const std::string mid = cover_edge_symbol(u, v);
        const std::string su = private_symbol(u, gadget.edge_dock[e][0]);
        const std::string sv = private_symbol(v, gadget.edge_dock[e][1]);
        records.push_back({su, mid, su});
        records.push_back({su, mid, sv});
        records.push_back({su, mid, sv});
        records.push_back({sv, mid, sv});
        for (int t = 4; t <= 6; ++t) {
            const std::string st = mid + "t" + std::to_string(t);
            records.push_back({st, mid, st});
        }
    }
    for (int o = 1; o <= 3; ++o) {
        const std::string w = "w" + std::to_string(o);
        records.push_back({w, w, w});
    }

    gadget.table = Table::from_strings(records);
    verify_distances(gadget);
    return gadget;
}

namespace {

// Row-index sets of the canonical per-vertex blocks.
std::vector<std::size_t> paired_block(const CoverGadget& g, int v, int t) {  // t in 0..2
    const std::size_t vb = g.vertex_row_begin(v);
    return {vb + 2 * static_cast<std::size_t>(t), vb + 2 * static_cast<std::size_t>(t) + 1,
            vb + 6 + static_cast<std::size_t>(t)};
}

std::vector<std::size_t> docking_block(const CoverGadget& g, int v, int t) {
    const std::size_t vb = g.vertex_row_begin(v);
    const int e = g.docking[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
    const bool first_side = g.graph.edges[static_cast<std::size_t>(e)].first == v;
    const std::size_t own = g.edge_row_begin(e) + (first_side ? 0 : 3);
    std::vector<std::size_t> block{vb + 2 * static_cast<std::size_t>(t),
                                   vb + 2 * static_cast<std::size_t>(t) + 1, own};
    std::sort(block.begin(), block.end());
    return block;
}

std::vector<std::size_t> lone_triple_block(const CoverGadget& g, int v) {
    const std::size_t vb = g.vertex_row_begin(v);
    return {vb + 6, vb + 7, vb + 8};
}

}  // namespace

VertexPattern classify_vertex_blocks(const CoverGadget& gadget, const Clustering& c, int vertex) {
    std::vector<std::size_t> block_of(gadget.table.row_count());
    for (std::size_t b = 0; b < c.blocks.size(); ++b)
        for (std::size_t idx : c.blocks[b]) block_of[idx] = b;

    auto matches = [&](const std::vector<std::size_t>& expected) {
        std::vector<std::size_t> actual = c.blocks[block_of[expected.front()]];
        std::sort(actual.begin(), actual.end());
        return actual == expected;
    };

    bool in_cover = true;
    for (int t = 0; t < 3 && in_cover; ++t)
        in_cover = matches(paired_block(gadget, vertex, t));
    if (in_cover) return VertexPattern::InCover;

    bool out = matches(lone_triple_block(gadget, vertex));
    for (int t = 0; t < 3 && out; ++t) out = matches(docking_block(gadget, vertex, t));
    return out ? VertexPattern::OutOfCover : VertexPattern::Other;
}

Clustering cover_to_clustering(const CoverGadget& gadget, const std::vector<int>& cover) {
    std::vector<char> in_cover(static_cast<std::size_t>(gadget.graph.vertex_count), 0);
    for (int v : cover) {
        if (v < 0 || v >= gadget.graph.vertex_count)
            throw std::invalid_argument("cover gadget: vertex out of range");
        if (in_cover[static_cast<std::size_t>(v)])
            throw std::invalid_argument("cover gadget: repeated vertex");
        in_cover[static_cast<std::size_t>(v)] = 1;
    }
    for (const auto& [u, v] : gadget.graph.edges)
        if (!in_cover[static_cast<std::size_t>(u)] && !in_cover[static_cast<std::size_t>(v)])
            throw std::invalid_argument("cover gadget: the vertex set is not a vertex cover");

    std::vector<std::vector<std::size_t>> blocks;
    for (int v = 0; v < gadget.graph.vertex_count; ++v) {
        if (in_cover[static_cast<std::size_t>(v)]) {
            for (int t = 0; t < 3; ++t) blocks.push_back(paired_block(gadget, v, t));
        } else {
            for (int t = 0; t < 3; ++t) blocks.push_back(docking_block(gadget, v, t));
            blocks.push_back(lone_triple_block(gadget, v));
        }
    }
    for (std::size_t e = 0; e < gadget.graph.edges.size(); ++e) {
        const auto& [u, v] = gadget.graph.edges[e];
        const std::size_t eb = gadget.edge_row_begin(static_cast<int>(e));
        const bool u_out = !in_cover[static_cast<std::size_t>(u)];
        const bool v_out = !in_cover[static_cast<std::size_t>(v)];
        if (!u_out && !v_out) {
            blocks.push_back({eb, eb + 1, eb + 2});           // both covered: g1 u g2
            blocks.push_back({eb + 3, eb + 4, eb + 5, eb + 6});  // g3 u g4..g6
        } else {
            // The uncovered side's own group went into its docking block; the
            // middle pair joins the covered side's group.
            const std::size_t other_own = u_out ? eb + 3 : eb;
            std::vector<std::size_t> middle{eb + 1, eb + 2, other_own};
            std::sort(middle.begin(), middle.end());
            blocks.push_back(std::move(middle));
            blocks.push_back({eb + 4, eb + 5, eb + 6});
        }
    }
    blocks.push_back({gadget.extra_row_begin(), gadget.extra_row_begin() + 1,
                      gadget.extra_row_begin() + 2});

    Clustering c = make_clustering(gadget.table, std::move(blocks));
    if (c.cost != gadget.cover_cost(cover.size()))
        throw std::logic_error("cover gadget: forward construction cost mismatch");
    if (!c.is_k_feasible(3))
        throw std::logic_error("cover gadget: forward construction below 3");
    return c;
}

std::vector<int> clustering_to_cover(const CoverGadget& gadget, const Clustering& c) {
    const Clustering norm = make_clustering(gadget.table, c.blocks);  // validates and sorts
    if (!norm.is_k_feasible(3))
        throw std::invalid_argument("cover gadget: clustering is not 3-feasible");

    const long long m = static_cast<long long>(gadget.table.column_count());
    std::size_t all_star_blocks = 0;
    std::size_t star_block = 0;
    for (std::size_t b = 0; b < norm.blocks.size(); ++b) {
        if (norm.resolutions[b].star_count == m) {
            ++all_star_blocks;
            star_block = b;
        }
    }
    if (all_star_blocks != 1)
        throw CertificateError("cover gadget: expected exactly one fully suppressed block");
    for (int o = 0; o < 3; ++o)
        if (!std::binary_search(norm.blocks[star_block].begin(), norm.blocks[star_block].end(),
                                gadget.extra_row_begin() + static_cast<std::size_t>(o)))
            throw CertificateError("cover gadget: extra rows missing from the suppressed block");

    std::vector<int> cover;
    std::vector<char> in_cover(static_cast<std::size_t>(gadget.graph.vertex_count), 0);
    for (int v = 0; v < gadget.graph.vertex_count; ++v) {
        switch (classify_vertex_blocks(gadget, norm, v)) {
            case VertexPattern::InCover:
                cover.push_back(v);
                in_cover[static_cast<std::size_t>(v)] = 1;
                break;
            case VertexPattern::OutOfCover:
                break;
            case VertexPattern::Other:
                throw CertificateError("cover gadget: vertex " + std::to_string(v) +
                                       " follows neither canonical pattern");
        }
    }
    for (const auto& [u, v] : gadget.graph.edges)
        if (!in_cover[static_cast<std::size_t>(u)] && !in_cover[static_cast<std::size_t>(v)])
            throw CertificateError("cover gadget: adjacent vertices both out of the cover");
    if (norm.cost != gadget.cover_cost(cover.size()))
        throw CertificateError("cover gadget: cost does not match 6|V|+3|C|+11|E|+9");
    return cover;
}

}  // namespace kanon
