#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "kanon/instances.hpp"
#include "kanon/oracle.hpp"
#include "kanon/solver.hpp"
#include "support.hpp"

using namespace kanon;
using kanon::test::make_table;

namespace {

std::size_t find_vector(const SolverContext& ctx, const std::vector<Symbol>& entries) {
    for (std::size_t i = 0; i < ctx.space.vectors.size(); ++i)
        if (ctx.space.vectors[i].entries == entries) return i;
    REQUIRE(false);
    return 0;
}

// Candidate sets of size <= 3 passing the validity contract.
std::vector<CandidateSet> some_valid_sets(const SolverContext& ctx, std::size_t cap) {
    std::vector<CandidateSet> sets;
    const std::size_t v = ctx.space.vectors.size();
    for (std::size_t a = 0; a < v && sets.size() < cap; ++a) {
        if (is_valid_candidate_set(ctx, {a})) sets.push_back({a});
        for (std::size_t b = a + 1; b < v && sets.size() < cap; ++b) {
            if (is_valid_candidate_set(ctx, {a, b})) sets.push_back({a, b});
            for (std::size_t c = b + 1; c < v && sets.size() < cap; ++c)
                if (is_valid_candidate_set(ctx, {a, b, c})) sets.push_back({a, b, c});
        }
    }
    return sets;
}

long long slot_incident_weight(const SolverGraph& g, const Matching& m) {
    long long sum = 0;
    for (const auto& e : m.edges)
        if (e.right >= g.slot_begin) sum += e.weight;
    return sum;
}

}  // namespace

TEST_CASE("candidate space of the worked example") {
    Table t = worked_example_table();
    SolverContext ctx = make_solver_context(t, 2);
    CHECK(ctx.space.product_size == 36);  // 3*3*4

    // Exactly the vectors that resolve their own compatible row set.
    CHECK(ctx.space.vectors.size() == 8);
    find_vector(ctx, {0, 0, 0});              // aaa
    find_vector(ctx, {0, 1, 0});              // aba
    find_vector(ctx, {1, 1, 1});              // bbb
    find_vector(ctx, {1, 1, 2});              // bbc
    find_vector(ctx, {0, kStar, 0});          // a*a
    find_vector(ctx, {1, 1, kStar});          // bb*
    find_vector(ctx, {kStar, 1, kStar});      // *b*
    find_vector(ctx, {kStar, kStar, kStar});  // ***

    // canonical order is strictly increasing
    for (std::size_t i = 1; i < ctx.space.vectors.size(); ++i)
        CHECK(symbols_less(ctx.space.vectors[i - 1].entries, ctx.space.vectors[i].entries));
}

TEST_CASE("candidate space contains every group representative") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        Table t = random_table(rng);
        SolverContext ctx = make_solver_context(t, 2);
        for (const auto& g : ctx.groups) {
            bool present = false;
            for (const auto& v : ctx.space.vectors)
                present = present || v.entries == g.representative.entries;
            CHECK(present);
        }
    }
}

TEST_CASE("candidate set validity") {
    Table t = worked_example_table();
    SolverContext ctx = make_solver_context(t, 2);
    const std::size_t aaa = find_vector(ctx, {0, 0, 0});
    const std::size_t aba = find_vector(ctx, {0, 1, 0});
    const std::size_t asa = find_vector(ctx, {0, kStar, 0});
    const std::size_t bbs = find_vector(ctx, {1, 1, kStar});
    const std::size_t all = find_vector(ctx, {kStar, kStar, kStar});

    CHECK(is_valid_candidate_set(ctx, {aaa, asa, bbs}));
    CHECK(is_valid_candidate_set(ctx, {all}));
    CHECK_FALSE(is_valid_candidate_set(ctx, {}));
    CHECK_FALSE(is_valid_candidate_set(ctx, {asa}));            // rows 5,6 uncovered
    CHECK_FALSE(is_valid_candidate_set(ctx, {aba, asa, bbs}));  // aba's group has 1 < k rows
    CHECK_FALSE(is_valid_candidate_set(ctx, {aaa, asa, bbs, all}));  // above n/k members
}

TEST_CASE("safe split on the worked example") {
    Table t = worked_example_table();
    SolverContext ctx = make_solver_context(t, 2);
    CandidateSet set{find_vector(ctx, {0, 0, 0}), find_vector(ctx, {0, kStar, 0}),
                     find_vector(ctx, {1, 1, kStar})};
    SafeSplit split = split_safe_rows(ctx, set);
    REQUIRE(split.safe.size() == 1);
    CHECK(ctx.groups[split.safe[0].group].size() == 4);
    CHECK(split.safe[0].set_vector == 0);
    CHECK(split.loose_rows == std::vector<std::size_t>{4, 5, 6});

    // without the unsuppressed member nothing is safe
    CandidateSet no_safe{find_vector(ctx, {0, kStar, 0}), find_vector(ctx, {1, 1, kStar})};
    CHECK(split_safe_rows(ctx, no_safe).safe.empty());

    // a group smaller than k stays loose even when its row is a member
    Table small = make_table({{"a", "a"}, {"b", "b"}, {"b", "b"}});
    SolverContext sctx = make_solver_context(small, 2);
    CandidateSet with_single{find_vector(sctx, {0, 0}), find_vector(sctx, {1, 1})};
    SafeSplit ssplit = split_safe_rows(sctx, with_single);
    REQUIRE(ssplit.safe.size() == 1);  // only the pair group
    CHECK(sctx.groups[ssplit.safe[0].group].size() == 2);
    CHECK(ssplit.loose_rows == std::vector<std::size_t>{0});
}

TEST_CASE("weights of the worked example") {
    Table t = worked_example_table();
    SolverContext ctx = make_solver_context(t, 2);
    CandidateSet set{find_vector(ctx, {0, 0, 0}), find_vector(ctx, {0, kStar, 0}),
                     find_vector(ctx, {1, 1, kStar})};
    SafeSplit split = split_safe_rows(ctx, set);
    WeightScheme w = compute_weights(ctx, set, split);
    CHECK(w.row_weight == std::vector<long long>{3, 3, 3, 3, 2, 2, 2});
    CHECK(w.total_row_weight == 18);
    CHECK(w.slot_weight == std::vector<long long>{22, 21, 21});
    for (long long sw : w.slot_weight) CHECK(sw > w.total_row_weight);
    CHECK(feasibility_threshold(w, 2) == 128);

    // single row, set = that row: weight m, slot weight 2m+1
    Table single = make_table({{"p", "q"}});
    SolverContext sctx = make_solver_context(single, 1);
    CandidateSet sset{find_vector(sctx, {0, 0})};
    WeightScheme sw = compute_weights(sctx, sset, split_safe_rows(sctx, sset));
    CHECK(sw.row_weight == std::vector<long long>{2});
    CHECK(sw.slot_weight == std::vector<long long>{5});
    CHECK(feasibility_threshold(sw, 1) == 5);

    CandidateSet uncovering{find_vector(ctx, {0, kStar, 0})};
    CHECK_THROWS_AS(compute_weights(ctx, uncovering, split_safe_rows(ctx, uncovering)),
                    std::invalid_argument);
}

TEST_CASE("graph shape on the worked example") {
    Table t = worked_example_table();
    SolverContext ctx = make_solver_context(t, 2);
    CandidateSet set{find_vector(ctx, {0, 0, 0}), find_vector(ctx, {0, kStar, 0}),
                     find_vector(ctx, {1, 1, kStar})};
    SafeSplit split = split_safe_rows(ctx, set);
    WeightScheme w = compute_weights(ctx, set, split);
    SolverGraph g = build_solver_graph(ctx, set, split, w);

    CHECK(g.graph.left_count == 7);    // 3 loose + 2 anchors + 2 excess
    CHECK(g.graph.right_count == 11);  // 3 stay + 2 excess stay + 6 slots
    CHECK(g.loose_count == 3);
    CHECK(g.slot_begin == 5);
    REQUIRE(g.safe.size() == 1);
    CHECK(g.safe[0].excess_count == 2);

    // r5 reaches only the middle-star slots; anchors pin the unsuppressed member
    int r5_slots = 0, stay_edges = 0, anchor_edges = 0;
    for (const auto& e : g.graph.edges) {
        if (e.left == 0 && e.right >= g.slot_begin) {
            ++r5_slots;
            CHECK((e.right - g.slot_begin) / 2 == 1);
            CHECK(e.weight == 21);
        }
        if (e.right < g.slot_begin) ++stay_edges;
        if (e.left >= g.safe[0].anchor_begin && e.left < g.safe[0].excess_begin) {
            ++anchor_edges;
            CHECK((e.right - g.slot_begin) / 2 == 0);  // own member's slots
            CHECK(e.weight == 22);
        }
    }
    CHECK(r5_slots == 2);
    CHECK(stay_edges == 5);  // 3 loose + 2 excess
    CHECK(anchor_edges == 2);
}

TEST_CASE("solve_min reproduces the worked example exactly") {
    Table t = worked_example_table();
    SolveReport r = solve_min(t, 2);
    CHECK(r.cost == 4);
    CHECK(r.identity_cost == 4);
    CHECK(r.total_row_weight == 18);
    CHECK(r.matching_weight == 131);
    CHECK(r.left_vertex_count == 7);
    REQUIRE(r.chosen_vectors.size() == 3);
    CHECK((r.total_row_weight + 1) * 2 * 3 + 3 * r.left_vertex_count == 135);

    REQUIRE(r.clustering.blocks.size() == 3);
    CHECK(r.clustering.blocks[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.clustering.blocks[1] == std::vector<std::size_t>{3, 4});
    CHECK(r.clustering.blocks[2] == std::vector<std::size_t>{5, 6});
    CHECK(r.stats.completeness_violations == 0);
    CHECK(r.stats.sets_examined >= 1);
}

TEST_CASE("solve_budget on the worked example") {
    Table t = worked_example_table();
    auto ok = solve_budget(t, 2, 4);
    REQUIRE(ok.has_value());
    CHECK(ok->cost == 4);
    CHECK(ok->clustering.is_k_feasible(2));

    CHECK_FALSE(solve_budget(t, 2, 3).has_value());
    CHECK_FALSE(solve_budget(t, 2, 0).has_value());
    CHECK(solve_budget(t, 2, 100).has_value());
    CHECK_THROWS_AS(solve_budget(t, 2, -1), std::invalid_argument);
}

TEST_CASE("k-anonymous input solves at zero cost") {
    Table t = make_table({{"a", "a"}, {"a", "a"}, {"b", "b"}, {"b", "b"}});
    auto r = solve_budget(t, 2, 0);
    REQUIRE(r.has_value());
    CHECK(r->cost == 0);
    CHECK(solve_min(t, 2).cost == 0);

    Table same = make_table({{"s"}, {"s"}, {"s"}});
    CHECK(solve_min(same, 3).cost == 0);
}

TEST_CASE("solver input validation") {
    Table t = worked_example_table();
    CHECK_THROWS_AS(solve_min(t, 8), std::invalid_argument);
    CHECK_THROWS_AS(solve_min(t, 0), std::invalid_argument);
    CHECK_FALSE(solve_budget(t, 8, 100).has_value());  // no candidate set fits n/k = 0
}

TEST_CASE("stay-row assignment breaks ties toward the canonically smallest member") {
    // Rows aa, aa, ab, bb, bb with members a* and *b: the row ab is
    // compatible with both, same star count; left unmatched it must join a*.
    Table t = make_table({{"a", "a"}, {"a", "a"}, {"a", "b"}, {"b", "b"}, {"b", "b"}});
    SolverContext ctx = make_solver_context(t, 2);
    CandidateSet set{find_vector(ctx, {0, kStar}), find_vector(ctx, {kStar, 1})};
    REQUIRE(is_valid_candidate_set(ctx, set));
    SafeSplit split = split_safe_rows(ctx, set);
    WeightScheme w = compute_weights(ctx, set, split);
    SolverGraph g = build_solver_graph(ctx, set, split, w);

    // Hand-built complete matching leaving row 2 (ab) on its stay edge.
    Matching m;
    m.left_match.assign(5, -1);
    m.right_match.assign(static_cast<std::size_t>(g.graph.right_count), -1);
    auto add = [&](int l, int r, long long weight) {
        m.edges.push_back({l, r, weight});
        m.left_match[static_cast<std::size_t>(l)] = r;
        m.right_match[static_cast<std::size_t>(r)] = l;
        m.total_weight += weight;
    };
    add(0, g.slot_vertex(0, 2, 0), w.slot_weight[0]);
    add(1, g.slot_vertex(0, 2, 1), w.slot_weight[0]);
    add(3, g.slot_vertex(1, 2, 0), w.slot_weight[1]);
    add(4, g.slot_vertex(1, 2, 1), w.slot_weight[1]);
    add(2, 2, w.row_weight[2]);

    Clustering c = extract_clustering(ctx, set, split, w, g, m);
    REQUIRE(c.blocks.size() == 2);
    CHECK(c.blocks[0] == std::vector<std::size_t>{0, 1, 2});  // ab joined a*
    CHECK(c.blocks[1] == std::vector<std::size_t>{3, 4});

    Matching incomplete;
    incomplete.left_match.assign(5, -1);
    incomplete.right_match.assign(static_cast<std::size_t>(g.graph.right_count), -1);
    CHECK_THROWS_AS(extract_clustering(ctx, set, split, w, g, incomplete), std::logic_error);
}

TEST_CASE("feasibility threshold separates matchings, both directions") {
    std::mt19937_64 rng(31);
    int graphs = 0;
    while (graphs < 60) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        SolverContext ctx = make_solver_context(t, k);
        auto sets = some_valid_sets(ctx, 3);
        for (const auto& set : sets) {
            ++graphs;
            SafeSplit split = split_safe_rows(ctx, set);
            WeightScheme w = compute_weights(ctx, set, split);
            SolverGraph g = build_solver_graph(ctx, set, split, w);
            Matching m = max_weight_matching(g.graph);
            const long long threshold = feasibility_threshold(w, k);
            CHECK((slot_incident_weight(g, m) >= threshold) == covers_all_slots(g, m));

            // breaking one slot's edges must flip the test
            BipartiteGraph pruned = g.graph;
            const int victim = g.slot_begin;
            std::erase_if(pruned.edges,
                          [&](const BipartiteGraph::Edge& e) { return e.right == victim; });
            Matching m2 = max_weight_matching(pruned);
            CHECK_FALSE(covers_all_slots(g, m2));
            CHECK(slot_incident_weight(g, m2) < threshold);
        }
    }
}

TEST_CASE("complete matchings satisfy the weight identity") {
    std::mt19937_64 rng(32);
    int checked = 0;
    while (checked < 80) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        SolverContext ctx = make_solver_context(t, k);
        const long long m = static_cast<long long>(t.column_count());
        for (const auto& set : some_valid_sets(ctx, 4)) {
            SafeSplit split = split_safe_rows(ctx, set);
            WeightScheme w = compute_weights(ctx, set, split);
            SolverGraph g = build_solver_graph(ctx, set, split, w);
            Matching match = max_weight_matching(g.graph);
            if (!covers_all_slots(g, match) || !covers_all_left(g, match)) continue;
            ++checked;

            long long star_sum = 0;
            for (std::size_t idx : set) star_sum += ctx.space.vectors[idx].star_count;
            long long stay_loss = 0;
            for (const auto& e : match.edges) {
                if (e.right >= g.slot_begin) continue;
                std::size_t row;
                if (e.left < g.loose_count) {
                    row = split.loose_rows[static_cast<std::size_t>(e.left)];
                } else {
                    auto it = std::find_if(g.safe.begin(), g.safe.end(), [&](const auto& sv) {
                        return e.left >= sv.excess_begin &&
                               e.left < sv.excess_begin + sv.excess_count;
                    });
                    REQUIRE(it != g.safe.end());
                    row = ctx.groups[it->group].members.front();
                }
                stay_loss += m - w.row_weight[row];
            }
            const long long lhs = match.total_weight;
            const long long rhs =
                (w.total_row_weight + 1) * k * static_cast<long long>(set.size()) +
                m * g.graph.left_count - (k * star_sum + stay_loss);
            CHECK(lhs == rhs);

            // extraction never costs more than the identity says
            Clustering c = extract_clustering(ctx, set, split, w, g, match);
            CHECK(c.cost <= k * star_sum + stay_loss);
        }
    }
}

TEST_CASE("solve_min equals the brute-force oracle") {
    std::mt19937_64 rng(33);
    int done = 0;
    while (done < 120) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        ++done;
        SolveReport r = solve_min(t, k);
        OracleResult o = brute_force_min(t, k);
        CHECK(r.cost == o.cost);
        CHECK(r.cost == r.identity_cost);  // minimization winner is tight
        CHECK(r.clustering.is_k_feasible(k));
        CHECK(r.stats.completeness_violations == 0);
        // examined candidate sets stay within the subset-count envelope
        const unsigned long long product = t.candidate_space_size(62);
        CHECK(r.stats.sets_examined <= 1ull << product);
    }
}

TEST_CASE("budget runs succeed at the optimum and fail just below it") {
    std::mt19937_64 rng(34);
    int done = 0;
    while (done < 60) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        ++done;
        const long long optimum = solve_min(t, k).cost;
        auto at = solve_budget(t, k, optimum);
        REQUIRE(at.has_value());
        CHECK(at->cost <= optimum);
        CHECK(at->cost == at->identity_cost);  // accepted sets are tight
        if (optimum > 0) CHECK_FALSE(solve_budget(t, k, optimum - 1).has_value());
        auto above = solve_budget(t, k, optimum + 3);
        REQUIRE(above.has_value());
        CHECK(above->cost <= optimum + 3);
        CHECK(above->cost == above->identity_cost);
    }
}

TEST_CASE("identical results with and without worker threads") {
    std::mt19937_64 rng(35);
    SolverOptions parallel;
    parallel.threads = 4;
    for (int trial = 0; trial < 25; ++trial) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        SolveReport a = solve_min(t, k);
        SolveReport b = solve_min(t, k, parallel);
        CHECK(a.cost == b.cost);
        CHECK(a.clustering.blocks == b.clustering.blocks);
        REQUIRE(a.chosen_vectors.size() == b.chosen_vectors.size());
        for (std::size_t i = 0; i < a.chosen_vectors.size(); ++i)
            CHECK(a.chosen_vectors[i] == b.chosen_vectors[i]);
        CHECK(a.stats.sets_examined == b.stats.sets_examined);
    }
}

TEST_CASE("candidate space guard") {
    std::vector<std::vector<std::string>> records;
    for (int i = 0; i < 8; ++i)
        records.push_back({std::to_string(i), std::to_string(i * 7 % 5), std::to_string(i % 3)});
    Table t = Table::from_strings(records);
    SolverOptions tight;
    tight.max_candidate_space = 16;
    CHECK_THROWS_AS(solve_min(t, 2, tight), std::runtime_error);
}

TEST_CASE("budget success is monotone in the budget") {
    std::mt19937_64 rng(36);
    int done = 0;
    while (done < 20) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        ++done;
        const long long optimum = solve_min(t, k).cost;
        bool succeeded_before = false;
        for (long long e = 0; e <= optimum + 2; ++e) {
            bool succeeded = solve_budget(t, k, e).has_value();
            if (succeeded_before) CHECK(succeeded);  // success never flips back off
            CHECK(succeeded == (e >= optimum));
            succeeded_before = succeeded;
        }
    }
}
