#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kanon/matching.hpp"
#include "kanon/table.hpp"

namespace kanon {

struct SolverOptions {
    /// Refuse instances whose raw candidate space exceeds this many vectors.
    unsigned long long max_candidate_space = 1ull << 20;
    /// Worker threads for candidate-set evaluation. Results are independent
    /// of the thread count; the winner is always the earliest set in
    /// canonical enumeration order among the best.
    int threads = 1;
};

/// One candidate resolution vector with its per-row compatibility bitset.
struct CandidateVector {
    std::vector<Symbol> entries;
    int star_count = 0;
    std::vector<std::uint64_t> compat;  // bit i set iff compatible with row i
    long long group_index = -1;         // star_count == 0: the equal group

    bool compatible_with(std::size_t row) const {
        return (compat[row >> 6] >> (row & 63)) & 1;
    }
    ResolutionVector to_resolution() const {
        return ResolutionVector::from_entries(entries);
    }
};

/// All generated candidate vectors in canonical order. Only vectors that are
/// the exact resolution of their full compatible row set are kept; every
/// other vector can be replaced by that resolution in any solution without
/// raising the cost.
struct CandidateSpace {
    std::vector<CandidateVector> vectors;
    unsigned long long product_size = 0;  // per-column (alphabet+1) product
};

/// Read-only per-solve context shared across candidate-set evaluations.
struct SolverContext {
    const Table* table = nullptr;
    long long k = 1;
    std::vector<Group> groups;             // canonical order
    std::vector<std::size_t> group_of_row;
    CandidateSpace space;
};

SolverContext make_solver_context(const Table& t, long long k, const SolverOptions& opts = {});

/// Ascending indices into SolverContext::space.vectors.
using CandidateSet = std::vector<std::size_t>;

/// Pruning contract: a set is worth evaluating iff (a) every row is
/// compatible with some member, (b) every unsuppressed member is the
/// representative of a group of at least k rows, (c) every member is
/// compatible with at least one row, (d) at most floor(n/k) members.
bool is_valid_candidate_set(const SolverContext& ctx, const CandidateSet& set);

/// Rows split by whether their whole group can survive unsuppressed:
/// a group is safe iff it has >= k rows and its representative is an
/// unsuppressed member of the candidate set. All other rows are loose.
struct SafeSplit {
    struct SafeGroup {
        std::size_t group;       // index into ctx.groups
        std::size_t set_vector;  // position in the candidate set of r(g)
    };
    std::vector<SafeGroup> safe;         // canonical group order
    std::vector<std::size_t> loose_rows; // ascending
    std::vector<char> row_is_safe;
};

SafeSplit split_safe_rows(const SolverContext& ctx, const CandidateSet& set);

/// Row weights (maximum preservable entries given the set) and the slot
/// weights derived from them. Slot weights exceed the total row weight, so
/// a maximum-weight matching covers quota slots before anything else.
struct WeightScheme {
    std::vector<long long> row_weight;   // per row
    long long total_row_weight = 0;      // W = sum of row weights
    std::vector<long long> slot_weight;  // per set member: W + m - stars + 1
};

WeightScheme compute_weights(const SolverContext& ctx, const CandidateSet& set,
                             const SafeSplit& split);

/// Matching weight threshold separating feasible matchings (all quota slots
/// covered) from infeasible ones: k * sum of slot weights.
long long feasibility_threshold(const WeightScheme& weights, long long k);

/// The assignment graph. Left side: loose rows, then per safe group k anchor
/// vertices and excess(g) excess vertices. Right side: one stay vertex per
/// loose row, one per excess vertex, then k quota slots per set member.
/// Edge kinds: loose->slot and excess->slot carry the slot weight of the
/// target member; anchor->slot binds a safe group to its own member's slots;
/// the stay edges (loose and excess) carry the row weight.
struct SolverGraph {
    BipartiteGraph graph;
    int loose_count = 0;
    int slot_begin = 0;  // first quota slot on the right
    struct SafeGroupVertices {
        std::size_t group;
        std::size_t set_vector;
        int anchor_begin;        // left
        int excess_begin;        // left
        int excess_stay_begin;   // right
        int excess_count;
    };
    std::vector<SafeGroupVertices> safe;

    int slot_vertex(std::size_t set_vector, long long k, int ordinal) const {
        return slot_begin + static_cast<int>(set_vector) * static_cast<int>(k) + ordinal;
    }
};

SolverGraph build_solver_graph(const SolverContext& ctx, const CandidateSet& set,
                               const SafeSplit& split, const WeightScheme& weights);

/// All quota slots covered (a solution with these vectors exists).
bool covers_all_slots(const SolverGraph& g, const Matching& m);
/// All left vertices covered.
bool covers_all_left(const SolverGraph& g, const Matching& m);

/// Reads the clustering off a complete matching. Slot edges fill each
/// member's block; stay edges send the row to its best compatible member
/// (ties to the canonically smallest) or, for excess rows, to their own
/// group's member. Identical rows are then redistributed so that earlier
/// blocks take earlier row indices. Throws std::logic_error on an
/// incomplete matching.
Clustering extract_clustering(const SolverContext& ctx, const CandidateSet& set,
                              const SafeSplit& split, const WeightScheme& weights,
                              const SolverGraph& graph, const Matching& matching);

struct SolveStats {
    unsigned long long sets_examined = 0;  // matchings computed
    unsigned long long sets_pruned = 0;    // sets or subtrees rejected earlier
    unsigned long long feasible_matchings = 0;
    unsigned long long infeasible_matchings = 0;
    unsigned long long completeness_violations = 0;  // feasible but left uncovered
};

struct SolveReport {
    std::vector<ResolutionVector> chosen_vectors;  // winning candidate set
    Clustering clustering;
    long long cost = 0;             // suppressed entries of the clustering
    long long identity_cost = 0;    // (W+1)k|S'| + m*|left| - matching weight
    long long matching_weight = 0;
    long long total_row_weight = 0;
    long long left_vertex_count = 0;
    SolveStats stats;
    std::int64_t elapsed_ms = 0;
};

/// Decision form: the first candidate set in canonical order (by size, then
/// lexicographic) whose matching is feasible and meets the weight threshold
/// for budget e. Empty when no candidate set admits a solution within e.
std::optional<SolveReport> solve_budget(const Table& t, long long k, long long budget,
                                        const SolverOptions& opts = {});

/// Minimization form: scans every valid candidate set and returns the
/// minimum-cost clustering, ties broken by canonical enumeration order.
SolveReport solve_min(const Table& t, long long k, const SolverOptions& opts = {});

}  // namespace kanon
