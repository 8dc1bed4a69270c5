#include "kanon/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <thread>

namespace kanon {

namespace {

using Mask = std::vector<std::uint64_t>;

std::size_t mask_words(std::size_t n) { return (n + 63) / 64; }

Mask full_mask(std::size_t n) {
    Mask m(mask_words(n), ~0ull);
    if (n % 64) m.back() = (1ull << (n % 64)) - 1;
    if (n == 0) m.clear();
    return m;
}

void mask_or(Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

bool mask_covers(const Mask& a, const Mask& b, const Mask& full) {
    for (std::size_t i = 0; i < full.size(); ++i)
        if ((a[i] | b[i]) != full[i]) return false;
    return true;
}

bool mask_is_full(const Mask& a, const Mask& full) {
    for (std::size_t i = 0; i < full.size(); ++i)
        if (a[i] != full[i]) return false;
    return true;
}

constexpr long long kNoBound = std::numeric_limits<long long>::max();

}  // namespace

SolverContext make_solver_context(const Table& t, long long k, const SolverOptions& opts) {
    if (k < 1) throw std::invalid_argument("solver: k must be >= 1");
    const std::size_t n = t.row_count();
    const std::size_t m = t.column_count();

    SolverContext ctx;
    ctx.table = &t;
    ctx.k = k;
    ctx.groups = group_rows(t);
    ctx.group_of_row.assign(n, 0);
    for (std::size_t g = 0; g < ctx.groups.size(); ++g)
        for (std::size_t idx : ctx.groups[g].members) ctx.group_of_row[idx] = g;

    ctx.space.product_size = t.candidate_space_size(opts.max_candidate_space + 1);
    if (ctx.space.product_size > opts.max_candidate_space)
        throw std::runtime_error(
            "solver: candidate space exceeds " + std::to_string(opts.max_candidate_space) +
            " vectors; this instance needs the brute-force algorithm or wider limits");

    // Odometer over the per-column alphabets extended with the star, star
    // ordered last, so vectors come out in canonical order.
    std::vector<int> digit(m, 0);
    std::vector<int> radix(m);
    for (std::size_t j = 0; j < m; ++j) radix[j] = static_cast<int>(t.alphabet_size(j)) + 1;

    std::vector<Symbol> entries(m);
    const std::size_t words = mask_words(n);
    for (;;) {
        int stars = 0;
        for (std::size_t j = 0; j < m; ++j) {
            bool is_star = digit[j] == radix[j] - 1;
            entries[j] = is_star ? kStar : static_cast<Symbol>(digit[j]);
            if (is_star) ++stars;
        }

        Mask compat(words, 0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Row& r = t.row(i);
            bool ok = true;
            for (std::size_t j = 0; j < m; ++j)
                if (entries[j] != kStar && entries[j] != r.entries[j]) {
                    ok = false;
                    break;
                }
            if (ok) {
                compat[i >> 6] |= 1ull << (i & 63);
                ++count;
            }
        }

        // Keep a vector only when it is the exact resolution of its
        // compatible row set: each starred column must actually disagree
        // somewhere among the compatible rows.
        bool closed = count > 0;
        if (closed && stars > 0) {
            for (std::size_t j = 0; j < m && closed; ++j) {
                if (entries[j] != kStar) continue;
                Symbol common = -2;
                bool varies = false;
                for (std::size_t i = 0; i < n && !varies; ++i) {
                    if (!((compat[i >> 6] >> (i & 63)) & 1)) continue;
                    Symbol s = t.row(i).entries[j];
                    if (common == -2)
                        common = s;
                    else if (common != s)
                        varies = true;
                }
                if (!varies) closed = false;
            }
        }

        if (closed) {
            CandidateVector v;
            v.entries = entries;
            v.star_count = stars;
            v.compat = std::move(compat);
            if (stars == 0) {
                auto it = std::lower_bound(ctx.groups.begin(), ctx.groups.end(), entries,
                                           [](const Group& g, const std::vector<Symbol>& e) {
                                               return symbols_less(g.representative.entries, e);
                                           });
                v.group_index = static_cast<long long>(it - ctx.groups.begin());
            }
            ctx.space.vectors.push_back(std::move(v));
        }

        std::size_t j = m;
        while (j > 0) {
            --j;
            if (++digit[j] < radix[j]) break;
            digit[j] = 0;
            if (j == 0) return ctx;
        }
    }
}

bool is_valid_candidate_set(const SolverContext& ctx, const CandidateSet& set) {
    const std::size_t n = ctx.table->row_count();
    if (set.empty()) return false;
    if (static_cast<long long>(set.size()) > static_cast<long long>(n) / ctx.k) return false;

    Mask covered(mask_words(n), 0);
    for (std::size_t idx : set) {
        const CandidateVector& v = ctx.space.vectors[idx];
        bool any = false;
        for (std::size_t w = 0; w < v.compat.size(); ++w) {
            covered[w] |= v.compat[w];
            any = any || v.compat[w];
        }
        if (!any) return false;
        if (v.star_count == 0 &&
            static_cast<long long>(ctx.groups[v.group_index].size()) < ctx.k)
            return false;
    }
    return mask_is_full(covered, full_mask(n));
}

SafeSplit split_safe_rows(const SolverContext& ctx, const CandidateSet& set) {
    SafeSplit split;
    split.row_is_safe.assign(ctx.table->row_count(), 0);

    for (std::size_t p = 0; p < set.size(); ++p) {
        const CandidateVector& v = ctx.space.vectors[set[p]];
        if (v.star_count != 0) continue;
        const Group& g = ctx.groups[v.group_index];
        if (static_cast<long long>(g.size()) < ctx.k) continue;
        split.safe.push_back({static_cast<std::size_t>(v.group_index), p});
        for (std::size_t idx : g.members) split.row_is_safe[idx] = 1;
    }
    std::sort(split.safe.begin(), split.safe.end(),
              [](const SafeSplit::SafeGroup& a, const SafeSplit::SafeGroup& b) {
                  return a.group < b.group;
              });
    for (std::size_t i = 0; i < ctx.table->row_count(); ++i)
        if (!split.row_is_safe[i]) split.loose_rows.push_back(i);
    return split;
}

WeightScheme compute_weights(const SolverContext& ctx, const CandidateSet& set,
                             const SafeSplit& split) {
    (void)split;
    const std::size_t n = ctx.table->row_count();
    const long long m = static_cast<long long>(ctx.table->column_count());

    WeightScheme w;
    w.row_weight.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        long long best = -1;
        for (std::size_t idx : set) {
            const CandidateVector& v = ctx.space.vectors[idx];
            if (!v.compatible_with(i)) continue;
            best = std::max(best, m - v.star_count);
        }
        if (best < 0)
            throw std::invalid_argument("solver: a row is compatible with no candidate vector");
        w.row_weight[i] = best;
        w.total_row_weight += best;
    }
    w.slot_weight.reserve(set.size());
    for (std::size_t idx : set)
        w.slot_weight.push_back(w.total_row_weight + m - ctx.space.vectors[idx].star_count + 1);
    return w;
}

long long feasibility_threshold(const WeightScheme& weights, long long k) {
    long long sum = 0;
    for (long long sw : weights.slot_weight) sum += sw;
    return k * sum;
}

SolverGraph build_solver_graph(const SolverContext& ctx, const CandidateSet& set,
                               const SafeSplit& split, const WeightScheme& weights) {
    const int k = static_cast<int>(ctx.k);
    SolverGraph sg;
    sg.loose_count = static_cast<int>(split.loose_rows.size());

    int left = sg.loose_count;
    int right_stay = sg.loose_count;
    for (const auto& s : split.safe) {
        const Group& g = ctx.groups[s.group];
        int exc = static_cast<int>(g.excess(ctx.k));
        sg.safe.push_back({s.group, s.set_vector, left, left + k, right_stay, exc});
        left += k + exc;
        right_stay += exc;
    }
    sg.slot_begin = right_stay;

    sg.graph.left_count = left;
    sg.graph.right_count = right_stay + k * static_cast<int>(set.size());

    // Loose rows: slot edges to every compatible suppressed member, plus a
    // stay edge carrying the row weight.
    for (int li = 0; li < sg.loose_count; ++li) {
        std::size_t row = split.loose_rows[li];
        for (std::size_t p = 0; p < set.size(); ++p) {
            const CandidateVector& v = ctx.space.vectors[set[p]];
            if (v.star_count == 0 || !v.compatible_with(row)) continue;
            for (int j = 0; j < k; ++j)
                sg.graph.add_edge(li, sg.slot_vertex(p, ctx.k, j), weights.slot_weight[p]);
        }
        sg.graph.add_edge(li, li, weights.row_weight[row]);
    }

    for (const auto& sv : sg.safe) {
        const Group& g = ctx.groups[sv.group];
        const std::size_t rep_row = g.members.front();
        // Anchors pin the group's own member: ordinal i to slot i.
        for (int i = 0; i < k; ++i)
            sg.graph.add_edge(sv.anchor_begin + i, sg.slot_vertex(sv.set_vector, ctx.k, i),
                              weights.slot_weight[sv.set_vector]);
        for (int i = 0; i < sv.excess_count; ++i) {
            for (std::size_t p = 0; p < set.size(); ++p) {
                const CandidateVector& v = ctx.space.vectors[set[p]];
                if (v.star_count == 0 || !v.compatible_with(rep_row)) continue;
                for (int j = 0; j < k; ++j)
                    sg.graph.add_edge(sv.excess_begin + i, sg.slot_vertex(p, ctx.k, j),
                                      weights.slot_weight[p]);
            }
            sg.graph.add_edge(sv.excess_begin + i, sv.excess_stay_begin + i,
                              weights.row_weight[rep_row]);
        }
    }
    return sg;
}

bool covers_all_slots(const SolverGraph& g, const Matching& m) {
    for (int r = g.slot_begin; r < g.graph.right_count; ++r)
        if (m.right_match[static_cast<std::size_t>(r)] == -1) return false;
    return true;
}

bool covers_all_left(const SolverGraph& g, const Matching& m) {
    for (int l = 0; l < g.graph.left_count; ++l)
        if (m.left_match[static_cast<std::size_t>(l)] == -1) return false;
    return true;
}

namespace {

// Best compatible member for a row: maximum preserved entries, ties to the
// canonically smallest (the set is in canonical order).
std::size_t best_member(const SolverContext& ctx, const CandidateSet& set, std::size_t row) {
    long long best = -1;
    std::size_t pick = set.size();
    const long long m = static_cast<long long>(ctx.table->column_count());
    for (std::size_t p = 0; p < set.size(); ++p) {
        const CandidateVector& v = ctx.space.vectors[set[p]];
        if (!v.compatible_with(row)) continue;
        if (m - v.star_count > best) {
            best = m - v.star_count;
            pick = p;
        }
    }
    if (pick == set.size())
        throw std::logic_error("solver: row has no compatible member during extraction");
    return pick;
}

// Identical rows are interchangeable between blocks; give earlier blocks the
// earlier row indices so the result does not depend on matching-internal ties.
void canonicalize_identical_rows(const SolverContext& ctx,
                                 std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<std::size_t> block_of(ctx.table->row_count());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t idx : blocks[b]) block_of[idx] = b;
    for (const Group& g : ctx.groups) {
        std::vector<std::size_t> where;
        where.reserve(g.members.size());
        for (std::size_t idx : g.members) where.push_back(block_of[idx]);
        std::sort(where.begin(), where.end());
        for (std::size_t i = 0; i < g.members.size(); ++i) block_of[g.members[i]] = where[i];
    }
    for (auto& block : blocks) block.clear();
    for (std::size_t i = 0; i < ctx.table->row_count(); ++i) blocks[block_of[i]].push_back(i);
}

}  // namespace

Clustering extract_clustering(const SolverContext& ctx, const CandidateSet& set,
                              const SafeSplit& split, const WeightScheme& weights,
                              const SolverGraph& graph, const Matching& matching) {
    (void)weights;
    if (!covers_all_slots(graph, matching) || !covers_all_left(graph, matching))
        throw std::logic_error("extract_clustering: matching is not complete");

    std::vector<std::vector<std::size_t>> buckets(set.size());
    for (const auto& edge : matching.edges) {
        std::size_t row;
        std::size_t member;
        if (edge.left < graph.loose_count) {
            row = split.loose_rows[static_cast<std::size_t>(edge.left)];
            member = edge.right >= graph.slot_begin
                         ? static_cast<std::size_t>((edge.right - graph.slot_begin) / ctx.k)
                         : best_member(ctx, set, row);
        } else {
            auto it = std::find_if(graph.safe.begin(), graph.safe.end(),
                                   [&](const SolverGraph::SafeGroupVertices& sv) {
                                       return edge.left >= sv.anchor_begin &&
                                              edge.left < sv.excess_begin + sv.excess_count;
                                   });
            const Group& g = ctx.groups[it->group];
            if (edge.left < it->excess_begin) {
                row = g.members[static_cast<std::size_t>(edge.left - it->anchor_begin)];
                member = it->set_vector;
            } else {
                row = g.members[static_cast<std::size_t>(ctx.k + edge.left - it->excess_begin)];
                member = edge.right >= graph.slot_begin
                             ? static_cast<std::size_t>((edge.right - graph.slot_begin) / ctx.k)
                             : it->set_vector;
            }
        }
        buckets[member].push_back(row);
    }

    for (const auto& bucket : buckets)
        if (static_cast<long long>(bucket.size()) < ctx.k)
            throw std::logic_error("extract_clustering: a block ended below k rows");

    canonicalize_identical_rows(ctx, buckets);
    return make_clustering(*ctx.table, std::move(buckets));
}

namespace {

struct Evaluation {
    SafeSplit split;
    WeightScheme weights;
    SolverGraph graph;
    Matching matching;
    bool feasible = false;
    long long identity_cost = 0;
};

// Maximum-weight matchings maximize cardinality among ties, so stay edges
// (weight possibly zero) are normally present; re-adding any skipped ones
// keeps the weight maximal and the matching complete.
void complete_with_stay_edges(const SolverContext& ctx, const SolverGraph& graph,
                              const WeightScheme& weights, const SafeSplit& split, Matching& m) {
    auto add = [&](int left, int right, long long w) {
        m.edges.push_back({left, right, w});
        m.total_weight += w;
        m.left_match[static_cast<std::size_t>(left)] = right;
        m.right_match[static_cast<std::size_t>(right)] = left;
    };
    for (int li = 0; li < graph.loose_count; ++li)
        if (m.left_match[static_cast<std::size_t>(li)] == -1)
            add(li, li, weights.row_weight[split.loose_rows[static_cast<std::size_t>(li)]]);
    for (const auto& sv : graph.safe) {
        const Group& g = ctx.groups[sv.group];
        for (int i = 0; i < sv.excess_count; ++i)
            if (m.left_match[static_cast<std::size_t>(sv.excess_begin) + i] == -1)
                add(sv.excess_begin + i, sv.excess_stay_begin + i,
                    weights.row_weight[g.members.front()]);
        for (int i = 0; i < static_cast<int>(ctx.k); ++i)
            if (m.left_match[static_cast<std::size_t>(sv.anchor_begin) + i] == -1)
                throw std::logic_error("solver: anchor vertex uncovered in a feasible matching");
    }
}

Evaluation evaluate_candidate_set(const SolverContext& ctx, const CandidateSet& set,
                                  SolveStats* stats) {
    Evaluation ev;
    ev.split = split_safe_rows(ctx, set);
    ev.weights = compute_weights(ctx, set, ev.split);
    ev.graph = build_solver_graph(ctx, set, ev.split, ev.weights);
    ev.matching = max_weight_matching(ev.graph.graph);
    if (stats) ++stats->sets_examined;

    ev.feasible = covers_all_slots(ev.graph, ev.matching);
    if (!ev.feasible) {
        if (stats) ++stats->infeasible_matchings;
        return ev;
    }
    if (stats) ++stats->feasible_matchings;
    if (!covers_all_left(ev.graph, ev.matching)) {
        if (stats) ++stats->completeness_violations;
        complete_with_stay_edges(ctx, ev.graph, ev.weights, ev.split, ev.matching);
    }
    ev.identity_cost = (ev.weights.total_row_weight + 1) * ctx.k *
                           static_cast<long long>(set.size()) +
                       static_cast<long long>(ctx.table->column_count()) *
                           ev.graph.graph.left_count -
                       ev.matching.total_weight;
    return ev;
}

struct Enumeration {
    std::vector<std::size_t> usable;  // candidate indices passing the group-size test
    std::vector<Mask> suffix_union;   // coverage reachable from position i onward
    Mask full;
    std::size_t max_size = 0;
};

Enumeration make_enumeration(const SolverContext& ctx) {
    Enumeration en;
    const std::size_t n = ctx.table->row_count();
    en.full = full_mask(n);
    for (std::size_t i = 0; i < ctx.space.vectors.size(); ++i) {
        const CandidateVector& v = ctx.space.vectors[i];
        if (v.star_count == 0 &&
            static_cast<long long>(ctx.groups[v.group_index].size()) < ctx.k)
            continue;
        en.usable.push_back(i);
    }
    en.suffix_union.assign(en.usable.size() + 1, Mask(mask_words(n), 0));
    for (std::size_t i = en.usable.size(); i-- > 0;) {
        en.suffix_union[i] = en.suffix_union[i + 1];
        mask_or(en.suffix_union[i], ctx.space.vectors[en.usable[i]].compat);
    }
    long long cap = static_cast<long long>(n) / ctx.k;
    en.max_size = std::min<std::size_t>(en.usable.size(),
                                        cap < 0 ? 0 : static_cast<std::size_t>(cap));
    return en;
}

// One unit of work: all size-`size` subsets whose first element is
// usable[first], visited in lexicographic order.
struct TaskResult {
    bool found = false;
    long long identity = 0;
    CandidateSet set;
    SolveStats stats;
};

class SubsetTask {
public:
    SubsetTask(const SolverContext& ctx, const Enumeration& en, std::size_t size,
               bool budget_mode, long long budget, long long initial_bound)
        : ctx_(ctx), en_(en), size_(size), budget_mode_(budget_mode), budget_(budget),
          bound_(initial_bound) {}

    TaskResult run(std::size_t first) {
        current_.clear();
        mask_.assign(mask_words(ctx_.table->row_count()), 0);
        star_sum_ = 0;
        result_ = TaskResult{};
        descend(first);
        return std::move(result_);
    }

private:
    // Places usable[ui] and recurses; returns true to stop the whole task.
    bool descend(std::size_t ui) {
        const CandidateVector& v = ctx_.space.vectors[en_.usable[ui]];
        const long long stars = star_sum_ + v.star_count;
        if (budget_mode_ ? ctx_.k * stars > budget_ : ctx_.k * stars >= effective_bound()) {
            ++result_.stats.sets_pruned;
            return false;
        }
        Mask saved = mask_;
        mask_or(mask_, v.compat);
        current_.push_back(en_.usable[ui]);
        star_sum_ = stars;

        bool stop = false;
        if (current_.size() == size_) {
            if (mask_is_full(mask_, en_.full))
                stop = evaluate();
            else
                ++result_.stats.sets_pruned;
        } else if (!mask_covers(mask_, en_.suffix_union[ui + 1], en_.full)) {
            ++result_.stats.sets_pruned;
        } else {
            const std::size_t need = size_ - current_.size();
            for (std::size_t next = ui + 1; next + need <= en_.usable.size() && !stop; ++next)
                stop = descend(next);
        }

        current_.pop_back();
        star_sum_ -= v.star_count;
        mask_ = std::move(saved);
        return stop;
    }

    bool evaluate() {
        Evaluation ev = evaluate_candidate_set(ctx_, current_, &result_.stats);
        if (!ev.feasible) return false;
        if (budget_mode_) {
            if (ev.identity_cost > budget_) return false;
            result_.found = true;
            result_.identity = ev.identity_cost;
            result_.set = current_;
            return true;  // first acceptable set in this task wins
        }
        if (!result_.found || ev.identity_cost < result_.identity) {
            result_.found = true;
            result_.identity = ev.identity_cost;
            result_.set = current_;
        }
        return false;
    }

    long long effective_bound() const {
        return result_.found ? std::min(bound_, result_.identity) : bound_;
    }

    const SolverContext& ctx_;
    const Enumeration& en_;
    const std::size_t size_;
    const bool budget_mode_;
    const long long budget_;
    const long long bound_;

    CandidateSet current_;
    Mask mask_;
    long long star_sum_ = 0;
    TaskResult result_;
};

// Runs all first-index tasks of one subset size, sequentially or on a small
// thread pool. The merged winner is the earliest task with the best outcome,
// so the result does not depend on scheduling.
std::vector<TaskResult> run_phase(const SolverContext& ctx, const Enumeration& en,
                                  std::size_t size, bool budget_mode, long long budget,
                                  long long bound, int threads) {
    const std::size_t task_count = en.usable.size() + 1 - size;
    std::vector<TaskResult> results(task_count);
    if (threads <= 1 || task_count <= 1) {
        SubsetTask task(ctx, en, size, budget_mode, budget, bound);
        for (std::size_t i = 0; i < task_count; ++i) results[i] = task.run(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        SubsetTask task(ctx, en, size, budget_mode, budget, bound);
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= task_count) return;
            results[i] = task.run(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(threads, static_cast<int>(task_count));
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

SolveReport finalize_report(const SolverContext& ctx, const CandidateSet& set,
                            SolveStats stats,
                            std::chrono::steady_clock::time_point start) {
    Evaluation ev = evaluate_candidate_set(ctx, set, nullptr);
    if (!ev.feasible) throw std::logic_error("solver: winning candidate set became infeasible");

    SolveReport report;
    for (std::size_t idx : set)
        report.chosen_vectors.push_back(ctx.space.vectors[idx].to_resolution());
    report.clustering =
        extract_clustering(ctx, set, ev.split, ev.weights, ev.graph, ev.matching);
    report.cost = report.clustering.cost;
    report.identity_cost = ev.identity_cost;
    report.matching_weight = ev.matching.total_weight;
    report.total_row_weight = ev.weights.total_row_weight;
    report.left_vertex_count = ev.graph.graph.left_count;
    report.stats = stats;
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

void accumulate(SolveStats& into, const SolveStats& from) {
    into.sets_examined += from.sets_examined;
    into.sets_pruned += from.sets_pruned;
    into.feasible_matchings += from.feasible_matchings;
    into.infeasible_matchings += from.infeasible_matchings;
    into.completeness_violations += from.completeness_violations;
}

}  // namespace

std::optional<SolveReport> solve_budget(const Table& t, long long k, long long budget,
                                        const SolverOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    if (budget < 0) throw std::invalid_argument("solver: budget must be >= 0");
    SolverContext ctx = make_solver_context(t, k, opts);
    Enumeration en = make_enumeration(ctx);

    SolveStats stats;
    for (std::size_t size = 1; size <= en.max_size; ++size) {
        auto results = run_phase(ctx, en, size, true, budget, kNoBound, opts.threads);
        const TaskResult* winner = nullptr;
        for (const auto& r : results) {
            accumulate(stats, r.stats);
            if (!winner && r.found) winner = &r;
        }
        if (winner) return finalize_report(ctx, winner->set, stats, start);
    }
    return std::nullopt;
}

SolveReport solve_min(const Table& t, long long k, const SolverOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    if (k > static_cast<long long>(t.row_count()))
        throw std::invalid_argument("solver: k exceeds the number of rows");
    SolverContext ctx = make_solver_context(t, k, opts);
    Enumeration en = make_enumeration(ctx);

    SolveStats stats;
    bool have_best = false;
    long long best_identity = kNoBound;
    CandidateSet best_set;
    for (std::size_t size = 1; size <= en.max_size; ++size) {
        auto results = run_phase(ctx, en, size, false, 0, best_identity, opts.threads);
        for (const auto& r : results) {
            accumulate(stats, r.stats);
            if (r.found && (!have_best || r.identity < best_identity)) {
                have_best = true;
                best_identity = r.identity;
                best_set = r.set;
            }
        }
    }
    if (!have_best) throw std::logic_error("solver: no feasible candidate set found");
    return finalize_report(ctx, best_set, stats, start);
}

}  // namespace kanon
