#include "kanon/oracle.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace kanon {

namespace {

struct BlockState {
    std::vector<Symbol> resolution;
    int stars = 0;
    int size = 0;
};

class PartitionSearch {
public:
    PartitionSearch(const Table& t, long long k) : table_(t), k_(k), n_(t.row_count()) {}

    OracleResult run() {
        blocks_.reserve(n_);
        assignment_.assign(n_, 0);
        place(0);
        OracleResult result;
        result.cost = best_cost_;
        result.partitions_examined = examined_;
        std::vector<std::vector<std::size_t>> blocks(best_block_count_);
        for (std::size_t i = 0; i < n_; ++i) blocks[best_assignment_[i]].push_back(i);
        result.clustering = make_clustering(table_, std::move(blocks));
        return result;
    }

private:
    void place(std::size_t row) {
        if (row == n_) {
            if (deficit_ != 0) return;
            ++examined_;
            long long cost = 0;
            for (const auto& b : blocks_) cost += static_cast<long long>(b.size) * b.stars;
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_assignment_ = assignment_;
                best_block_count_ = blocks_.size();
            }
            return;
        }
        // Undersized blocks must still be fillable by the remaining rows.
        const long long remaining = static_cast<long long>(n_ - row);
        const std::size_t open = blocks_.size();
        for (std::size_t b = 0; b <= open && b < n_; ++b) {
            bool fresh = b == open;
            long long deficit_delta;
            if (fresh) {
                deficit_delta = k_ - 1;  // new singleton block
            } else {
                deficit_delta = blocks_[b].size < k_ ? -1 : 0;
            }
            if (deficit_ + deficit_delta > remaining - 1) continue;
            push_row(b, row);
            deficit_ += deficit_delta;
            assignment_[row] = b;
            place(row + 1);
            deficit_ -= deficit_delta;
            pop_row(b);
        }
    }

    void push_row(std::size_t b, std::size_t row) {
        const Row& r = table_.row(row);
        if (b == blocks_.size()) {
            blocks_.push_back(BlockState{r.entries, 0, 1});
            undo_.push_back({});
            return;
        }
        BlockState& block = blocks_[b];
        std::vector<std::pair<std::size_t, Symbol>> changed;
        for (std::size_t j = 0; j < block.resolution.size(); ++j) {
            Symbol s = block.resolution[j];
            if (s != kStar && s != r.entries[j]) {
                changed.emplace_back(j, s);
                block.resolution[j] = kStar;
                ++block.stars;
            }
        }
        ++block.size;
        undo_.push_back(std::move(changed));
    }

    void pop_row(std::size_t b) {
        auto changed = std::move(undo_.back());
        undo_.pop_back();
        BlockState& block = blocks_[b];
        if (block.size == 1) {
            blocks_.pop_back();
            return;
        }
        --block.size;
        for (const auto& [j, s] : changed) {
            block.resolution[j] = s;
            --block.stars;
        }
    }

    const Table& table_;
    const long long k_;
    const std::size_t n_;
    std::vector<BlockState> blocks_;
    std::vector<std::vector<std::pair<std::size_t, Symbol>>> undo_;
    std::vector<std::size_t> assignment_;
    long long deficit_ = 0;
    unsigned long long examined_ = 0;
    long long best_cost_ = std::numeric_limits<long long>::max();
    std::vector<std::size_t> best_assignment_;
    std::size_t best_block_count_ = 0;
};

}  // namespace

OracleResult brute_force_min(const Table& t, long long k, std::optional<std::size_t> limit) {
    if (k < 1) throw std::invalid_argument("oracle: k must be >= 1");
    if (k > static_cast<long long>(t.row_count()))
        throw std::invalid_argument("oracle: k exceeds the number of rows");
    const std::size_t cap = limit.value_or(k == 1 ? 8 : 12);
    if (t.row_count() > cap)
        throw std::invalid_argument("oracle: table has " + std::to_string(t.row_count()) +
                                    " rows, above the enumeration cap of " + std::to_string(cap));
    return PartitionSearch(t, k).run();
}

}  // namespace kanon
