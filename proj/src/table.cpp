#include "kanon/table.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kanon {

ResolutionVector ResolutionVector::from_entries(std::vector<Symbol> entries) {
    ResolutionVector v;
    v.star_count = static_cast<int>(std::count(entries.begin(), entries.end(), kStar));
    v.entries = std::move(entries);
    return v;
}

ResolutionVector ResolutionVector::from_row(const Row& row) {
    ResolutionVector v;
    v.entries = row.entries;
    v.star_count = 0;
    return v;
}

bool symbols_less(std::span<const Symbol> a, std::span<const Symbol> b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        if (a[i] == kStar) return false;  // star sorts last
        if (b[i] == kStar) return true;
        return a[i] < b[i];
    }
    return a.size() < b.size();
}

Table Table::from_strings(const std::vector<std::vector<std::string>>& records) {
    if (records.empty()) throw std::invalid_argument("table: no rows");
    const std::size_t m = records.front().size();
    if (m == 0) throw std::invalid_argument("table: no columns");

    Table t;
    t.column_count_ = m;
    t.alphabets_.resize(m);
    std::vector<std::map<std::string, Symbol>> intern(m);

    t.rows_.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.size() != m)
            throw std::invalid_argument("table: row " + std::to_string(i) + " has " +
                                        std::to_string(rec.size()) + " fields, expected " +
                                        std::to_string(m));
        Row row;
        row.entries.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            const std::string& text = rec[j];
            if (text == "*")
                throw std::invalid_argument("table: the symbol '*' is reserved for suppressed "
                                            "entries and may not appear in input (row " +
                                            std::to_string(i) + ", column " + std::to_string(j) + ")");
            auto [it, inserted] = intern[j].try_emplace(text, static_cast<Symbol>(t.alphabets_[j].size()));
            if (inserted) t.alphabets_[j].push_back(text);
            row.entries.push_back(it->second);
        }
        t.rows_.push_back(std::move(row));
    }
    return t;
}

const std::string& Table::symbol_text(std::size_t column, Symbol id) const {
    if (column >= column_count_ || id < 0 ||
        static_cast<std::size_t>(id) >= alphabets_[column].size())
        throw std::invalid_argument("table: symbol lookup out of range");
    return alphabets_[column][static_cast<std::size_t>(id)];
}

unsigned long long Table::candidate_space_size(unsigned long long cap) const {
    unsigned long long product = 1;
    for (const auto& alphabet : alphabets_) {
        unsigned long long factor = alphabet.size() + 1;
        if (product > cap / factor) return cap;
        product *= factor;
    }
    return product;
}

bool Clustering::is_k_feasible(long long k) const {
    for (const auto& block : blocks)
        if (static_cast<long long>(block.size()) < k) return false;
    return true;
}

int hamming(const Row& a, const Row& b) {
    if (a.entries.size() != b.entries.size())
        throw std::invalid_argument("hamming: rows have different lengths");
    int d = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i] != b.entries[i]) ++d;
    return d;
}

std::vector<Group> group_rows(const Table& t) {
    std::vector<std::size_t> order(t.row_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return symbols_less(t.row(a).entries, t.row(b).entries);
    });

    std::vector<Group> groups;
    for (std::size_t i : order) {
        if (!groups.empty() && groups.back().representative == t.row(i)) {
            groups.back().members.push_back(i);
        } else {
            groups.push_back(Group{t.row(i), {i}});
        }
    }
    for (auto& g : groups) std::sort(g.members.begin(), g.members.end());
    return groups;
}

bool is_k_anonymous(const Table& t, long long k) {
    if (k < 1) throw std::invalid_argument("is_k_anonymous: k must be >= 1");
    for (const auto& g : group_rows(t))
        if (static_cast<long long>(g.size()) < k) return false;
    return true;
}

ResolutionVector resolution_of(const Table& t, std::span<const std::size_t> block) {
    if (block.empty()) throw std::invalid_argument("resolution_of: empty block");
    std::vector<Symbol> entries = t.row(block.front()).entries;
    for (std::size_t idx : block) {
        const Row& r = t.row(idx);
        for (std::size_t j = 0; j < entries.size(); ++j)
            if (entries[j] != kStar && entries[j] != r.entries[j]) entries[j] = kStar;
    }
    return ResolutionVector::from_entries(std::move(entries));
}

bool compatible(const ResolutionVector& v, const Row& r) {
    if (v.entries.size() != r.entries.size())
        throw std::invalid_argument("compatible: length mismatch");
    for (std::size_t j = 0; j < v.entries.size(); ++j)
        if (v.entries[j] != kStar && v.entries[j] != r.entries[j]) return false;
    return true;
}

std::vector<ResolutionVector> comp_set(const Row& r, const std::vector<ResolutionVector>& s_prime) {
    std::vector<ResolutionVector> result;
    for (const auto& v : s_prime)
        if (compatible(v, r)) result.push_back(v);
    return result;
}

Clustering make_clustering(const Table& t, std::vector<std::vector<std::size_t>> blocks) {
    std::vector<char> seen(t.row_count(), 0);
    std::size_t covered = 0;
    for (auto& block : blocks) {
        if (block.empty()) throw std::invalid_argument("clustering: empty block");
        std::sort(block.begin(), block.end());
        for (std::size_t idx : block) {
            if (idx >= t.row_count() || seen[idx])
                throw std::invalid_argument("clustering: blocks do not partition the rows");
            seen[idx] = 1;
            ++covered;
        }
    }
    if (covered != t.row_count())
        throw std::invalid_argument("clustering: blocks do not cover all rows");

    Clustering c;
    c.blocks = std::move(blocks);
    c.resolutions.reserve(c.blocks.size());
    for (const auto& block : c.blocks) {
        ResolutionVector v = resolution_of(t, block);
        long long block_cost = static_cast<long long>(block.size()) * v.star_count;
        if (c.cost > std::numeric_limits<long long>::max() - block_cost)
            throw std::overflow_error("clustering: cost overflow");
        c.cost += block_cost;
        c.resolutions.push_back(std::move(v));
    }
    return c;
}

long long clustering_cost(const Table& t, const std::vector<std::vector<std::size_t>>& blocks) {
    return make_clustering(t, blocks).cost;
}

}  // namespace kanon
