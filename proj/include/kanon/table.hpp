#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kanon {

/// Per-column interned symbol id. Ids are only meaningful within their column.
using Symbol = std::int32_t;

/// Reserved sentinel for a suppressed entry. Never a member of any column alphabet.
inline constexpr Symbol kStar = -1;

struct Row {
    std::vector<Symbol> entries;

    bool operator==(const Row&) const = default;
};

/// A fully resolved cluster template: per-column symbol or kStar.
/// star_count is kept in sync with the number of kStar entries.
struct ResolutionVector {
    std::vector<Symbol> entries;
    int star_count = 0;

    static ResolutionVector from_entries(std::vector<Symbol> entries);
    static ResolutionVector from_row(const Row& row);

    bool operator==(const ResolutionVector&) const = default;
};

/// Canonical order on symbol vectors: lexicographic on interned ids with
/// kStar ordered after every real symbol. Used everywhere determinism of
/// group/vector ordering matters.
bool symbols_less(std::span<const Symbol> a, std::span<const Symbol> b);

/// A maximal set of identical rows.
struct Group {
    Row representative;
    std::vector<std::size_t> members;  // sorted row indices

    std::size_t size() const { return members.size(); }
    long long excess(long long k) const {
        long long s = static_cast<long long>(members.size());
        return s > k ? s - k : 0;
    }
};

/// An immutable table of n rows over per-column finite alphabets.
/// Symbols are interned per column; the reverse mapping to the original
/// text is retained for output.
class Table {
public:
    /// Empty placeholder; only from_strings builds a usable table.
    Table() = default;

    /// Builds a table from raw text records. Every record must have the same
    /// number of fields, the field text "*" is rejected (reserved for
    /// suppression output), and at least one row and one column are required.
    static Table from_strings(const std::vector<std::vector<std::string>>& records);

    std::size_t row_count() const { return rows_.size(); }
    std::size_t column_count() const { return column_count_; }

    const Row& row(std::size_t i) const { return rows_[i]; }
    const std::vector<Row>& rows() const { return rows_; }

    std::size_t alphabet_size(std::size_t column) const { return alphabets_[column].size(); }
    const std::string& symbol_text(std::size_t column, Symbol id) const;

    /// Product over columns of (alphabet size + 1); saturates at the given cap.
    unsigned long long candidate_space_size(unsigned long long cap) const;

private:
    std::size_t column_count_ = 0;
    std::vector<Row> rows_;
    std::vector<std::vector<std::string>> alphabets_;  // column -> id -> text
};

/// A partition of the row indices with per-block resolution vectors.
/// cost is the total number of suppressed entries over all blocks.
struct Clustering {
    std::vector<std::vector<std::size_t>> blocks;  // each sorted ascending
    std::vector<ResolutionVector> resolutions;     // parallel to blocks
    long long cost = 0;

    bool is_k_feasible(long long k) const;
};

/// Number of positions where the two rows differ. Throws on length mismatch.
int hamming(const Row& a, const Row& b);

/// Maximal groups of identical rows, ordered canonically by representative.
std::vector<Group> group_rows(const Table& t);

/// True iff every group of identical rows has at least k members.
bool is_k_anonymous(const Table& t, long long k);

/// Resolution vector of a nonempty block: the common symbol where all block
/// rows agree, kStar elsewhere.
ResolutionVector resolution_of(const Table& t, std::span<const std::size_t> block);

/// True iff the row agrees with the vector at every non-star position.
bool compatible(const ResolutionVector& v, const Row& r);

/// The subset of s_prime compatible with r, in s_prime order.
std::vector<ResolutionVector> comp_set(const Row& r, const std::vector<ResolutionVector>& s_prime);

/// Validates that the blocks partition the table's rows, then assembles the
/// clustering with per-block resolution vectors and total cost.
Clustering make_clustering(const Table& t, std::vector<std::vector<std::size_t>> blocks);

/// Total suppressed entries of the partition given by blocks.
long long clustering_cost(const Table& t, const std::vector<std::vector<std::size_t>>& blocks);

}  // namespace kanon
