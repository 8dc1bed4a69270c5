#pragma once

#include <optional>

#include "kanon/table.hpp"

namespace kanon {

struct OracleResult {
    long long cost = 0;
    Clustering clustering;
    unsigned long long partitions_examined = 0;
};

/// Exhaustive minimum over all partitions of the rows into blocks of size
/// >= k, enumerated as restricted-growth sequences. Branches whose
/// undersized blocks can no longer be filled are abandoned early; complete
/// feasible partitions are all visited and counted. Returns the first
/// optimum in enumeration order.
///
/// Refuses tables above the row cap (default 12, or 8 when k == 1) unless
/// `limit` raises it. Throws std::invalid_argument when k > n or over cap.
OracleResult brute_force_min(const Table& t, long long k,
                             std::optional<std::size_t> limit = std::nullopt);

}  // namespace kanon
