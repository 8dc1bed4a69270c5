#pragma once

#include <cstdint>
#include <random>

#include "kanon/table.hpp"

namespace kanon {

/// The built-in worked example: seven 3-column rows (aaa x4, aba, bbb, bbc)
/// with optimum suppression cost 4 at k = 2. Used by the self test and as a
/// fixed point for regression checks.
Table worked_example_table();

struct RandomTableParams {
    int min_rows = 4;
    int max_rows = 8;
    int min_columns = 2;
    int max_columns = 3;
    int min_alphabet = 2;
    int max_alphabet = 3;
};

/// Deterministic small random table; draws use plain modulo so the stream
/// only depends on the mt19937_64 sequence.
Table random_table(std::mt19937_64& rng, const RandomTableParams& params = {});

/// Bounded draw in [lo, hi] from the raw engine stream.
inline long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace kanon
