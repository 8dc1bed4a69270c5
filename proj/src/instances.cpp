#include "kanon/instances.hpp"

#include <string>
#include <vector>

namespace kanon {

Table worked_example_table() {
    std::vector<std::vector<std::string>> records = {
        {"a", "a", "a"}, {"a", "a", "a"}, {"a", "a", "a"}, {"a", "a", "a"},
        {"a", "b", "a"}, {"b", "b", "b"}, {"b", "b", "c"},
    };
    return Table::from_strings(records);
}

Table random_table(std::mt19937_64& rng, const RandomTableParams& params) {
    const long long n = draw(rng, params.min_rows, params.max_rows);
    const long long m = draw(rng, params.min_columns, params.max_columns);
    std::vector<long long> sigma(static_cast<std::size_t>(m));
    for (auto& s : sigma) s = draw(rng, params.min_alphabet, params.max_alphabet);

    std::vector<std::vector<std::string>> records;
    records.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        std::vector<std::string> row;
        row.reserve(static_cast<std::size_t>(m));
        for (long long j = 0; j < m; ++j)
            row.push_back(std::string(1, static_cast<char>('a' + draw(rng, 0, sigma[static_cast<std::size_t>(j)] - 1))));
        records.push_back(std::move(row));
    }
    return Table::from_strings(records);
}

}  // namespace kanon
