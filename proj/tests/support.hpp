#pragma once

#include <random>
#include <string>
#include <vector>

#include "kanon/instances.hpp"
#include "kanon/table.hpp"

namespace kanon::test {

inline Table make_table(const std::vector<std::vector<std::string>>& records) {
    return Table::from_strings(records);
}

inline Row make_row(std::vector<Symbol> entries) { return Row{std::move(entries)}; }

inline ResolutionVector make_vector(std::vector<Symbol> entries) {
    return ResolutionVector::from_entries(std::move(entries));
}

}  // namespace kanon::test
