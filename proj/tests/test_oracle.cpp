#include <doctest.h>

#include <random>
#include <stdexcept>

#include "kanon/instances.hpp"
#include "kanon/oracle.hpp"
#include "support.hpp"

using namespace kanon;
using kanon::test::make_table;

TEST_CASE("worked example optimum is 4") {
    OracleResult r = brute_force_min(worked_example_table(), 2);
    CHECK(r.cost == 4);
    CHECK(r.clustering.is_k_feasible(2));
    CHECK(r.clustering.cost == 4);
}

TEST_CASE("identical rows cost nothing") {
    Table t = make_table({{"s", "s"}, {"s", "s"}, {"s", "s"}, {"s", "s"}});
    for (long long k = 1; k <= 4; ++k) CHECK(brute_force_min(t, k).cost == 0);
}

TEST_CASE("partition counts match the Bell numbers for k=1") {
    const unsigned long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<std::vector<std::string>> records;
        for (std::size_t i = 0; i < n; ++i) records.push_back({std::string(1, static_cast<char>('a' + i))});
        OracleResult r = brute_force_min(make_table(records), 1);
        CHECK(r.partitions_examined == bell[n]);
        CHECK(r.cost == 0);  // singletons are free at k=1
    }
}

TEST_CASE("cap refusal and overrides") {
    std::vector<std::vector<std::string>> records(13, {"a"});
    Table t = make_table(records);
    CHECK_THROWS_AS(brute_force_min(t, 2), std::invalid_argument);
    CHECK(brute_force_min(t, 2, 13).cost == 0);

    std::vector<std::vector<std::string>> nine(9, {"b"});
    CHECK_THROWS_AS(brute_force_min(make_table(nine), 1), std::invalid_argument);
    CHECK(brute_force_min(make_table(nine), 1, 9).cost == 0);

    CHECK_THROWS_AS(brute_force_min(make_table({{"a"}}), 2), std::invalid_argument);
}

TEST_CASE("at least k suppressions when the table is not k-anonymous") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        Table t = random_table(rng);
        long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        OracleResult r = brute_force_min(t, k);
        CHECK(r.cost >= 0);
        if (!is_k_anonymous(t, k)) CHECK(r.cost >= k);
        CHECK(r.clustering.is_k_feasible(k));
        CHECK(r.clustering.cost == r.cost);
    }
}

TEST_CASE("matches a hand-computed instance") {
    // Two pairs plus a stray row: the stray joins a pair, starring one column
    // of a 3-row block (cost 3) or the oracle finds something cheaper.
    Table t = make_table({{"a", "a"}, {"a", "a"}, {"a", "b"}});
    OracleResult r = brute_force_min(t, 2);
    CHECK(r.cost == 3);
    OracleResult one_block = brute_force_min(t, 3);
    CHECK(one_block.cost == 3);
}

TEST_CASE("deterministic representative clustering") {
    std::mt19937_64 rng(6);
    Table t = random_table(rng);
    OracleResult a = brute_force_min(t, 2);
    OracleResult b = brute_force_min(t, 2);
    CHECK(a.clustering.blocks == b.clustering.blocks);
    CHECK(a.partitions_examined == b.partitions_examined);
}
