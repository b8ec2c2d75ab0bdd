#include "vfern/census.hpp"

#include <doctest.h>

#include <sstream>

using namespace vfern;

TEST_CASE("injective maps up to scaling")
{
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned m = 1; m <= 3; ++m)
            CHECK(omega_count(1, q, m) == 1);
    CHECK(omega_count(2, 2, 2) == 2);
    CHECK(omega_count(2, 3, 2) == 6);
    CHECK(omega_count(2, 3, 1) == 0);
    CHECK(omega_count(3, 2, 3) == 24);
    for (auto [n, q, m] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
             {1, 2, 1}, {2, 2, 2}, {2, 3, 2}, {2, 2, 3}, {3, 2, 3}, {2, 4, 2}, {2, 3, 1}})
        CHECK(omega_bruteforce(n, q, m) == omega_count(n, q, m));
}

TEST_CASE("stratum counts")
{
    CHECK(bv_count_strata(1, 2, 1).total == 1);
    CHECK(bv_count_strata(1, 5, 3).total == 1);
    CHECK(bv_count_strata(2, 2, 1).total == 3);
    CHECK(bv_count_strata(2, 2, 2).total == 5);
    CHECK(bv_count_strata(2, 3, 1).total == 4);
    CHECK(bv_count_strata(2, 4, 1).total == 5);
    CHECK(bv_count_strata(3, 2, 1).total == 21);
    CHECK(bv_count_strata(3, 2, 2).total == 49);
    CHECK(bv_count_strata(2, 3, 2).total == 10);

    const auto r = bv_count_strata(2, 2, 2);
    CHECK(r.strata.size() == 4);
    CHECK(r.omega == std::vector<std::uint64_t>{1, 1, 2});
}

TEST_CASE("stratum counts agree with enumeration")
{
    for (auto [n, q, m] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
             {1, 2, 1}, {2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {2, 3, 2}, {3, 2, 1}, {3, 2, 2}})
        CHECK(bv_count_bruteforce(n, q, m) == bv_count_strata(n, q, m).total);
}

TEST_CASE("enumeration budget")
{
    CHECK(bruteforce_size(5, 3, 2) > 1e7);
    try {
        bv_count_bruteforce(5, 3, 2, 1e3);
        FAIL("expected the budget to be exceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.size > 1e3);
    }
}

TEST_CASE("csv output")
{
    auto r = bv_count_strata(3, 2, 1);
    r.oracle = bv_count_bruteforce(3, 2, 1);
    CHECK(r.agrees());
    std::ostringstream os;
    write_csv(os, r);
    const std::string s = os.str();
    CHECK(s.rfind("n,q,m,flag,count\n", 0) == 0);
    CHECK(s.find("3,2,1,total,21\n") != std::string::npos);
    CHECK(s.find("3,2,1,oracle,21\n") != std::string::npos);

    r.oracle = 20;
    CHECK_FALSE(r.agrees());
}
