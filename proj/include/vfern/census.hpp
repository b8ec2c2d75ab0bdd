#pragma once

#include "vfern/universal.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfern {

// Injective F_q-linear maps F_q^n -> F_{q^m} up to scaling.
std::uint64_t omega_count(unsigned n, unsigned q, unsigned m);
// Same count by enumerating functional classes.
std::uint64_t omega_bruteforce(unsigned n, unsigned q, unsigned m);

struct StratumCount {
    std::string flag;                // flag key
    std::vector<unsigned> dims;      // step dimensions
    std::uint64_t count = 0;
};

struct CountReport {
    unsigned n = 0, q = 0, m = 0;
    std::vector<std::uint64_t> omega;  // omega[d] for d = 0..n
    std::vector<StratumCount> strata;
    std::uint64_t total = 0;
    std::optional<std::uint64_t> oracle;

    bool agrees() const { return !oracle || *oracle == total; }
};

CountReport bv_count_strata(unsigned n, unsigned q, unsigned m);

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(double size, double budget);
    double size;
};

// Number of tuples the oracle would enumerate (as a double; it may overflow 64 bits).
double bruteforce_size(unsigned n, unsigned q, unsigned m);
std::uint64_t bv_count_bruteforce(unsigned n, unsigned q, unsigned m, double budget = 1e7);

void write_csv(std::ostream& os, const CountReport& r);

}  // namespace vfern
