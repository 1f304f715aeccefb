#pragma once

#include <vector>

#include "ag/groebner.hpp"

namespace ag {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& m) : std::runtime_error(m) {}
};

constexpr unsigned long long kDefaultOracleBudget = 50000000ULL;

struct PointCount {
    long q = 0;
    size_t ambient = 0;
    unsigned long long count = 0;
};

struct DimEstimate {
    long estimate = 0;
    std::vector<PointCount> counts;
    bool consistent = true;
};

struct SampleResult {
    bool found = false;
    long q = 0;
    std::vector<long> point;
};

// Exact number of common zeros in F_q^N by pruned exhaustive enumeration.
PointCount count_points(const Ideal& I, long q, unsigned long long budget = kDefaultOracleBudget);
PointCount count_points_serial(const Ideal& I, long q, unsigned long long budget = kDefaultOracleBudget);

// Least-squares slope of log(count) against log(q), rounded; advisory only.
DimEstimate estimate_dimension(const Ideal& I, const std::vector<long>& primes,
                               unsigned long long budget = kDefaultOracleBudget);

// A point of V(closed) \ V(excluded) over some listed prime, or not-found. Never a
// nonexistence claim.
SampleResult sample_nonempty(const Ideal& closed, const Ideal& excluded,
                             const std::vector<long>& primes,
                             unsigned long long budget = kDefaultOracleBudget);

}  // namespace ag
