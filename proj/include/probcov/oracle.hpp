#ifndef PROBCOV_ORACLE_HPP
#define PROBCOV_ORACLE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "probcov/exec_model.hpp"
#include "probcov/goal.hpp"

namespace probcov {

// Reference implementations used for testing and benchmark baselines.
// Deliberately direct; not a performance path.

// Does a full execution's state sequence cover the goal? Sentences follow
// the three-case recursion (empty sequence covers nothing; a lone clause is
// a segment match; otherwise match the head clause as a prefix and continue
// from the same position, or drop one state and retry). Aggregates count
// distinct contiguous length-k segments. The sequence must be sharp-free.
bool covers(const std::vector<std::string>& state_seq, const Goal& goal);
bool covers(const std::vector<std::string_view>& state_seq, const Goal& goal);

// Exact P(goal | e) by full path enumeration. Requires an unexpanded model
// (word_length 1). Throws PathCapExceeded when the model has more than
// `path_cap` full paths.
double brute_force_prob(const ExecModel& e, const Goal& goal,
                        std::uint64_t path_cap = 10'000'000);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Coverage frequency over `samples` seeded random walks, with the binomial
// standard error. Deterministic for a fixed seed.
MonteCarloResult monte_carlo_prob(const ExecModel& e, const Goal& goal, std::uint64_t samples,
                                  std::uint64_t seed);

} // namespace probcov

#endif
