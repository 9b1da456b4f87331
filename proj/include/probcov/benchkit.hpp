#ifndef PROBCOV_BENCHKIT_HPP
#define PROBCOV_BENCHKIT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "probcov/aggregate_eval.hpp"
#include "probcov/exec_model.hpp"
#include "probcov/goal.hpp"
#include "probcov/model.hpp"

namespace probcov {

// Benchmark family: a six-state core whose middle sections loop on c and b,
// plus m satellite states around state 4. m controls how non-deterministic
// the second c-section is; m = 0 leaves state 4 with a single c-loop.
MdpModel make_model(int m);

// a c^i a b^i a c^i a
Trace make_trace(int i);

struct StandardGoals {
    Goal f1; // <2>;<t0>        simple sentence
    Goal f2; // <1,1,1>;<4,4,4> sentence needing 3-word expansion
    Goal f3; // ^1>=8           aggregate
    Goal f4; // ^3>=8           aggregate needing 3-word expansion
};
StandardGoals standard_goals();

struct BenchCase {
    int m = 0;
    int i = 0;
    std::string goal_name;
    std::string goal_text;
    MergePolicy policy = MergePolicy::Bridge; // meaningful for aggregates only
    bool is_aggregate = false;
    int expand_k = 1; // 1 = no expansion

    std::uint64_t nodes = 0; // including the sharp terminal
    std::uint64_t edges = 0;
    std::uint64_t paths = 0;
    std::uint64_t nodes_expanded = 0; // nodes of E^k, 0 when not expanded

    double probability = 0.0;
    double label_ms = 0.0; // median over repetitions
    double brute_ms = 0.0;
    bool brute_capped = false;
    double speedup = 0.0; // brute_ms / label_ms, 0 when capped
};

struct BenchConfig {
    std::vector<int> ms = {0, 2, 8};
    std::vector<int> is = {5, 6, 7, 8, 9};
    std::vector<std::string> goal_names = {"f1", "f2", "f3", "f4"};
    std::vector<MergePolicy> policies = {MergePolicy::Bridge};
    int repetitions = 5;
    std::uint64_t paths_cap = 10'000'000;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchCase> cases;
};

BenchReport run_benchmark(const BenchConfig& config);

std::string format_table(const BenchReport& report);
void write_records(const BenchReport& report, std::ostream& os);     // one JSON object per line
void write_speedup_csv(const BenchReport& report, std::ostream& os); // for external plotting

} // namespace probcov

#endif
