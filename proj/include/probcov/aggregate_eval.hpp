#ifndef PROBCOV_AGGREGATE_EVAL_HPP
#define PROBCOV_AGGREGATE_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "probcov/exec_model.hpp"

namespace probcov {

// When to merge duplicate item sets during the bottom-up sweep. Policies
// trade bookkeeping cost for annotation size; results are identical.
enum class MergePolicy {
    Always, // merge at every node
    Never,  // merge only once, at the root
    Bridge, // merge where a single-successor chain meets a branching node
};

MergePolicy parse_merge_policy(const std::string& name);
std::string to_string(MergePolicy policy);

/// (covered items, probability) annotation. Items are interned ids of
/// genuine states or windows; sharp and padded windows are never items.
struct AggregateEntry {
    std::vector<int> items; // sorted, distinct
    double p = 0.0;
};

struct AggregateMap {
    std::vector<AggregateEntry> entries;
    bool merged = false;
};

// Sums probabilities of entries with equal item sets.
AggregateMap merge(std::vector<AggregateEntry> entries);

// Final nodes of maximal bridges: branching nodes fed by at least one
// single-successor node.
std::vector<NodeId> detect_bridges(const ExecModel& e);

struct AggregateStats {
    std::uint64_t entries_created = 0;  // before any merging
    std::uint64_t entries_retained = 0; // stored after per-node policy
    std::uint64_t merges_performed = 0;
    std::uint64_t root_entries = 0; // distinct item sets summed at the root
};

// P(^k>=n | trace). Expands the execution model when k > 1.
double aggregate_prob(const MdpModel& model, const Trace& trace, int k, long long n,
                      MergePolicy policy = MergePolicy::Bridge,
                      AggregateStats* stats = nullptr);

// Same sweep on an already built (and, for k > 1, already expanded) model.
double aggregate_prob_on(const ExecModel& e, long long n,
                         MergePolicy policy = MergePolicy::Bridge,
                         AggregateStats* stats = nullptr);

} // namespace probcov

#endif
