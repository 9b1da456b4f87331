#include "probcov/aggregate_eval.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "probcov/word_expand.hpp"

namespace probcov {

MergePolicy parse_merge_policy(const std::string& name) {
    if (name == "always") return MergePolicy::Always;
    if (name == "never") return MergePolicy::Never;
    if (name == "bridge") return MergePolicy::Bridge;
    throw std::invalid_argument("unknown merge policy '" + name + "'");
}

std::string to_string(MergePolicy policy) {
    switch (policy) {
    case MergePolicy::Always: return "always";
    case MergePolicy::Never: return "never";
    case MergePolicy::Bridge: return "bridge";
    }
    return "?";
}

namespace {

struct ItemsHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<AggregateEntry> merge_vec(std::vector<AggregateEntry> entries) {
    std::unordered_map<std::vector<int>, double, ItemsHash> sums;
    sums.reserve(entries.size());
    for (AggregateEntry& en : entries) sums[std::move(en.items)] += en.p;
    std::vector<AggregateEntry> out;
    out.reserve(sums.size());
    for (auto& [items, p] : sums) out.push_back(AggregateEntry{items, p});
    return out;
}

} // namespace

AggregateMap merge(std::vector<AggregateEntry> entries) {
    return AggregateMap{merge_vec(std::move(entries)), true};
}

std::vector<NodeId> detect_bridges(const ExecModel& e) {
    std::vector<char> fed_by_chain(e.nodes().size(), 0);
    for (const ExecNode& u : e.nodes())
        if (u.next.size() == 1) fed_by_chain[u.next[0].to] = 1;
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(e.nodes().size()); ++v)
        if (fed_by_chain[v] && e.node(v).next.size() > 1) out.push_back(v);
    return out;
}

double aggregate_prob_on(const ExecModel& e, long long n, MergePolicy policy,
                         AggregateStats* stats) {
    AggregateStats local;
    AggregateStats& st = stats ? *stats : local;
    st = AggregateStats{};

    std::vector<char> merge_here(e.nodes().size(), 0);
    if (policy == MergePolicy::Always) {
        std::fill(merge_here.begin(), merge_here.end(), 1);
    } else if (policy == MergePolicy::Bridge) {
        for (NodeId v : detect_bridges(e)) merge_here[v] = 1;
    }

    // Item of each node: the state for k = 1, the interned window for
    // k > 1; -1 where the node contributes nothing (sharp or padded).
    std::vector<int> item(e.nodes().size(), -1);
    {
        std::map<std::vector<int>, int> window_ids;
        for (NodeId u = 0; u < static_cast<NodeId>(e.nodes().size()); ++u) {
            const auto& stv = e.node(u).st;
            if (stv.empty() ||
                std::any_of(stv.begin(), stv.end(), [](int x) { return x == kSharpPad; }))
                continue;
            if (e.word_length() == 1)
                item[u] = stv[0];
            else
                item[u] = window_ids.try_emplace(stv, static_cast<int>(window_ids.size()))
                              .first->second;
        }
    }

    // Bottom-up sweep; a successor's annotation is freed once every
    // predecessor has consumed it.
    std::vector<int> pending(e.nodes().size(), 0);
    for (const ExecNode& u : e.nodes())
        for (const ExecEdge& ed : u.next) ++pending[ed.to];

    std::vector<std::vector<AggregateEntry>> ann(e.nodes().size());
    ann[e.terminal()] = {AggregateEntry{{}, 1.0}}; // empty cover, probability 1
    const auto& topo = e.topo_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        const NodeId uid = *it;
        if (uid == e.terminal()) continue;
        const ExecNode& u = e.node(uid);
        std::vector<AggregateEntry> acc;
        for (const ExecEdge& ed : u.next) {
            for (const AggregateEntry& en : ann[ed.to]) {
                AggregateEntry ext;
                ext.items = en.items;
                if (item[uid] >= 0) {
                    auto pos = std::lower_bound(ext.items.begin(), ext.items.end(), item[uid]);
                    if (pos == ext.items.end() || *pos != item[uid])
                        ext.items.insert(pos, item[uid]);
                }
                ext.p = en.p * ed.prob;
                acc.push_back(std::move(ext));
            }
            if (--pending[ed.to] == 0) {
                ann[ed.to].clear();
                ann[ed.to].shrink_to_fit();
            }
        }
        st.entries_created += acc.size();
        if (merge_here[uid] && uid != e.root()) {
            acc = merge_vec(std::move(acc));
            ++st.merges_performed;
        }
        st.entries_retained += acc.size();
        ann[uid] = std::move(acc);
    }

    // The final sum needs distinct item sets, so the root always merges.
    std::vector<AggregateEntry> root_entries = merge_vec(std::move(ann[e.root()]));
    ++st.merges_performed;
    st.root_entries = root_entries.size();
    double prob = 0.0;
    for (const AggregateEntry& en : root_entries)
        if (static_cast<long long>(en.items.size()) >= n) prob += en.p;
    return std::clamp(prob, 0.0, 1.0); // shave accumulated rounding
}

double aggregate_prob(const MdpModel& model, const Trace& trace, int k, long long n,
                      MergePolicy policy, AggregateStats* stats) {
    if (k < 1) throw std::invalid_argument("aggregate goal requires k >= 1");
    if (n < 0) throw std::invalid_argument("aggregate goal requires N >= 0");
    ExecModel e = build_exec_model(model, trace);
    if (k > 1) {
        ExecModel expanded = expand(e, k);
        return aggregate_prob_on(expanded, n, policy, stats);
    }
    return aggregate_prob_on(e, n, policy, stats);
}

} // namespace probcov
