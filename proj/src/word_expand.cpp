#include "probcov/word_expand.hpp"

#include <map>
#include <stdexcept>

namespace probcov {

namespace {

// A window is the tuple of consecutive source nodes it covers, truncated at
// the source terminal; pads past the terminal stay implicit.
using Tuple = std::vector<NodeId>;

std::vector<int> window_label(const ExecModel& e, const Tuple& t, int k) {
    std::vector<int> st(static_cast<size_t>(k), kSharpPad);
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i] != e.terminal()) st[i] = e.node(t[i]).st[0];
    return st;
}

} // namespace

ExecModel expand(const ExecModel& e, int k) {
    if (k < 2) throw std::invalid_argument("expansion requires k >= 2");
    if (e.word_length() != 1) throw std::invalid_argument("model is already expanded");

    std::vector<ExecNode> nodes;
    nodes.push_back(ExecNode{{}, {}, 0}); // artificial sharp root
    std::map<Tuple, NodeId> ids;
    std::vector<Tuple> tuples{{}};
    auto get_or_create = [&](const Tuple& t) {
        auto [it, inserted] = ids.try_emplace(t, static_cast<NodeId>(nodes.size()));
        if (inserted) {
            nodes.push_back(ExecNode{window_label(e, t, k), {}, 0});
            tuples.push_back(t);
        }
        return it->second;
    };

    // Initial windows: every walk of k-1 edges from the source root,
    // truncated where it meets the terminal. Depth-first in edge order.
    struct WalkItem {
        Tuple prefix;
        double prob;
    };
    std::vector<WalkItem> stack{{Tuple{e.root()}, 1.0}};
    std::vector<std::pair<double, Tuple>> initial;
    while (!stack.empty()) {
        WalkItem w = std::move(stack.back());
        stack.pop_back();
        NodeId last = w.prefix.back();
        if (static_cast<int>(w.prefix.size()) == k || last == e.terminal()) {
            initial.emplace_back(w.prob, std::move(w.prefix));
            continue;
        }
        const auto& next = e.node(last).next;
        for (auto it = next.rbegin(); it != next.rend(); ++it) {
            WalkItem ext = w;
            ext.prefix.push_back(it->to);
            ext.prob *= it->prob;
            stack.push_back(std::move(ext));
        }
    }
    for (auto& [prob, t] : initial) {
        NodeId v = get_or_create(t); // may reallocate `nodes`
        nodes[0].next.push_back(ExecEdge{prob, v});
    }

    // Shift each window one step along the source model.
    for (size_t head = 1; head < tuples.size(); ++head) {
        const Tuple t = tuples[head];
        if (t.size() >= 2 && t[1] == e.terminal()) {
            continue; // only the padded tail remains; wired to the terminal below
        }
        if (t.back() == e.terminal()) {
            Tuple shifted(t.begin() + 1, t.end());
            NodeId v = get_or_create(shifted);
            nodes[head].next.push_back(ExecEdge{1.0, v});
            continue;
        }
        for (const ExecEdge& ed : e.node(t.back()).next) {
            Tuple shifted(t.begin() + 1, t.end());
            shifted.push_back(ed.to);
            NodeId v = get_or_create(shifted);
            nodes[head].next.push_back(ExecEdge{ed.prob, v});
        }
    }

    const NodeId terminal = static_cast<NodeId>(nodes.size());
    nodes.push_back(ExecNode{{}, {}, 0});
    for (size_t u = 1; u < tuples.size(); ++u)
        if (tuples[u].size() >= 2 && tuples[u][1] == e.terminal())
            nodes[u].next.push_back(ExecEdge{1.0, terminal});

    return ExecModel(std::move(nodes), 0, terminal, e.state_names(), e.source_trace(), k);
}

} // namespace probcov
