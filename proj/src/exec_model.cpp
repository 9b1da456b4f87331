#include "probcov/exec_model.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

#include "probcov/errors.hpp"
#include "probcov/util.hpp"

namespace probcov {

Trace parse_trace(const std::string& text) {
    Trace t;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == kTauAction)
            throw std::invalid_argument("trace may not contain the internal action 'tau'");
        t.actions.push_back(tok);
    }
    if (t.actions.empty()) throw std::invalid_argument("trace is empty");
    return t;
}

ExecModel::ExecModel(std::vector<ExecNode> nodes, NodeId root, NodeId terminal,
                     std::vector<std::string> state_names, Trace source_trace, int word_length)
    : nodes_(std::move(nodes)), root_(root), terminal_(terminal),
      state_names_(std::move(state_names)), source_trace_(std::move(source_trace)),
      word_length_(word_length) {
    const int n = static_cast<int>(nodes_.size());

    // Kahn's algorithm; ready nodes processed in id order for determinism.
    std::vector<int> indeg(n, 0);
    for (const ExecNode& u : nodes_)
        for (const ExecEdge& e : u.next) ++indeg[e.to];
    std::vector<NodeId> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    topo_.reserve(n);
    while (!ready.empty()) {
        std::sort(ready.begin(), ready.end(), std::greater<>());
        NodeId u = ready.back();
        ready.pop_back();
        topo_.push_back(u);
        for (const ExecEdge& e : nodes_[u].next)
            if (--indeg[e.to] == 0) ready.push_back(e.to);
    }
    if (static_cast<int>(topo_.size()) != n)
        throw std::invalid_argument("execution model contains a cycle");
    if (topo_.empty() || topo_.front() != root_ || topo_.back() != terminal_)
        throw std::invalid_argument("execution model must start at the root and end at the terminal");

    for (NodeId u : topo_) {
        nodes_[u].depth = 0;
    }
    for (NodeId u : topo_) {
        for (const ExecEdge& e : nodes_[u].next)
            nodes_[e.to].depth = std::max(nodes_[e.to].depth, nodes_[u].depth + 1);
    }

    for (int u = 0; u < n; ++u) {
        if (u == terminal_) {
            if (!nodes_[u].next.empty() || !nodes_[u].st.empty())
                throw std::invalid_argument("terminal must be a sharp node without successors");
            continue;
        }
        double sum = 0.0;
        if (nodes_[u].next.empty())
            throw std::invalid_argument("non-terminal node without successors");
        for (const ExecEdge& e : nodes_[u].next) {
            assert(e.prob > 0.0);
            sum += e.prob;
        }
        if (std::abs(sum - 1.0) > kProbSumTol)
            throw std::invalid_argument("outgoing probabilities of a node do not sum to 1");
    }
}

int ExecModel::state_index(std::string_view name) const {
    for (int i = 0; i < static_cast<int>(state_names_.size()); ++i)
        if (state_names_[i] == name) return i;
    return -1;
}

std::string ExecModel::label_text(NodeId id) const {
    const ExecNode& u = nodes_[id];
    if (u.st.empty()) return "#";
    auto name = [&](int ix) { return ix == kSharpPad ? std::string("#") : state_names_[ix]; };
    if (u.st.size() == 1) return name(u.st[0]);
    std::string out = "[";
    for (size_t i = 0; i < u.st.size(); ++i) {
        if (i) out += ",";
        out += name(u.st[i]);
    }
    out += "]";
    return out;
}

std::string ExecModel::dump() const {
    std::string out = "exec-model trace=\"";
    for (size_t i = 0; i < source_trace_.actions.size(); ++i) {
        if (i) out += " ";
        out += source_trace_.actions[i];
    }
    out += "\" k=" + std::to_string(word_length_) + " nodes=" + std::to_string(nodes_.size()) +
           " root=" + std::to_string(root_) + " terminal=" + std::to_string(terminal_) + "\n";
    for (int u = 0; u < static_cast<int>(nodes_.size()); ++u) {
        out += "node " + std::to_string(u) + " st=" + label_text(u) +
               " depth=" + std::to_string(nodes_[u].depth) + "\n";
        for (const ExecEdge& e : nodes_[u].next)
            out += "  -> " + std::to_string(e.to) + " p=" + format_prob(e.prob) + "\n";
    }
    return out;
}

namespace {

// A node of the model under construction: state `s` reached after consuming
// `pos` trace symbols (tau steps do not advance pos).
struct Key {
    int pos;
    int s;
    bool operator<(const Key& o) const { return std::tie(pos, s) < std::tie(o.pos, o.s); }
};

// alive[pos][s]: some execution starting at s can consume the remaining
// trace. Within a layer the recursion follows tau chains, which are acyclic
// in a validated model.
class AliveTable {
public:
    AliveTable(const MdpModel& m, const Trace& tr)
        : model_(m), n_(static_cast<int>(m.states().size())),
          len_(static_cast<int>(tr.actions.size())) {
        tbl_.assign(len_ + 1, std::vector<signed char>(n_, -1));
        action_ix_.resize(len_);
        for (int j = 0; j < len_; ++j) action_ix_[j] = m.action_index(tr.actions[j]);
        tau_ = m.action_index(kTauAction);
    }

    bool alive(int pos, int s) {
        signed char& memo = tbl_[pos][s];
        if (memo >= 0) return memo != 0;
        bool result = false;
        if (pos == len_) {
            result = true; // trace consumed: tau-closure always reaches a maximal node
        } else if (model_.is_tau_state(s)) {
            for (const auto& e : model_.outgoing(s))
                if (e.action == tau_ && alive(pos, e.dst)) { result = true; break; }
        } else {
            for (const auto& e : model_.outgoing(s))
                if (e.action == action_ix_[pos] && alive(pos + 1, e.dst)) { result = true; break; }
        }
        memo = result ? 1 : 0;
        return result;
    }

private:
    const MdpModel& model_;
    int n_, len_, tau_;
    std::vector<int> action_ix_;
    std::vector<std::vector<signed char>> tbl_;
};

// Longest prefix of the trace consumable by some execution, for error
// reporting. Unpruned forward reachability.
std::vector<std::string> longest_consumable_prefix(const MdpModel& m, const Trace& tr) {
    const int tau = m.action_index(kTauAction);
    std::vector<char> cur(m.states().size(), 0);
    cur[m.init_index()] = 1;
    auto closure = [&](std::vector<char>& set) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t s = 0; s < set.size(); ++s) {
                if (!set[s] || !m.is_tau_state(static_cast<int>(s))) continue;
                for (const auto& e : m.outgoing(static_cast<int>(s)))
                    if (e.action == tau && !set[e.dst]) { set[e.dst] = 1; changed = true; }
            }
        }
    };
    closure(cur);
    int consumed = 0;
    for (const std::string& act : tr.actions) {
        const int a = m.action_index(act);
        std::vector<char> next(m.states().size(), 0);
        bool any = false;
        if (a >= 0) {
            for (size_t s = 0; s < cur.size(); ++s) {
                if (!cur[s] || m.is_tau_state(static_cast<int>(s))) continue;
                for (const auto& e : m.outgoing(static_cast<int>(s)))
                    if (e.action == a) { next[e.dst] = 1; any = true; }
            }
        }
        if (!any) break;
        closure(next);
        cur = std::move(next);
        ++consumed;
    }
    return {tr.actions.begin(), tr.actions.begin() + consumed};
}

} // namespace

ExecModel build_exec_model(const MdpModel& model, const Trace& trace) {
    if (trace.actions.empty()) throw std::invalid_argument("trace is empty");
    for (const std::string& a : trace.actions)
        if (a == kTauAction)
            throw std::invalid_argument("trace may not contain the internal action 'tau'");
    {
        ValidationReport r = validate(model);
        if (!r.ok)
            throw std::invalid_argument("model failed validation: " + r.violations[0].rule +
                                        " at " + r.violations[0].where);
    }

    const int len = static_cast<int>(trace.actions.size());
    const int tau = model.action_index(kTauAction);
    AliveTable alive(model, trace);

    if (!alive.alive(0, model.init_index())) {
        auto prefix = longest_consumable_prefix(model, trace);
        std::string msg = "trace has no execution; longest consumable prefix: '";
        for (size_t i = 0; i < prefix.size(); ++i) {
            if (i) msg += " ";
            msg += prefix[i];
        }
        msg += "'";
        throw IllegalTraceError(msg, std::move(prefix));
    }

    std::vector<ExecNode> nodes;
    std::map<Key, NodeId> ids;
    std::vector<Key> keys;
    auto get_or_create = [&](Key k) {
        auto [it, inserted] = ids.try_emplace(k, static_cast<NodeId>(nodes.size()));
        if (inserted) {
            nodes.push_back(ExecNode{{k.s}, {}, 0});
            keys.push_back(k);
        }
        return it->second;
    };

    std::vector<NodeId> maximal; // nodes to be wired to the sharp terminal
    get_or_create(Key{0, model.init_index()});
    for (size_t head = 0; head < nodes.size(); ++head) {
        const Key k = keys[head];
        const bool at_end = k.pos == len;
        if (model.is_tau_state(k.s)) {
            double denom = 0.0;
            for (const auto& e : model.outgoing(k.s))
                if (e.action == tau && alive.alive(k.pos, e.dst)) denom += e.prob;
            for (const auto& e : model.outgoing(k.s)) {
                if (e.action != tau || !alive.alive(k.pos, e.dst)) continue;
                NodeId v = get_or_create(Key{k.pos, e.dst});
                nodes[head].next.push_back(ExecEdge{e.prob / denom, v});
            }
        } else if (!at_end) {
            const int a = model.action_index(trace.actions[k.pos]);
            double denom = 0.0;
            for (const auto& e : model.outgoing(k.s))
                if (e.action == a && alive.alive(k.pos + 1, e.dst)) denom += e.prob;
            for (const auto& e : model.outgoing(k.s)) {
                if (e.action != a || !alive.alive(k.pos + 1, e.dst)) continue;
                NodeId v = get_or_create(Key{k.pos + 1, e.dst});
                nodes[head].next.push_back(ExecEdge{e.prob / denom, v});
            }
        } else {
            maximal.push_back(static_cast<NodeId>(head));
        }
    }

    const NodeId terminal = static_cast<NodeId>(nodes.size());
    nodes.push_back(ExecNode{{}, {}, 0});
    for (NodeId u : maximal) nodes[u].next.push_back(ExecEdge{1.0, terminal});

    return ExecModel(std::move(nodes), 0, terminal, model.states(), trace, 1);
}

double path_prob(const ExecModel& e, std::span<const NodeId> path) {
    if (path.empty() || path.front() != e.root() || path.back() != e.terminal())
        throw std::invalid_argument("not a full root->terminal path");
    double p = 1.0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const ExecNode& u = e.node(path[i]);
        auto it = std::find_if(u.next.begin(), u.next.end(),
                               [&](const ExecEdge& ed) { return ed.to == path[i + 1]; });
        if (it == u.next.end())
            throw std::invalid_argument("edge " + std::to_string(path[i]) + "->" +
                                        std::to_string(path[i + 1]) + " is not in the model");
        p *= it->prob;
    }
    return p;
}

std::uint64_t count_paths(const ExecModel& e) {
    constexpr std::uint64_t kMax = UINT64_MAX;
    auto sat_add = [](std::uint64_t a, std::uint64_t b) {
        return a > kMax - b ? kMax : a + b;
    };
    std::vector<std::uint64_t> from(e.nodes().size(), 0);
    from[e.terminal()] = 1;
    const auto& topo = e.topo_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        for (const ExecEdge& ed : e.node(*it).next)
            from[*it] = sat_add(from[*it], from[ed.to]);
    }
    return from[e.root()];
}

ExecStats stats(const ExecModel& e) {
    ExecStats s;
    s.nodes_with_sharp = e.nodes().size();
    for (const ExecNode& u : e.nodes()) {
        s.edges += u.next.size();
        bool real = !u.st.empty() &&
                    std::none_of(u.st.begin(), u.st.end(), [](int x) { return x == kSharpPad; });
        if (real) ++s.nodes_real;
        s.max_depth = std::max(s.max_depth, u.depth);
    }
    s.paths = count_paths(e);
    return s;
}

} // namespace probcov
