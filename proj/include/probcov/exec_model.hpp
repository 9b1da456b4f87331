#ifndef PROBCOV_EXEC_MODEL_HPP
#define PROBCOV_EXEC_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "probcov/model.hpp"

namespace probcov {

/// Finite sequence of external (non-tau) actions.
struct Trace {
    std::vector<std::string> actions;
};

// Whitespace-separated action tokens, e.g. "a b a".
Trace parse_trace(const std::string& text);

using NodeId = int;

// Pad entry inside a window label: the segment ran past the end of the run.
inline constexpr int kSharpPad = -1;

struct ExecEdge {
    double prob;
    NodeId to;
};

// st holds indices into ExecModel::state_names(). A plain node carries one
// index; after k-word expansion a node carries a window of k entries where a
// kSharpPad entry stands for a sharp. An empty st marks an artificial sharp
// node (the terminal, and the root of an expanded model).
struct ExecNode {
    std::vector<int> st;
    std::vector<ExecEdge> next;
    int depth = 0; // topological rank; strictly increases along every edge
};

/// Acyclic Markov chain of all tau-maximal executions of a trace, with
/// probabilities renormalized to condition on the trace having been
/// observed. Single root, single sharp terminal. Immutable after build.
class ExecModel {
public:
    ExecModel(std::vector<ExecNode> nodes, NodeId root, NodeId terminal,
              std::vector<std::string> state_names, Trace source_trace, int word_length);

    const std::vector<ExecNode>& nodes() const { return nodes_; }
    const ExecNode& node(NodeId id) const { return nodes_[id]; }
    NodeId root() const { return root_; }
    NodeId terminal() const { return terminal_; }
    const Trace& source_trace() const { return source_trace_; }
    int word_length() const { return word_length_; }

    const std::vector<std::string>& state_names() const { return state_names_; }
    int state_index(std::string_view name) const;

    // Root-first topological order covering every node.
    const std::vector<NodeId>& topo_order() const { return topo_; }

    // "0", "#", "[0,1,#]"
    std::string label_text(NodeId id) const;

    // Text dump (node id, st, depth, edges with 12-digit probabilities),
    // for debugging and golden tests.
    std::string dump() const;

private:
    std::vector<ExecNode> nodes_;
    NodeId root_;
    NodeId terminal_;
    std::vector<std::string> state_names_;
    std::vector<NodeId> topo_;
    Trace source_trace_;
    int word_length_;
};

// Builds E(trace): layered forward expansion with tau-closure between
// external actions, dead branches pruned, per-(node,action) renormalization.
// Throws IllegalTraceError when the trace has no execution; the error
// carries the longest consumable prefix.
ExecModel build_exec_model(const MdpModel& model, const Trace& trace);

// Product of edge probabilities along a full root->terminal path.
// Throws std::invalid_argument if the sequence is not such a path.
double path_prob(const ExecModel& e, std::span<const NodeId> path);

// Exact number of root->terminal paths by topological-order dynamic
// programming. Saturates at uint64 max.
std::uint64_t count_paths(const ExecModel& e);

struct ExecStats {
    std::uint64_t nodes_with_sharp = 0; // every node
    std::uint64_t nodes_real = 0;       // nodes carrying a genuine state or window
    std::uint64_t edges = 0;
    std::uint64_t paths = 0;
    int max_depth = 0;
};

ExecStats stats(const ExecModel& e);

} // namespace probcov

#endif
