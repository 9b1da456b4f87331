#ifndef PROBCOV_MODEL_HPP
#define PROBCOV_MODEL_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace probcov {

struct Transition {
    std::string src;
    std::string action;
    double prob = 1.0; // in (0,1]
    std::string dst;
};

struct Violation {
    std::string rule;    // "tau-mix", "tau-only-state", "tau-cycle", "prob-sum"
    std::string message;
    std::string where;   // offending state or transition
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

/// Probabilistic labelled transition system with a single initial state.
/// Immutable after construction; all queries are safe to run concurrently.
class MdpModel {
public:
    MdpModel(std::string init, std::vector<Transition> transitions);

    const std::string& init() const { return init_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    std::vector<std::string> actions() const;

    int state_index(std::string_view name) const; // -1 if unknown
    int init_index() const { return init_index_; }

    // Outgoing transitions of a state, in declaration order.
    struct Edge {
        int action = -1; // index into action_names()
        double prob = 1.0;
        int dst = -1;
    };
    const std::vector<Edge>& outgoing(int state) const { return out_[state]; }
    const std::vector<std::string>& action_names() const { return action_names_; }
    int action_index(std::string_view name) const;

    // True when the state has at least one outgoing tau transition.
    bool is_tau_state(int state) const { return tau_state_[state]; }

private:
    std::string init_;
    int init_index_ = -1;
    std::vector<Transition> transitions_;
    std::vector<std::string> states_;       // order of first appearance
    std::unordered_map<std::string, int> state_index_;
    std::vector<std::string> action_names_;
    std::unordered_map<std::string, int> action_index_;
    std::vector<std::vector<Edge>> out_;
    std::vector<bool> tau_state_;
};

// Model file format, line oriented:
//   # comment
//   init: <state-id>
//   <src> <action> [<prob>] <dst>
// <prob> is a decimal in (0,1] or a fraction p/q; omitted means 1.0.
MdpModel parse_model(const std::string& text);

// Canonical serializer: transitions sorted by (src, action, dst),
// probabilities with 12 significant digits. parse_model is the inverse on
// its own output.
std::string render_model(const MdpModel& model);

// Checks tau-normalization and per-(state,action) probability sums.
// Violations are data, not errors.
ValidationReport validate(const MdpModel& model);

// Annotated probability of (src, action, dst), or 0 if absent.
double transition_prob(const MdpModel& model, std::string_view src,
                       std::string_view action, std::string_view dst);

} // namespace probcov

#endif
