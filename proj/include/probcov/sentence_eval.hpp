#ifndef PROBCOV_SENTENCE_EVAL_HPP
#define PROBCOV_SENTENCE_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "probcov/exec_model.hpp"
#include "probcov/goal.hpp"

namespace probcov {

/// Per-node coverage probabilities for every suffix of a sentence.
/// Suffix j stands for clauses j..end; suffix 0 is the whole sentence.
class LabelTable {
public:
    LabelTable(int node_count, int suffix_count)
        : suffixes_(suffix_count), p_(static_cast<size_t>(node_count) * suffix_count, 0.0) {}

    double at(NodeId node, int suffix) const {
        return p_[static_cast<size_t>(node) * suffixes_ + suffix];
    }
    double& at(NodeId node, int suffix) {
        return p_[static_cast<size_t>(node) * suffixes_ + suffix];
    }
    int suffix_count() const { return suffixes_; }

    // Edges touched while labeling; exactly |edges| per clause.
    std::uint64_t edge_visits = 0;

private:
    int suffixes_;
    std::vector<double> p_;
};

// True iff the node's state label equals one of the clause's words. Sharp
// nodes and sharp-padded windows never match. Throws std::invalid_argument
// when a word's length differs from the model's word length.
bool check_clause(const ExecModel& e, NodeId node, const Clause& clause);

// Labels every node with P(suffix holds from here) for every sentence
// suffix, shortest suffix first, one bottom-up sweep per suffix.
// Requires word_length(s) == e.word_length().
LabelTable label_sentence(const ExecModel& e, const Sentence& s);

// (node id, st, suffix, probability) listing for golden tests.
std::string dump_labels(const ExecModel& e, const Sentence& s, const LabelTable& table);

// P(s | trace): builds the execution model, expands it when the sentence
// uses words of length > 1, labels, and reads the root.
double sentence_prob(const MdpModel& model, const Trace& trace, const Sentence& s);

} // namespace probcov

#endif
