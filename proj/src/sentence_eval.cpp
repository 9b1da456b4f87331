#include "probcov/sentence_eval.hpp"

#include <algorithm>
#include <stdexcept>

#include "probcov/util.hpp"
#include "probcov/word_expand.hpp"

namespace probcov {

namespace {

// Words compiled to state indices of the execution model. States that do
// not occur in the model get a sentinel that matches nothing.
constexpr int kNoSuchState = -2;

std::vector<int> compile_word(const ExecModel& e, const Word& w) {
    std::vector<int> out;
    out.reserve(w.states.size());
    for (const std::string& name : w.states) {
        int ix = e.state_index(name);
        out.push_back(ix < 0 ? kNoSuchState : ix);
    }
    return out;
}

std::vector<std::vector<int>> compile_clause(const ExecModel& e, const Clause& clause) {
    std::vector<std::vector<int>> words;
    for (const Word& w : clause.words) {
        if (static_cast<int>(w.states.size()) != e.word_length())
            throw std::invalid_argument("clause word length " + std::to_string(w.states.size()) +
                                        " does not match model word length " +
                                        std::to_string(e.word_length()));
        words.push_back(compile_word(e, w));
    }
    return words;
}

bool matches(const ExecNode& u, const std::vector<std::vector<int>>& words) {
    if (u.st.empty()) return false; // artificial sharp node
    for (const auto& w : words)
        if (u.st == w) return true; // padded windows carry kSharpPad, never equal
    return false;
}

} // namespace

bool check_clause(const ExecModel& e, NodeId node, const Clause& clause) {
    return matches(e.node(node), compile_clause(e, clause));
}

LabelTable label_sentence(const ExecModel& e, const Sentence& s) {
    if (word_length(s) != e.word_length())
        throw std::invalid_argument("sentence word length does not match the model; expand first");

    const int m = static_cast<int>(s.clauses.size());
    LabelTable table(static_cast<int>(e.nodes().size()), m);
    std::vector<std::vector<std::vector<int>>> compiled;
    compiled.reserve(m);
    for (const Clause& c : s.clauses) compiled.push_back(compile_clause(e, c));

    const auto& topo = e.topo_order();
    for (int j = m - 1; j >= 0; --j) {
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            const NodeId uid = *it;
            const ExecNode& u = e.node(uid);
            double q_succ = 0.0;
            for (const ExecEdge& ed : u.next) {
                q_succ += ed.prob * table.at(ed.to, j);
                ++table.edge_visits;
            }
            double q;
            if (matches(u, compiled[j]))
                q = j == m - 1 ? 1.0 : table.at(uid, j + 1);
            else
                q = q_succ;
            table.at(uid, j) = q;
        }
    }
    return table;
}

std::string dump_labels(const ExecModel& e, const Sentence& s, const LabelTable& table) {
    std::string out;
    for (NodeId u = 0; u < static_cast<NodeId>(e.nodes().size()); ++u) {
        for (int j = 0; j < table.suffix_count(); ++j) {
            Sentence suffix{{s.clauses.begin() + j, s.clauses.end()}};
            out += "node " + std::to_string(u) + " st=" + e.label_text(u) + " " +
                   render_goal(Goal(suffix)) + " : " + format_prob(table.at(u, j)) + "\n";
        }
    }
    return out;
}

double sentence_prob(const MdpModel& model, const Trace& trace, const Sentence& s) {
    ExecModel e = build_exec_model(model, trace);
    const int k = word_length(s);
    double p;
    if (k > 1) {
        ExecModel expanded = expand(e, k);
        p = label_sentence(expanded, s).at(expanded.root(), 0);
    } else {
        p = label_sentence(e, s).at(e.root(), 0);
    }
    return std::clamp(p, 0.0, 1.0);
}

} // namespace probcov
