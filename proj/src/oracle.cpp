#include "probcov/oracle.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "probcov/errors.hpp"

namespace probcov {

namespace {

template <typename Str>
bool word_at(const std::vector<Str>& seq, size_t pos, const Word& w) {
    if (pos + w.states.size() > seq.size()) return false;
    for (size_t i = 0; i < w.states.size(); ++i)
        if (seq[pos + i] != w.states[i]) return false;
    return true;
}

template <typename Str>
bool clause_at(const std::vector<Str>& seq, size_t pos, const Clause& c) {
    for (const Word& w : c.words)
        if (word_at(seq, pos, w)) return true;
    return false;
}

template <typename Str>
bool covers_sentence(const std::vector<Str>& seq, const Sentence& s) {
    size_t pos = 0, clause = 0;
    const size_t last = s.clauses.size() - 1;
    while (pos < seq.size()) {
        if (clause == last) {
            // A lone clause is covered by a segment anywhere in the rest.
            for (size_t i = pos; i < seq.size(); ++i)
                if (clause_at(seq, i, s.clauses[clause])) return true;
            return false;
        }
        if (clause_at(seq, pos, s.clauses[clause]))
            ++clause; // consecutive clauses may overlap: stay at pos
        else
            ++pos;
    }
    return false;
}

template <typename Str>
bool covers_aggregate(const std::vector<Str>& seq, const Aggregate& a) {
    const size_t k = static_cast<size_t>(a.k);
    std::set<std::vector<Str>> segments;
    for (size_t i = 0; i + k <= seq.size(); ++i)
        segments.insert(std::vector<Str>(seq.begin() + i, seq.begin() + i + k));
    return static_cast<long long>(segments.size()) >= a.n;
}

template <typename Str>
bool covers_impl(const std::vector<Str>& seq, const Goal& goal) {
    if (const Aggregate* a = std::get_if<Aggregate>(&goal)) return covers_aggregate(seq, *a);
    if (seq.empty()) return false;
    return covers_sentence(seq, std::get<Sentence>(goal));
}

std::vector<std::string_view> path_states(const ExecModel& e, const std::vector<NodeId>& path) {
    std::vector<std::string_view> seq;
    seq.reserve(path.size());
    for (NodeId u : path) {
        const auto& st = e.node(u).st;
        if (!st.empty()) seq.push_back(e.state_names()[st[0]]);
    }
    return seq;
}

} // namespace

bool covers(const std::vector<std::string>& state_seq, const Goal& goal) {
    return covers_impl(state_seq, goal);
}

bool covers(const std::vector<std::string_view>& state_seq, const Goal& goal) {
    return covers_impl(state_seq, goal);
}

double brute_force_prob(const ExecModel& e, const Goal& goal, std::uint64_t path_cap) {
    if (e.word_length() != 1)
        throw std::invalid_argument("brute force runs on unexpanded models");
    const std::uint64_t paths = count_paths(e);
    if (paths > path_cap) throw PathCapExceeded(paths, path_cap);

    // Depth-first over full paths with an explicit stack of edge cursors.
    double total = 0.0;
    std::vector<NodeId> path{e.root()};
    std::vector<size_t> cursor{0};
    std::vector<double> prob{1.0};
    std::vector<std::string_view> seq;
    while (!path.empty()) {
        NodeId u = path.back();
        if (u == e.terminal()) {
            seq.clear();
            for (NodeId v : path) {
                const auto& st = e.node(v).st;
                if (!st.empty()) seq.push_back(e.state_names()[st[0]]);
            }
            if (covers_impl(seq, goal)) total += prob.back();
            path.pop_back();
            cursor.pop_back();
            prob.pop_back();
            continue;
        }
        const auto& next = e.node(u).next;
        if (cursor.back() == next.size()) {
            path.pop_back();
            cursor.pop_back();
            prob.pop_back();
            continue;
        }
        const ExecEdge& ed = next[cursor.back()++];
        path.push_back(ed.to);
        cursor.push_back(0);
        prob.push_back(prob.back() * ed.prob);
    }
    return total;
}

MonteCarloResult monte_carlo_prob(const ExecModel& e, const Goal& goal, std::uint64_t samples,
                                  std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("samples must be >= 1");
    if (e.word_length() != 1)
        throw std::invalid_argument("sampling runs on unexpanded models");
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0,1)
    };
    std::uint64_t hits = 0;
    std::vector<NodeId> path;
    for (std::uint64_t i = 0; i < samples; ++i) {
        path.clear();
        NodeId u = e.root();
        path.push_back(u);
        while (u != e.terminal()) {
            const auto& next = e.node(u).next;
            double x = unit();
            NodeId chosen = next.back().to;
            for (const ExecEdge& ed : next) {
                x -= ed.prob;
                if (x < 0) {
                    chosen = ed.to;
                    break;
                }
            }
            u = chosen;
            path.push_back(u);
        }
        if (covers_impl(path_states(e, path), goal)) ++hits;
    }
    MonteCarloResult r;
    r.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(samples));
    return r;
}

} // namespace probcov
