#include "probcov/model.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

#include "probcov/errors.hpp"
#include "probcov/util.hpp"

namespace probcov {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_prob_token(const std::string& tok, int line_no) {
    double value = 0.0;
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        char* end = nullptr;
        const std::string num = tok.substr(0, slash), den = tok.substr(slash + 1);
        long long n = std::strtoll(num.c_str(), &end, 10);
        if (num.empty() || *end != '\0')
            throw ModelParseError(line_no, "bad fraction numerator '" + num + "'");
        long long d = std::strtoll(den.c_str(), &end, 10);
        if (den.empty() || *end != '\0' || d == 0)
            throw ModelParseError(line_no, "bad fraction denominator '" + den + "'");
        value = static_cast<double>(n) / static_cast<double>(d);
    } else {
        char* end = nullptr;
        value = std::strtod(tok.c_str(), &end);
        if (tok.empty() || *end != '\0')
            throw ModelParseError(line_no, "bad probability '" + tok + "'");
    }
    if (!(value > 0.0) || value > 1.0)
        throw ModelParseError(line_no, "probability " + tok + " outside (0,1]");
    return value;
}

} // namespace

MdpModel::MdpModel(std::string init, std::vector<Transition> transitions)
    : init_(std::move(init)), transitions_(std::move(transitions)) {
    auto intern_state = [&](const std::string& name) {
        auto [it, inserted] = state_index_.try_emplace(name, static_cast<int>(states_.size()));
        if (inserted) states_.push_back(name);
        return it->second;
    };
    auto intern_action = [&](const std::string& name) {
        auto [it, inserted] = action_index_.try_emplace(name, static_cast<int>(action_names_.size()));
        if (inserted) action_names_.push_back(name);
        return it->second;
    };
    for (const Transition& t : transitions_) {
        intern_state(t.src);
        intern_action(t.action);
        intern_state(t.dst);
    }
    auto init_it = state_index_.find(init_);
    if (init_it == state_index_.end())
        throw ModelParseError(0, "unknown init state '" + init_ + "'");
    init_index_ = init_it->second;

    out_.resize(states_.size());
    tau_state_.assign(states_.size(), false);
    for (const Transition& t : transitions_) {
        int s = state_index_.at(t.src);
        out_[s].push_back(Edge{action_index_.at(t.action), t.prob, state_index_.at(t.dst)});
        if (t.action == kTauAction) tau_state_[s] = true;
    }
}

int MdpModel::state_index(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    return it == state_index_.end() ? -1 : it->second;
}

int MdpModel::action_index(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    return it == action_index_.end() ? -1 : it->second;
}

std::vector<std::string> MdpModel::actions() const {
    std::vector<std::string> a = action_names_;
    std::sort(a.begin(), a.end());
    return a;
}

MdpModel parse_model(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    bool have_init = false;
    std::string init;
    std::vector<Transition> transitions;
    std::set<std::tuple<std::string, std::string, std::string>> seen;

    while (std::getline(is, line)) {
        ++line_no;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "init:") {
            if (have_init) throw ModelParseError(line_no, "duplicate init declaration");
            if (!transitions.empty())
                throw ModelParseError(line_no, "init must precede all transitions");
            if (toks.size() != 2) throw ModelParseError(line_no, "expected 'init: <state-id>'");
            init = toks[1];
            have_init = true;
            continue;
        }
        if (!have_init)
            throw ModelParseError(line_no, "transition before init declaration");
        if (toks.size() != 3 && toks.size() != 4)
            throw ModelParseError(line_no, "expected '<src> <action> [<prob>] <dst>'");
        Transition t;
        t.src = toks[0];
        t.action = toks[1];
        if (toks.size() == 4) {
            t.prob = parse_prob_token(toks[2], line_no);
            t.dst = toks[3];
        } else {
            t.prob = 1.0;
            t.dst = toks[2];
        }
        if (!seen.insert({t.src, t.action, t.dst}).second)
            throw ModelParseError(line_no, "duplicate transition " + t.src + " -" + t.action +
                                               "-> " + t.dst);
        transitions.push_back(std::move(t));
    }
    if (!have_init) throw ModelParseError(0, "missing init declaration");
    if (transitions.empty()) throw ModelParseError(0, "model has no transitions");
    return MdpModel(init, std::move(transitions));
}

std::string render_model(const MdpModel& model) {
    std::vector<Transition> ts = model.transitions();
    std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
        return std::tie(a.src, a.action, a.dst) < std::tie(b.src, b.action, b.dst);
    });
    std::string out = "init: " + model.init() + "\n";
    for (const Transition& t : ts)
        out += t.src + " " + t.action + " " + format_sig12(t.prob) + " " + t.dst + "\n";
    return out;
}

ValidationReport validate(const MdpModel& model) {
    ValidationReport report;
    auto add = [&](std::string rule, std::string message, std::string where) {
        report.violations.push_back({std::move(rule), std::move(message), std::move(where)});
    };
    const int n = static_cast<int>(model.states().size());
    const int tau = model.action_index(kTauAction);

    std::vector<bool> incident_non_tau(n, false), incident_tau(n, false);
    for (const Transition& t : model.transitions()) {
        bool is_tau = t.action == kTauAction;
        for (int s : {model.state_index(t.src), model.state_index(t.dst)})
            (is_tau ? incident_tau : incident_non_tau)[s] = true;
    }

    for (int s = 0; s < n; ++s) {
        bool has_tau = false, has_other = false;
        for (const auto& e : model.outgoing(s))
            (e.action == tau ? has_tau : has_other) = true;
        if (has_tau && has_other)
            add("tau-mix", "state mixes tau and non-tau outgoing transitions",
                model.states()[s]);
        if (incident_tau[s] && !incident_non_tau[s])
            add("tau-only-state", "all incoming and outgoing transitions are tau",
                model.states()[s]);
    }

    // Cycle search restricted to the tau subgraph. 0 = unseen, 1 = on the
    // current path, 2 = done.
    if (tau >= 0) {
        std::vector<int> color(n, 0);
        std::vector<int> stack;
        for (int start = 0; start < n; ++start) {
            if (color[start] != 0) continue;
            stack.push_back(start);
            while (!stack.empty()) {
                int s = stack.back();
                if (color[s] == 0) {
                    color[s] = 1;
                    for (const auto& e : model.outgoing(s)) {
                        if (e.action != tau) continue;
                        if (color[e.dst] == 1) {
                            add("tau-cycle", "cycle of only tau transitions through state",
                                model.states()[e.dst]);
                        } else if (color[e.dst] == 0) {
                            stack.push_back(e.dst);
                        }
                    }
                } else {
                    color[s] = 2;
                    stack.pop_back();
                }
            }
        }
    }

    for (int s = 0; s < n; ++s) {
        std::unordered_map<int, double> sums;
        for (const auto& e : model.outgoing(s)) sums[e.action] += e.prob;
        std::vector<int> acts;
        for (auto& [a, _] : sums) acts.push_back(a);
        std::sort(acts.begin(), acts.end());
        for (int a : acts) {
            if (std::abs(sums[a] - 1.0) > kProbSumTol)
                add("prob-sum",
                    "probabilities of action '" + model.action_names()[a] + "' sum to " +
                        format_sig12(sums[a]),
                    model.states()[s]);
        }
    }

    report.ok = report.violations.empty();
    return report;
}

double transition_prob(const MdpModel& model, std::string_view src, std::string_view action,
                       std::string_view dst) {
    int s = model.state_index(src);
    int a = model.action_index(action);
    int d = model.state_index(dst);
    if (s < 0 || a < 0 || d < 0) return 0.0;
    for (const auto& e : model.outgoing(s))
        if (e.action == a && e.dst == d) return e.prob;
    return 0.0;
}

} // namespace probcov
