#include "probcov/benchkit.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "probcov/errors.hpp"
#include "probcov/oracle.hpp"
#include "probcov/sentence_eval.hpp"
#include "probcov/util.hpp"
#include "probcov/word_expand.hpp"

namespace probcov {

MdpModel make_model(int m) {
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    std::ostringstream os;
    os << "init: 0\n";
    os << "0 a 1\n";
    os << "1 c 3/10 2\n";
    os << "1 c 7/10 1\n";
    os << "1 a 3\n";
    os << "2 c 7/10 1\n";
    os << "2 c 3/10 2\n";
    os << "3 b 3\n";
    os << "3 a 4\n";
    if (m == 0) {
        os << "4 c 4\n";
    } else {
        os << "4 c 7/10 4\n";
        for (int t = 0; t < m; ++t) {
            os << "4 c 3/" << 10 * m << " t" << t << "\n";
            os << "t" << t << " c 4\n";
        }
    }
    os << "4 a 5\n";
    return parse_model(os.str());
}

Trace make_trace(int i) {
    if (i < 1) throw std::invalid_argument("i must be >= 1");
    Trace t;
    auto rep = [&](const char* a, int n) {
        for (int j = 0; j < n; ++j) t.actions.emplace_back(a);
    };
    t.actions.emplace_back("a");
    rep("c", i);
    t.actions.emplace_back("a");
    rep("b", i);
    t.actions.emplace_back("a");
    rep("c", i);
    t.actions.emplace_back("a");
    return t;
}

StandardGoals standard_goals() {
    return StandardGoals{
        parse_goal("<2>;<t0>"),
        parse_goal("<1,1,1>;<4,4,4>"),
        parse_goal("^1>=8"),
        parse_goal("^3>=8"),
    };
}

namespace {

const Goal& goal_by_name(const StandardGoals& g, const std::string& name) {
    if (name == "f1") return g.f1;
    if (name == "f2") return g.f2;
    if (name == "f3") return g.f3;
    if (name == "f4") return g.f4;
    throw std::invalid_argument("unknown goal name '" + name + "'");
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

template <typename F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

BenchReport run_benchmark(const BenchConfig& config) {
    BenchReport report;
    report.config = config;
    const StandardGoals goals = standard_goals();

    for (int m : config.ms) {
        const MdpModel model = make_model(m);
        for (int i : config.is) {
            const Trace trace = make_trace(i);
            const ExecModel e = build_exec_model(model, trace);
            const ExecStats base_stats = stats(e);

            std::optional<ExecModel> e3;
            auto expanded = [&]() -> const ExecModel& {
                if (!e3) e3.emplace(expand(e, 3));
                return *e3;
            };

            for (const std::string& goal_name : config.goal_names) {
                const Goal& goal = goal_by_name(goals, goal_name);
                const bool is_aggregate = std::holds_alternative<Aggregate>(goal);
                const int k = word_length(goal);

                std::vector<MergePolicy> policies =
                    is_aggregate ? config.policies : std::vector<MergePolicy>{MergePolicy::Bridge};
                for (MergePolicy policy : policies) {
                    BenchCase c;
                    c.m = m;
                    c.i = i;
                    c.goal_name = goal_name;
                    c.goal_text = render_goal(goal);
                    c.policy = policy;
                    c.is_aggregate = is_aggregate;
                    c.expand_k = k;
                    c.nodes = base_stats.nodes_with_sharp;
                    c.edges = base_stats.edges;
                    c.paths = base_stats.paths;
                    if (k > 1) c.nodes_expanded = expanded().nodes().size();

                    std::vector<double> label_times, brute_times;
                    for (int rep = 0; rep < config.repetitions; ++rep) {
                        double prob = 0.0;
                        double ms = time_ms([&] {
                            if (is_aggregate) {
                                const Aggregate& a = std::get<Aggregate>(goal);
                                prob = aggregate_prob_on(k > 1 ? expanded() : e, a.n, policy);
                            } else {
                                const Sentence& s = std::get<Sentence>(goal);
                                const ExecModel& target = k > 1 ? expanded() : e;
                                prob = label_sentence(target, s).at(target.root(), 0);
                            }
                        });
                        label_times.push_back(ms);
                        c.probability = prob;
                    }
                    c.label_ms = median(label_times);

                    if (c.paths <= config.paths_cap) {
                        for (int rep = 0; rep < config.repetitions; ++rep) {
                            double ms = time_ms([&] { brute_force_prob(e, goal, config.paths_cap); });
                            brute_times.push_back(ms);
                        }
                        c.brute_ms = median(brute_times);
                        c.speedup = c.label_ms > 0.0 ? c.brute_ms / c.label_ms : 0.0;
                    } else {
                        c.brute_capped = true;
                    }
                    report.cases.push_back(std::move(c));
                }
            }
        }
    }
    return report;
}

std::string format_table(const BenchReport& report) {
    std::ostringstream out;
    auto pad = [](std::string s, size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    out << pad("case", 10) << pad("goal", 6) << pad("policy", 8) << pad("#nodes", 8)
        << pad("#edges", 8) << pad("#paths", 10) << pad("#nodes^k", 10) << pad("prob", 16)
        << pad("label_ms", 10) << pad("brute_ms", 10) << pad("speedup", 10) << "\n";
    for (const BenchCase& c : report.cases) {
        std::string case_name = "E(" + std::to_string(c.i) + "," + std::to_string(c.m) + ")";
        char label_buf[32], brute_buf[32], speed_buf[32];
        std::snprintf(label_buf, sizeof(label_buf), "%.3f", c.label_ms);
        if (c.brute_capped) {
            std::snprintf(brute_buf, sizeof(brute_buf), "capped");
            std::snprintf(speed_buf, sizeof(speed_buf), "-");
        } else {
            std::snprintf(brute_buf, sizeof(brute_buf), "%.3f", c.brute_ms);
            std::snprintf(speed_buf, sizeof(speed_buf), "%.1f", c.speedup);
        }
        out << pad(case_name, 10) << pad(c.goal_name, 6)
            << pad(c.is_aggregate ? to_string(c.policy) : "-", 8)
            << pad(std::to_string(c.nodes), 8) << pad(std::to_string(c.edges), 8)
            << pad(std::to_string(c.paths), 10)
            << pad(c.expand_k > 1 ? std::to_string(c.nodes_expanded) : "-", 10)
            << pad(format_prob(c.probability), 16) << pad(label_buf, 10) << pad(brute_buf, 10)
            << pad(speed_buf, 10) << "\n";
    }
    return out.str();
}

void write_records(const BenchReport& report, std::ostream& os) {
    for (const BenchCase& c : report.cases) {
        nlohmann::json j{
            {"m", c.m},
            {"i", c.i},
            {"goal", c.goal_name},
            {"goal_text", c.goal_text},
            {"policy", c.is_aggregate ? to_string(c.policy) : "-"},
            {"expand_k", c.expand_k},
            {"nodes", c.nodes},
            {"edges", c.edges},
            {"paths", c.paths},
            {"nodes_expanded", c.nodes_expanded},
            {"probability", c.probability},
            {"label_ms", c.label_ms},
            {"brute_ms", c.brute_capped ? nlohmann::json() : nlohmann::json(c.brute_ms)},
            {"brute_capped", c.brute_capped},
            {"speedup", c.brute_capped ? nlohmann::json() : nlohmann::json(c.speedup)},
        };
        os << j.dump() << "\n";
    }
}

void write_speedup_csv(const BenchReport& report, std::ostream& os) {
    os << "goal,m,i,paths,label_ms,brute_ms,speedup\n";
    for (const BenchCase& c : report.cases) {
        if (c.brute_capped) continue;
        os << c.goal_name << "," << c.m << "," << c.i << "," << c.paths << "," << c.label_ms
           << "," << c.brute_ms << "," << c.speedup << "\n";
    }
}

} // namespace probcov
