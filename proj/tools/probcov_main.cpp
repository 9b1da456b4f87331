// probcov: probabilistic coverage analysis for test cases on
// non-deterministic, probability-annotated transition-system models.
//
// Exit codes: 0 success, 1 validation failure, 2 input/parse error,
// 3 illegal trace.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "probcov/aggregate_eval.hpp"
#include "probcov/benchkit.hpp"
#include "probcov/errors.hpp"
#include "probcov/exec_model.hpp"
#include "probcov/goal.hpp"
#include "probcov/model.hpp"
#include "probcov/oracle.hpp"
#include "probcov/sentence_eval.hpp"
#include "probcov/util.hpp"
#include "probcov/word_expand.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;
constexpr int kExitIllegalTrace = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

probcov::MdpModel load_model(const std::string& path) {
    return probcov::parse_model(read_file(path));
}

probcov::MdpModel load_validated_model(const std::string& path) {
    probcov::MdpModel model = load_model(path);
    probcov::ValidationReport report = probcov::validate(model);
    if (!report.ok) {
        for (const auto& v : report.violations)
            std::cerr << "validation: " << v.rule << " at " << v.where << ": " << v.message
                      << "\n";
        throw probcov::ValidationFailed{};
    }
    return model;
}

int cmd_validate(const std::string& model_path) {
    probcov::MdpModel model = load_model(model_path);
    probcov::ValidationReport report = probcov::validate(model);
    if (report.ok) {
        std::cout << "ok: " << model.states().size() << " states, "
                  << model.transitions().size() << " transitions, init "
                  << model.init() << "\n";
        return kExitOk;
    }
    for (const auto& v : report.violations)
        std::cout << v.rule << " at " << v.where << ": " << v.message << "\n";
    return kExitValidation;
}

struct CoverageOptions {
    std::string model_path;
    std::string trace_text;
    std::string goal_text;
    std::string method = "label";
    std::string merge_policy = "bridge";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::uint64_t paths_cap = 10'000'000;
};

int cmd_coverage(const CoverageOptions& opt) {
    probcov::MdpModel model = load_validated_model(opt.model_path);
    probcov::Trace trace = probcov::parse_trace(opt.trace_text);
    probcov::Goal goal = probcov::parse_goal(opt.goal_text);

    double p = 0.0;
    if (opt.method == "label") {
        if (const auto* agg = std::get_if<probcov::Aggregate>(&goal)) {
            p = probcov::aggregate_prob(model, trace, agg->k, agg->n,
                                        probcov::parse_merge_policy(opt.merge_policy));
        } else {
            p = probcov::sentence_prob(model, trace, std::get<probcov::Sentence>(goal));
        }
    } else if (opt.method == "brute") {
        probcov::ExecModel e = probcov::build_exec_model(model, trace);
        p = probcov::brute_force_prob(e, goal, opt.paths_cap);
    } else if (opt.method == "mc") {
        probcov::ExecModel e = probcov::build_exec_model(model, trace);
        auto r = probcov::monte_carlo_prob(e, goal, opt.samples, opt.seed);
        std::cerr << "std-error " << probcov::format_prob(r.std_error) << " (" << opt.samples
                  << " samples, seed " << opt.seed << ")\n";
        p = r.estimate;
    } else {
        throw std::runtime_error("unknown method '" + opt.method + "'");
    }
    std::cout << probcov::format_prob(p) << "\n";
    return kExitOk;
}

int cmd_inspect(const std::string& model_path, const std::string& trace_text, int expand_k) {
    probcov::MdpModel model = load_validated_model(model_path);
    probcov::Trace trace = probcov::parse_trace(trace_text);
    probcov::ExecModel e = probcov::build_exec_model(model, trace);
    if (expand_k > 1) e = probcov::expand(e, expand_k);
    std::cout << e.dump();
    probcov::ExecStats s = probcov::stats(e);
    std::cout << "stats: nodes=" << s.nodes_with_sharp << " (real " << s.nodes_real
              << ") edges=" << s.edges << " paths=" << s.paths << " max-depth=" << s.max_depth
              << "\n";
    return kExitOk;
}

struct BenchOptions {
    std::vector<int> ms = {0, 2, 8};
    std::vector<int> is = {5, 6, 7, 8, 9};
    std::vector<std::string> goals = {"f1", "f2", "f3", "f4"};
    std::vector<std::string> policies = {"bridge"};
    int repetitions = 5;
    std::uint64_t paths_cap = 10'000'000;
    std::string out;
};

int cmd_bench(const BenchOptions& opt) {
    probcov::BenchConfig config;
    config.ms = opt.ms;
    config.is = opt.is;
    config.goal_names = opt.goals;
    config.policies.clear();
    for (const std::string& p : opt.policies)
        config.policies.push_back(probcov::parse_merge_policy(p));
    config.repetitions = opt.repetitions;
    config.paths_cap = opt.paths_cap;

    probcov::BenchReport report = probcov::run_benchmark(config);
    std::string table = probcov::format_table(report);
    if (opt.out.empty()) {
        std::cout << table;
    } else {
        std::ofstream txt(opt.out + ".txt");
        txt << table;
        std::ofstream jsonl(opt.out + ".jsonl");
        probcov::write_records(report, jsonl);
        std::ofstream csv(opt.out + "_speedup.csv");
        probcov::write_speedup_csv(report, csv);
        std::cout << "wrote " << opt.out << ".txt, " << opt.out << ".jsonl, " << opt.out
                  << "_speedup.csv\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic coverage analysis for test cases on non-deterministic models"};
    app.require_subcommand(1);

    std::string model_path, trace_text, goal_text;
    int expand_k = 1;

    auto* validate_cmd = app.add_subcommand("validate", "check a model file");
    validate_cmd->add_option("--model", model_path, "model file")->required();

    CoverageOptions cov;
    auto* coverage_cmd =
        app.add_subcommand("coverage", "probability that a test case covers a goal");
    coverage_cmd->add_option("--model", cov.model_path, "model file")->required();
    coverage_cmd->add_option("--trace", cov.trace_text, "test case, e.g. \"a b a\"")->required();
    coverage_cmd->add_option("--goal", cov.goal_text, "goal, e.g. \"(<2>|<3>);<1>\" or \"^1>=4\"")
        ->required();
    coverage_cmd->add_option("--method", cov.method, "label|brute|mc")
        ->check(CLI::IsMember({"label", "brute", "mc"}));
    coverage_cmd->add_option("--merge-policy", cov.merge_policy, "bridge|always|never")
        ->check(CLI::IsMember({"bridge", "always", "never"}));
    coverage_cmd->add_option("--samples", cov.samples, "mc sample count");
    coverage_cmd->add_option("--seed", cov.seed, "mc random seed");
    coverage_cmd->add_option("--paths-cap", cov.paths_cap, "brute-force path cap");

    auto* inspect_cmd = app.add_subcommand("inspect", "dump the execution model of a trace");
    inspect_cmd->add_option("--model", model_path, "model file")->required();
    inspect_cmd->add_option("--trace", trace_text, "test case")->required();
    inspect_cmd->add_option("--expand", expand_k, "k-word expansion before dumping");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark family");
    bench_cmd->add_option("--m", bench.ms, "family parameters m");
    bench_cmd->add_option("--i", bench.is, "trace parameters i");
    bench_cmd->add_option("--goals", bench.goals, "subset of f1 f2 f3 f4");
    bench_cmd->add_option("--policies", bench.policies, "merge policies to time");
    bench_cmd->add_option("--repetitions", bench.repetitions, "timing repetitions (median)");
    bench_cmd->add_option("--paths-cap", bench.paths_cap, "skip brute force above this");
    bench_cmd->add_option("--out", bench.out, "report file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(model_path);
        if (coverage_cmd->parsed()) return cmd_coverage(cov);
        if (inspect_cmd->parsed()) return cmd_inspect(model_path, trace_text, expand_k);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const probcov::ValidationFailed&) {
        return kExitValidation;
    } catch (const probcov::IllegalTraceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIllegalTrace;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
