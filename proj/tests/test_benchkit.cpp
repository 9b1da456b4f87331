#include <doctest.h>

#include <sstream>

#include "probcov/benchkit.hpp"
#include "probcov/oracle.hpp"
#include "probcov/sentence_eval.hpp"
#include "testutil.hpp"

using namespace probcov;

TEST_CASE("make_model shapes") {
    SUBCASE("m = 0 collapses the satellite ring") {
        MdpModel m = make_model(0);
        CHECK(m.states().size() == 6);
        CHECK(transition_prob(m, "4", "c", "4") == 1.0);
        CHECK(validate(m).ok);
    }
    SUBCASE("m = 2 splits the c mass") {
        MdpModel m = make_model(2);
        CHECK(m.states().size() == 8);
        CHECK(transition_prob(m, "4", "c", "4") == doctest::Approx(0.7));
        CHECK(transition_prob(m, "4", "c", "t0") == doctest::Approx(0.15));
        CHECK(transition_prob(m, "4", "c", "t1") == doctest::Approx(0.15));
        CHECK(transition_prob(m, "t0", "c", "4") == 1.0);
        CHECK(validate(m).ok);
    }
    SUBCASE("m = 8 keeps the share exact") {
        MdpModel m = make_model(8);
        CHECK(transition_prob(m, "4", "c", "t3") == 0.0375);
        CHECK(validate(m).ok);
    }
}

TEST_CASE("make_trace builds a c^i a b^i a c^i a run") {
    Trace t1 = make_trace(1);
    std::vector<std::string> want{"a", "c", "a", "b", "a", "c", "a"};
    CHECK(t1.actions == want);
    CHECK(make_trace(5).actions.size() == 19);
    CHECK(make_trace(9).actions.size() == 31);
    CHECK_THROWS_AS(make_trace(0), std::invalid_argument);
}

TEST_CASE("standard goals") {
    StandardGoals g = standard_goals();
    CHECK(render_goal(g.f1) == "<2>;<t0>");
    CHECK(word_length(g.f2) == 3);
    const Aggregate& f3 = std::get<Aggregate>(g.f3);
    CHECK(f3.k == 1);
    CHECK(f3.n == 8);
    CHECK(render_goal(g.f4) == "^3>=8");

    // t0 does not exist when m = 0, so f1 can never be covered there.
    for (int i : {1, 3, 5})
        CHECK(sentence_prob(make_model(0), make_trace(i), std::get<Sentence>(g.f1)) == 0.0);
}

TEST_CASE("path counts of the benchmark family") {
    auto paths = [](int i, int m) {
        return count_paths(build_exec_model(make_model(m), make_trace(i)));
    };
    CHECK(paths(5, 0) == 16);
    CHECK(paths(6, 0) == 32);
    CHECK(paths(12, 0) == 2048);
    CHECK(paths(5, 2) == 336);
    CHECK(paths(8, 2) == 21888);
    CHECK(paths(5, 8) == 3600);
    CHECK(paths(6, 8) == 29984);
    CHECK(paths(9, 8) == 8225024);
}

TEST_CASE("path counts follow 2^(i-1) * f(i), f(n) = f(n-1) + m f(n-2)") {
    for (int m : {0, 2, 8}) {
        std::vector<std::uint64_t> f{1, 1};
        for (int n = 2; n <= 12; ++n)
            f.push_back(f[n - 1] + static_cast<std::uint64_t>(m) * f[n - 2]);
        const int max_i = m == 8 ? 9 : 12;
        for (int i = 5; i <= max_i; ++i) {
            std::uint64_t want = (1ull << (i - 1)) * f[i];
            CHECK(count_paths(build_exec_model(make_model(m), make_trace(i))) == want);
        }
    }
}

TEST_CASE("run_benchmark produces a complete, deterministic report") {
    BenchConfig config;
    config.ms = {0, 2};
    config.is = {5};
    config.goal_names = {"f1", "f3"};
    config.policies = {MergePolicy::Bridge, MergePolicy::Never};
    config.repetitions = 1;

    BenchReport r = run_benchmark(config);
    // f1 yields one case per (m,i); f3 one per policy.
    REQUIRE(r.cases.size() == 2 * (1 + 2));

    BenchReport r2 = run_benchmark(config);
    for (size_t i = 0; i < r.cases.size(); ++i) {
        CHECK(r.cases[i].m == r2.cases[i].m);
        CHECK(r.cases[i].goal_name == r2.cases[i].goal_name);
        CHECK(r.cases[i].policy == r2.cases[i].policy);
        CHECK(r.cases[i].paths == r2.cases[i].paths);
        CHECK(r.cases[i].probability == r2.cases[i].probability);
    }

    for (const BenchCase& c : r.cases) {
        CHECK(c.paths > 0);
        CHECK(!c.brute_capped);
        CHECK(c.speedup >= 0.0);
        CHECK(c.probability >= 0.0);
        CHECK(c.probability <= 1.0);
    }
}

TEST_CASE("benchmark respects the path cap") {
    BenchConfig config;
    config.ms = {2};
    config.is = {5};
    config.goal_names = {"f1"};
    config.repetitions = 1;
    config.paths_cap = 100; // E(5,2) has 336 paths
    BenchReport r = run_benchmark(config);
    REQUIRE(r.cases.size() == 1);
    CHECK(r.cases[0].brute_capped);
    CHECK(r.cases[0].label_ms >= 0.0);
}

TEST_CASE("benchmark probabilities match the oracle") {
    BenchConfig config;
    config.ms = {0, 2};
    config.is = {5, 6};
    config.repetitions = 1;
    BenchReport r = run_benchmark(config);
    StandardGoals goals = standard_goals();
    for (const BenchCase& c : r.cases) {
        ExecModel e = build_exec_model(make_model(c.m), make_trace(c.i));
        const Goal& g = c.goal_name == "f1"   ? goals.f1
                        : c.goal_name == "f2" ? goals.f2
                        : c.goal_name == "f3" ? goals.f3
                                              : goals.f4;
        CHECK(c.probability == doctest::Approx(brute_force_prob(e, g)).epsilon(1e-9));
    }
}

TEST_CASE("report renderings") {
    BenchConfig config;
    config.ms = {0};
    config.is = {5};
    config.goal_names = {"f1", "f3"};
    config.repetitions = 1;
    BenchReport r = run_benchmark(config);

    std::string table = format_table(r);
    CHECK(table.find("E(5,0)") != std::string::npos);
    CHECK(table.find("f1") != std::string::npos);

    std::ostringstream records;
    write_records(r, records);
    CHECK(records.str().find("\"goal\":\"f1\"") != std::string::npos);
    CHECK(records.str().find("\"paths\":16") != std::string::npos);

    std::ostringstream csv;
    write_speedup_csv(r, csv);
    CHECK(csv.str().rfind("goal,m,i", 0) == 0);
}
