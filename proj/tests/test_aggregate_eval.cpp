#include <doctest.h>

#include "probcov/aggregate_eval.hpp"
#include "probcov/oracle.hpp"
#include "testutil.hpp"

using namespace probcov;

TEST_CASE("merge sums probabilities of equal item sets") {
    std::vector<AggregateEntry> in{{{1, 2}, 0.1}, {{1, 2}, 0.2}};
    AggregateMap out = merge(in);
    CHECK(out.merged);
    REQUIRE(out.entries.size() == 1);
    CHECK(out.entries[0].items == std::vector<int>{1, 2});
    CHECK(out.entries[0].p == doctest::Approx(0.3));
}

TEST_CASE("merge keeps distinct item sets apart") {
    std::vector<AggregateEntry> in{{{0}, 0.5}, {{1}, 0.5}};
    AggregateMap out = merge(in);
    CHECK(out.entries.size() == 2);
}

TEST_CASE("merge is idempotent") {
    std::vector<AggregateEntry> in{{{0}, 0.25}, {{0}, 0.25}, {{1}, 0.5}};
    AggregateMap once = merge(in);
    AggregateMap twice = merge(once.entries);
    REQUIRE(once.entries.size() == twice.entries.size());
    double p_once = 0, p_twice = 0;
    for (const auto& e : once.entries) p_once += e.p;
    for (const auto& e : twice.entries) p_twice += e.p;
    CHECK(p_once == doctest::Approx(p_twice));
}

TEST_CASE("detect_bridges finds chain-fed branching nodes") {
    SUBCASE("a chain into a branching node") {
        MdpModel m = parse_model("init: 0\n0 a 1\n1 b 2\n2 c 0.5 3\n2 c 0.5 4\n");
        ExecModel e = build_exec_model(m, parse_trace("a b c"));
        std::vector<NodeId> bridges = detect_bridges(e);
        REQUIRE(bridges.size() == 1);
        CHECK(e.label_text(bridges[0]) == "2");
    }
    SUBCASE("the demo trace") {
        ExecModel e = build_exec_model(test::ex1(), test::aba());
        // Node 4 (state 0 after 'ab') branches and is fed by the
        // single-successor node for state 2.
        CHECK(detect_bridges(e) == std::vector<NodeId>{4});
    }
    SUBCASE("a tree where every inner node branches has no bridges") {
        MdpModel m = parse_model(
            "init: 0\n0 a 0.5 1\n0 a 0.5 2\n1 b 0.5 3\n1 b 0.5 4\n2 b 0.5 5\n2 b 0.5 6\n");
        ExecModel e = build_exec_model(m, parse_trace("a b"));
        CHECK(detect_bridges(e).empty());
    }
}

TEST_CASE("aggregate probabilities on the demo trace") {
    MdpModel m = test::ex1();
    Trace tr = test::aba();
    CHECK(aggregate_prob(m, tr, 1, 4) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(aggregate_prob(m, tr, 1, 0) == 1.0);
    CHECK(aggregate_prob(m, tr, 1, 3) == doctest::Approx(0.525).epsilon(1e-12));
    CHECK(aggregate_prob(m, tr, 1, 5) == 0.0);
    CHECK(aggregate_prob(m, tr, 1, 2) == 1.0);
}

TEST_CASE("aggregates over windows use the expanded model") {
    MdpModel m = test::ex1();
    Trace tr = test::aba();
    // Every execution yields >= 2 distinct 3-windows except none; check
    // against the enumeration-based oracle.
    ExecModel e = build_exec_model(m, tr);
    for (long long n = 0; n <= 4; ++n) {
        double want = brute_force_prob(e, Goal(Aggregate{3, n}));
        CHECK(aggregate_prob(m, tr, 3, n) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("rejects bad parameters") {
    CHECK_THROWS_AS(aggregate_prob(test::ex1(), test::aba(), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(aggregate_prob(test::ex1(), test::aba(), 1, -1), std::invalid_argument);
}

TEST_CASE("policies agree and only change the work done") {
    test::RandomModelGen gen(41);
    int done = 0;
    while (done < 30) {
        MdpModel m = gen.next_model();
        Trace tr = gen.random_trace(m, 9);
        ExecModel e = build_exec_model(m, tr);
        if (count_paths(e) > 20000) continue;
        int k = 1 + static_cast<int>(gen.rng()() % 3);
        long long n = static_cast<long long>(gen.rng()() % 6);

        AggregateStats s_always, s_never, s_bridge;
        double p_always = aggregate_prob(m, tr, k, n, MergePolicy::Always, &s_always);
        double p_never = aggregate_prob(m, tr, k, n, MergePolicy::Never, &s_never);
        double p_bridge = aggregate_prob(m, tr, k, n, MergePolicy::Bridge, &s_bridge);

        CHECK(p_always == doctest::Approx(p_never).epsilon(1e-9));
        CHECK(p_always == doctest::Approx(p_bridge).epsilon(1e-9));
        CHECK(s_always.entries_retained <= s_bridge.entries_retained);
        CHECK(s_bridge.entries_retained <= s_never.entries_retained);
        CHECK(s_never.merges_performed == 1); // the root merge
        ++done;
    }
}

TEST_CASE("probability is antitone in the threshold") {
    test::RandomModelGen gen(43);
    int done = 0;
    while (done < 20) {
        MdpModel m = gen.next_model();
        Trace tr = gen.random_trace(m, 8);
        int k = 1 + static_cast<int>(gen.rng()() % 2);
        double prev = 1.0;
        for (long long n = 0; n <= 8; ++n) {
            double p = aggregate_prob(m, tr, k, n);
            CHECK(p <= prev + 1e-12);
            prev = p;
        }
        ++done;
    }
}

TEST_CASE("root annotations carry total probability 1") {
    // Exposed indirectly: N = 0 accepts every entry, so the root sum must
    // be exactly the full mass.
    test::RandomModelGen gen(47);
    for (int i = 0; i < 10; ++i) {
        MdpModel m = gen.next_model();
        Trace tr = gen.random_trace(m, 8);
        for (MergePolicy pol : {MergePolicy::Always, MergePolicy::Never, MergePolicy::Bridge})
            CHECK(aggregate_prob(m, tr, 1, 0, pol) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("aggregate agrees with brute force on random instances") {
    test::RandomModelGen gen(53);
    int done = 0;
    while (done < 40) {
        MdpModel m = gen.next_model();
        Trace tr = gen.random_trace(m, 10);
        ExecModel e = build_exec_model(m, tr);
        if (count_paths(e) > 50000) continue;
        int k = 1 + static_cast<int>(gen.rng()() % 3);
        long long n = static_cast<long long>(gen.rng()() % 7);
        double want = brute_force_prob(e, Goal(Aggregate{k, n}));
        CHECK(aggregate_prob(m, tr, k, n) == doctest::Approx(want).epsilon(1e-9));
        ++done;
    }
}
