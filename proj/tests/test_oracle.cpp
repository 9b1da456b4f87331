#include <doctest.h>

#include <cmath>

#include "probcov/errors.hpp"
#include "probcov/oracle.hpp"
#include "testutil.hpp"

using namespace probcov;

namespace {
std::vector<std::string> seq(std::initializer_list<const char*> xs) {
    return {xs.begin(), xs.end()};
}
} // namespace

TEST_CASE("covers: sentences") {
    CHECK(covers(seq({"0", "1", "3", "4", "1"}), parse_goal("<0>;<1>")));
    CHECK(covers(seq({"0", "1", "3", "4", "1"}), parse_goal("(<2>|<3>);<1>")));
    CHECK(!covers(seq({"0", "1", "0", "1"}), parse_goal("(<2>|<3>);<1>")));
    CHECK(!covers(seq({"0", "1", "0", "2"}), parse_goal("(<2>|<3>);<1>")));
    CHECK(covers(seq({"0", "2", "0", "1"}), parse_goal("(<2>|<3>);<1>")));

    // Consecutive clauses may overlap: <1> may match at the position where
    // the first clause just matched.
    CHECK(covers(seq({"0", "1"}), parse_goal("<1>;<1>")));
    CHECK(!covers(seq({"0", "1"}), parse_goal("<1>;<0>")));

    // Words match as contiguous segments.
    CHECK(covers(seq({"2", "0", "2"}), parse_goal("<2,0>")));
    CHECK(covers(seq({"2", "0", "2"}), parse_goal("<0,2>")));
    CHECK(!covers(seq({"2", "0", "2"}), parse_goal("<2,2>")));
    CHECK(covers(seq({"0", "1", "3", "4"}), parse_goal("<0,1>;<3,4>")));
    CHECK(covers(seq({"0", "1", "3", "4"}), parse_goal("<0,1>;<1,3>")));
}

TEST_CASE("covers: the empty execution covers nothing") {
    CHECK(!covers(seq({}), parse_goal("<1>")));
    CHECK(!covers(seq({}), parse_goal("^1>=1")));
    CHECK(covers(seq({}), parse_goal("^1>=0")));
}

TEST_CASE("covers: aggregates count distinct segments") {
    CHECK(!covers(seq({"0", "2", "0", "2"}), parse_goal("^1>=4")));
    CHECK(!covers(seq({"0", "2", "0", "2"}), parse_goal("^1>=3")));
    CHECK(covers(seq({"0", "2", "0", "2"}), parse_goal("^1>=2")));
    CHECK(covers(seq({"0", "1", "3", "4", "1"}), parse_goal("^1>=4")));
    // 3-windows of 0,2,0,2: [0,2,0] and [2,0,2].
    CHECK(covers(seq({"0", "2", "0", "2"}), parse_goal("^3>=2")));
    CHECK(!covers(seq({"0", "2", "0", "2"}), parse_goal("^3>=3")));
    // Sequences shorter than k yield no segment at all.
    CHECK(!covers(seq({"0", "2"}), parse_goal("^3>=1")));
}

TEST_CASE("brute force on the demo trace") {
    ExecModel e = build_exec_model(test::ex1(), test::aba());
    CHECK(brute_force_prob(e, parse_goal("<1>")) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(brute_force_prob(e, parse_goal("<2>")) == doctest::Approx(0.725).epsilon(1e-12));
    CHECK(brute_force_prob(e, parse_goal("^1>=5")) == 0.0);
}

TEST_CASE("brute force honors the path cap") {
    ExecModel e = build_exec_model(test::ex1(), test::aba());
    CHECK_THROWS_AS(brute_force_prob(e, parse_goal("<1>"), 4), PathCapExceeded);
    CHECK_NOTHROW(brute_force_prob(e, parse_goal("<1>"), 5));
}

TEST_CASE("monte carlo estimates converge and are reproducible") {
    ExecModel e = build_exec_model(test::ex1(), test::aba());

    MonteCarloResult a = monte_carlo_prob(e, parse_goal("<1>"), 100000, 42);
    MonteCarloResult b = monte_carlo_prob(e, parse_goal("<1>"), 100000, 42);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(std::abs(a.estimate - 0.75) <= 3 * a.std_error);

    MonteCarloResult other_seed = monte_carlo_prob(e, parse_goal("<1>"), 100000, 43);
    CHECK(std::abs(other_seed.estimate - 0.75) <= 3 * other_seed.std_error);

    MonteCarloResult certain = monte_carlo_prob(e, parse_goal("<0>"), 1000, 7);
    CHECK(certain.estimate == 1.0);
    CHECK(certain.std_error == 0.0);
}
