#ifndef PROBCOV_GOAL_HPP
#define PROBCOV_GOAL_HPP

#include <string>
#include <variant>
#include <vector>

namespace probcov {

/// One or more connected states, e.g. <0,2,0>.
struct Word {
    std::vector<std::string> states;
    bool operator==(const Word&) const = default;
};

/// Disjunction of words.
struct Clause {
    std::vector<Word> words; // nonempty, duplicates collapsed
};

/// Ordered sequence of clauses, e.g. (<2>|<3>);<1>.
struct Sentence {
    std::vector<Clause> clauses;
};

/// Cover at least n distinct words of length k: ^k>=n.
struct Aggregate {
    int k = 1;
    long long n = 0;
};

using Goal = std::variant<Sentence, Aggregate>;

// Concrete syntax, whitespace insignificant:
//   goal      := aggregate | sentence
//   aggregate := '^' int '>=' int
//   sentence  := clause (';' clause)*
//   clause    := '(' disj ')' | disj
//   disj      := word ('|' word)*
//   word      := '<' state (',' state)* '>'
// All words in a goal must have the same length.
Goal parse_goal(const std::string& text);

// Uniform word length k of the goal.
int word_length(const Goal& goal);
int word_length(const Sentence& s);

// Canonical text; parse_goal(render_goal(g)) reproduces g.
std::string render_goal(const Goal& goal);

} // namespace probcov

#endif
