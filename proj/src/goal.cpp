#include "probcov/goal.hpp"

#include <algorithm>
#include <cctype>

#include "probcov/errors.hpp"
#include "probcov/util.hpp"

namespace probcov {

namespace {

class GoalParser {
public:
    explicit GoalParser(const std::string& text) : text_(text) {}

    Goal parse() {
        skip_ws();
        Goal g = peek() == '^' ? Goal(parse_aggregate()) : Goal(parse_sentence());
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw GoalParseError("goal syntax error at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool eat(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    long long parse_int() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    std::string parse_state_token() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')
                ++pos_;
            else
                break;
        }
        if (pos_ == start) fail("expected a state id");
        return text_.substr(start, pos_ - start);
    }

    Aggregate parse_aggregate() {
        expect('^');
        long long k = parse_int();
        if (k < 1) fail("aggregate requires k >= 1");
        expect('>');
        expect('=');
        long long n = parse_int();
        return Aggregate{static_cast<int>(k), n};
    }

    Word parse_word() {
        expect('<');
        Word w;
        w.states.push_back(parse_state_token());
        while (eat(',')) w.states.push_back(parse_state_token());
        expect('>');
        return w;
    }

    Clause parse_clause() {
        bool parens = eat('(');
        Clause c;
        c.words.push_back(parse_word());
        while (eat('|')) {
            Word w = parse_word();
            if (std::find(c.words.begin(), c.words.end(), w) == c.words.end())
                c.words.push_back(std::move(w));
        }
        if (parens) expect(')');
        return c;
    }

    Sentence parse_sentence() {
        Sentence s;
        s.clauses.push_back(parse_clause());
        while (eat(';')) s.clauses.push_back(parse_clause());
        return s;
    }

    const std::string& text_;
    size_t pos_ = 0;
};

void check_uniform_length(const Sentence& s) {
    size_t k = s.clauses.front().words.front().states.size();
    for (const Clause& c : s.clauses)
        for (const Word& w : c.words)
            if (w.states.size() != k)
                throw GoalParseError("MixedWordLength: words of length " + std::to_string(k) +
                                     " and " + std::to_string(w.states.size()) +
                                     " in the same goal");
}

} // namespace

Goal parse_goal(const std::string& text) {
    Goal g = GoalParser(text).parse();
    if (const Sentence* s = std::get_if<Sentence>(&g)) check_uniform_length(*s);
    return g;
}

int word_length(const Sentence& s) {
    return static_cast<int>(s.clauses.front().words.front().states.size());
}

int word_length(const Goal& goal) {
    if (const Aggregate* a = std::get_if<Aggregate>(&goal)) return a->k;
    return word_length(std::get<Sentence>(goal));
}

std::string render_goal(const Goal& goal) {
    if (const Aggregate* a = std::get_if<Aggregate>(&goal))
        return "^" + std::to_string(a->k) + ">=" + std::to_string(a->n);
    const Sentence& s = std::get<Sentence>(goal);
    std::string out;
    for (size_t ci = 0; ci < s.clauses.size(); ++ci) {
        if (ci) out += ";";
        const Clause& c = s.clauses[ci];
        if (c.words.size() > 1) out += "(";
        for (size_t wi = 0; wi < c.words.size(); ++wi) {
            if (wi) out += "|";
            out += "<";
            for (size_t si = 0; si < c.words[wi].states.size(); ++si) {
                if (si) out += ",";
                out += c.words[wi].states[si];
            }
            out += ">";
        }
        if (c.words.size() > 1) out += ")";
    }
    return out;
}

} // namespace probcov
