#ifndef PROBCOV_ERRORS_HPP
#define PROBCOV_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace probcov {

// Malformed model file. `line` is 1-based; 0 when the error is not tied to
// a specific line (e.g. a missing init declaration).
class ModelParseError : public std::runtime_error {
public:
    ModelParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class GoalParseError : public std::runtime_error {
public:
    explicit GoalParseError(const std::string& what) : std::runtime_error(what) {}
};

// The trace has no execution in the model. Carries the longest prefix of the
// trace that some execution can consume.
class IllegalTraceError : public std::runtime_error {
public:
    IllegalTraceError(const std::string& what, std::vector<std::string> prefix)
        : std::runtime_error(what), consumable_prefix_(std::move(prefix)) {}
    const std::vector<std::string>& consumable_prefix() const { return consumable_prefix_; }

private:
    std::vector<std::string> consumable_prefix_;
};

// A model was rejected by validate(); details live in the ValidationReport.
struct ValidationFailed : public std::runtime_error {
    ValidationFailed() : std::runtime_error("model failed validation") {}
};

// Brute-force enumeration refused to run: too many full paths.
class PathCapExceeded : public std::runtime_error {
public:
    PathCapExceeded(std::uint64_t paths, std::uint64_t cap)
        : std::runtime_error("path count " + std::to_string(paths) +
                             " exceeds enumeration cap " + std::to_string(cap)),
          paths_(paths), cap_(cap) {}
    std::uint64_t paths() const { return paths_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t paths_;
    std::uint64_t cap_;
};

} // namespace probcov

#endif
