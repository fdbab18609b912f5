#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spantl {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (tree terms, machine files, automaton files).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message + " (line " + std::to_string(line) + ", column "
                + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// One structural problem found by a validator. `kind` is a stable
// machine-checkable tag; `message` names the offending object.
struct Violation {
    std::string kind;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

// A description failed validation. Carries the full violation list.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error(summarize(violations)), violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const { return violations_; }

private:
    static std::string summarize(const std::vector<Violation>& vs) {
        std::string s = "validation failed (" + std::to_string(vs.size()) + " violation"
                        + (vs.size() == 1 ? "" : "s") + ")";
        for (const auto& v : vs)
            s += "\n  [" + v.kind + "] " + v.message;
        return s;
    }

    std::vector<Violation> violations_;
};

// A declared or internal resource bound was exceeded. `bound` names the
// bound ("max_nodes", "tape_cap", "determinization_cap", ...); `subject`
// names the offending object (often a configuration key) when there is one.
class ResourceError : public Error {
public:
    ResourceError(std::string bound, std::string subject, const std::string& message)
        : Error(message), bound_(std::move(bound)), subject_(std::move(subject)) {}

    const std::string& bound() const { return bound_; }
    const std::string& subject() const { return subject_; }

private:
    std::string bound_;
    std::string subject_;
};

// The configuration graph is cyclic, so no finite computation bound can
// make the machine terminate along that path.
class CycleError : public Error {
public:
    explicit CycleError(std::string configuration_key)
        : Error("configuration graph contains a cycle through " + configuration_key),
          configuration_key_(std::move(configuration_key)) {}

    const std::string& configuration_key() const { return configuration_key_; }

private:
    std::string configuration_key_;
};

} // namespace spantl
