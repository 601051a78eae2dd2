#pragma once

#include <stdexcept>
#include <string>

namespace uavcoord {

// Scenario text could not be tokenized / has an unknown keyword.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Well-formed records that do not describe a valid instance
// (dangling ids, disconnected graph, duplicate definitions, ...).
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was invoked with inputs violating its stated precondition,
// e.g. an illegal move handed to the transition function.
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& msg) : std::logic_error(msg) {}
};

// Step-0 observations do not pin down a unique initial state.
class InitialStateError : public std::runtime_error {
public:
    explicit InitialStateError(const std::string& msg) : std::runtime_error(msg) {}
};

// No explanation of cardinality <= max_card reconciles the history.
class NoDiagnosisError : public std::runtime_error {
public:
    explicit NoDiagnosisError(const std::string& msg) : std::runtime_error(msg) {}
};

// No goal-achieving plan exists within the horizon limit.
class UnsatisfiableHorizonError : public std::runtime_error {
public:
    explicit UnsatisfiableHorizonError(const std::string& msg) : std::runtime_error(msg) {}
};

// A plan action turned out illegal while being evaluated/simulated.
class PlanInvalidError : public std::runtime_error {
public:
    explicit PlanInvalidError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace uavcoord
