#pragma once

#include <stdexcept>
#include <string>

namespace symchaos {

// Input could not be interpreted (bad JSON, unknown symbol, malformed word).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A precondition of the requested operation does not hold for this input.
// The message always names the failed hypothesis.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyShiftError : HypothesisError {
    EmptyShiftError() : HypothesisError("presentation trims to the empty shift") {}
};

struct NotSurjectiveError : HypothesisError {
    explicit NotSurjectiveError(const std::string& detail)
        : HypothesisError("shift map is not surjective: " + detail) {}
};

// The stage builder ran out of room at some level; `what` records level + reason.
struct ConstructionStuck : std::runtime_error {
    ConstructionStuck(int level, const std::string& reason)
        : std::runtime_error("construction stuck at level " + std::to_string(level) + ": " + reason),
          level(level) {}
    int level;
};

}  // namespace symchaos
