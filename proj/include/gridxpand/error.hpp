#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gridxpand {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. `where` names the offending line or field path.
class ParseError : public Error {
public:
    ParseError(std::string where, const std::string& what)
        : Error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// A case failed one or more invariants; every violation is listed.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "case validation failed";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
    std::vector<std::string> violations_;
};

/// Inputs are well-formed but the requested model cannot be built from them.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Solver failure, missing backend, or a post-solve audit contract broken.
class SolveError : public Error {
public:
    using Error::Error;
};

class BackendUnavailable : public SolveError {
public:
    using SolveError::SolveError;
};

}  // namespace gridxpand
