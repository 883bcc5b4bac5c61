#pragma once

#include <stdexcept>
#include <string>

namespace symclust {

// Error taxonomy mapped to CLI exit codes:
//   ParseError      -> 2 (malformed input files)
//   ConstraintError -> 3 (domain invariant violated by otherwise parseable data)
//   InternalError   -> 4 (broken internal invariant; a bug)
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return 1; }
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    int exit_code() const override { return 2; }
};

class ConstraintError : public Error {
public:
    explicit ConstraintError(const std::string& msg) : Error(msg) {}
    int exit_code() const override { return 3; }
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
    int exit_code() const override { return 4; }
};

}  // namespace symclust
