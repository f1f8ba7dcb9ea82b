#pragma once

#include <stdexcept>
#include <string>

namespace ctml {

/// Malformed input text. Carries 1-based row/column of the offending cell
/// when known (0 = not applicable).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t row = 0, std::size_t col = 0)
        : std::runtime_error(std::move(msg)), row_(row), col_(col) {}
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Caller violated a documented precondition.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested entity (gene, sample) does not exist.
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two components disagree on a shared contract (feature names, gene sets).
class ContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ctml
