#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rcfm {

/// Every failure the library reports carries a stable machine-readable code
/// ("ZeroDenominator", "NotAWitness", ...) next to the human-readable message.
/// The CLI surfaces the code verbatim in typed error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

/// Parse failure with source position and the token set that would have
/// been accepted at that point.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::vector<std::string> expected,
               const std::string& message)
        : Error("ParseError", message),
          line_(line), column_(column), expected_(std::move(expected)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

}  // namespace rcfm
