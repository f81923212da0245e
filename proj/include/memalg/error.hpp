#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace memalg {

enum class ErrorKind {
    ArithmeticOverflow,
    UndefinedForm,
    InvalidArgument,
    InvalidMachine,
    TotalityViolation,
    EnumerationTooLarge,
    DomainMismatch,
    InvalidReduction,
    EmptyReduction,
    SearchBudgetExceeded,
    IncompatibleShapes,
    InvalidSpec,
    Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind lets callers (and the CLI
/// exit-code mapping) tell inconclusive searches apart from malformed input.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & message);

    ErrorKind kind() const noexcept { return _kind; }

private:
    ErrorKind _kind;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string & message);

    std::size_t line() const noexcept { return _line; }
    std::size_t column() const noexcept { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

} // namespace memalg
