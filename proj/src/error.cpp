#include <memalg/error.hpp>

namespace memalg {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ArithmeticOverflow: return "arithmetic-overflow";
    case ErrorKind::UndefinedForm: return "undefined-form";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidMachine: return "invalid-machine";
    case ErrorKind::TotalityViolation: return "totality-violation";
    case ErrorKind::EnumerationTooLarge: return "enumeration-too-large";
    case ErrorKind::DomainMismatch: return "domain-mismatch";
    case ErrorKind::InvalidReduction: return "invalid-reduction";
    case ErrorKind::EmptyReduction: return "empty-reduction";
    case ErrorKind::SearchBudgetExceeded: return "search-budget-exceeded";
    case ErrorKind::IncompatibleShapes: return "incompatible-shapes";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::Parse: return "parse-error";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string & message) :
    std::runtime_error(std::string(to_string(kind)) + ": " + message),
    _kind(kind)
{
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string & message) :
    Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
    _line(line),
    _column(column)
{
}

} // namespace memalg
