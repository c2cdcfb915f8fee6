#pragma once

#include <stdexcept>
#include <string>

namespace gspdom {

enum class ErrorKind {
    SelfLoop,
    ForeignVertex,
    SyntaxError,
    TerminalMismatch,
    NameCollision,
    SelfMerge,
    MultiEdge,
    Disconnected,
    EmptyGraph,
    TooLarge,
    ValidationFailure,
    InternalError,
    InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace gspdom
