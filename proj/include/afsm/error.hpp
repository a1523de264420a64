#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afsm {

enum class ErrorCode {
    // model construction
    InvalidToken,
    MissingState,
    AlphabetViolation,
    EmptyStateSet,
    BadInitial,
    DuplicateName,
    DuplicateTransition,
    SelfLoop,
    DanglingEdge,
    UnknownMachine,
    UnknownVertex,
    EmptyArena,
    // text format
    SyntaxError,
    // bisimulation
    TooLarge,
    InitialStateMismatch,
    TooLargeForGeneralIso,
    // expansion
    GuardExceeded,
    NoInitialState,
    ArityMismatch,
    UnknownComponentState,
    // compositional
    ClassCoverageGap,
    QuotientSelfLoop,
};

std::string_view to_string(ErrorCode code);

/// Source position attached to errors raised while reading model text.
struct Position {
    std::size_t line = 0;
    std::size_t column = 0;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::optional<Position> where = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::optional<Position>& where() const noexcept { return where_; }
    /// The bare message, without code or position decoration.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::optional<Position> where_;
    std::string detail_;
};

}  // namespace afsm
