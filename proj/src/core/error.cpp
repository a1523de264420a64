#include "afsm/error.hpp"

namespace afsm {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidToken: return "InvalidToken";
    case ErrorCode::MissingState: return "MissingState";
    case ErrorCode::AlphabetViolation: return "AlphabetViolation";
    case ErrorCode::EmptyStateSet: return "EmptyStateSet";
    case ErrorCode::BadInitial: return "BadInitial";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DuplicateTransition: return "DuplicateTransition";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::UnknownMachine: return "UnknownMachine";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::EmptyArena: return "EmptyArena";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InitialStateMismatch: return "InitialStateMismatch";
    case ErrorCode::TooLargeForGeneralIso: return "TooLargeForGeneralIso";
    case ErrorCode::GuardExceeded: return "GuardExceeded";
    case ErrorCode::NoInitialState: return "NoInitialState";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownComponentState: return "UnknownComponentState";
    case ErrorCode::ClassCoverageGap: return "ClassCoverageGap";
    case ErrorCode::QuotientSelfLoop: return "QuotientSelfLoop";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, const std::optional<Position>& where) {
    std::string out;
    if (where) {
        out += "line " + std::to_string(where->line);
        if (where->column != 0) {
            out += ", column " + std::to_string(where->column);
        }
        out += ": ";
    }
    out += to_string(code);
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::optional<Position> where)
    : std::runtime_error(decorate(code, message, where)), code_(code), where_(where), detail_(std::move(message)) {}

}  // namespace afsm
