#ifndef TRACETIME_ERROR_HPP
#define TRACETIME_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracetime {

enum class ErrorCode {
    ReflexivePair,
    UnknownLetter,
    DuplicateLetter,
    AlphabetMismatch,
    UnknownState,
    DuplicateState,
    UnknownPlace,
    DuplicatePlace,
    InvalidWeight,
    UnknownTransition,
    NondeterministicTransition,
    InvalidSystem,
    MissingDuration,
    InvalidDuration,
    InvalidInFlight,
    UndefinedCompletion,
    StateBudgetExceeded,
    TargetNotReached,
    Format,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ReflexivePair: return "ReflexivePair";
        case ErrorCode::UnknownLetter: return "UnknownLetter";
        case ErrorCode::DuplicateLetter: return "DuplicateLetter";
        case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorCode::UnknownState: return "UnknownState";
        case ErrorCode::DuplicateState: return "DuplicateState";
        case ErrorCode::UnknownPlace: return "UnknownPlace";
        case ErrorCode::DuplicatePlace: return "DuplicatePlace";
        case ErrorCode::InvalidWeight: return "InvalidWeight";
        case ErrorCode::UnknownTransition: return "UnknownTransition";
        case ErrorCode::NondeterministicTransition: return "NondeterministicTransition";
        case ErrorCode::InvalidSystem: return "InvalidSystem";
        case ErrorCode::MissingDuration: return "MissingDuration";
        case ErrorCode::InvalidDuration: return "InvalidDuration";
        case ErrorCode::InvalidInFlight: return "InvalidInFlight";
        case ErrorCode::UndefinedCompletion: return "UndefinedCompletion";
        case ErrorCode::StateBudgetExceeded: return "StateBudgetExceeded";
        case ErrorCode::TargetNotReached: return "TargetNotReached";
        case ErrorCode::Format: return "Format";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tracetime

#endif
