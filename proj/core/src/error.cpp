#include "tourcast/error.hpp"

namespace tourcast {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::PivotMismatch: return "PivotMismatch";
    case ErrorCode::LagTooLarge: return "LagTooLarge";
    case ErrorCode::ConstantSeries: return "ConstantSeries";
    case ErrorCode::SplitTooLarge: return "SplitTooLarge";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::HistoryTooShort: return "HistoryTooShort";
    case ErrorCode::MissingExogenous: return "MissingExogenous";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::SeasonalityDisabled: return "SeasonalityDisabled";
    case ErrorCode::MissingComponentInput: return "MissingComponentInput";
    case ErrorCode::MisalignedRegressor: return "MisalignedRegressor";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GapError: return "GapError";
    case ErrorCode::NonMonotonic: return "NonMonotonic";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace tourcast
