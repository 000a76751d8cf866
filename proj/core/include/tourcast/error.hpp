#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tourcast {

enum class ErrorCode {
    SeriesTooShort,
    PivotMismatch,
    LagTooLarge,
    ConstantSeries,
    SplitTooLarge,
    NonFiniteValue,
    InvalidArgument,
    InvalidOrder,
    SingularDesign,
    NonConvergence,
    HistoryTooShort,
    MissingExogenous,
    DimensionMismatch,
    DegenerateFrame,
    SeasonalityDisabled,
    MissingComponentInput,
    MisalignedRegressor,
    LengthMismatch,
    EmptyInput,
    ParseError,
    GapError,
    NonMonotonic,
    IoError,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tourcast
