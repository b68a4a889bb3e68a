// Error taxonomy shared by every module: each failure mode carries a stable
// machine-readable code so the CLI can emit structured errors and tests can
// assert on the exact condition.
#pragma once

#include <stdexcept>
#include <string>

namespace parnode {

enum class ErrorCode {
    // data validation
    NonIncreasingWeights,
    NonPositiveMultiplicity,
    ZeroPolarization,
    MissingFlagData,
    InconsistentFlagDims,
    NonIntegralSplit,
    UnbalancedSpec,
    InvariantViolation,
    ParseError,
    // semistability
    RankOverflow,
    QImageOverflow,
    ZeroRank,
    PreconditionViolated,
    // degeneration / local model
    InfeasibleFiberDim,
    RankOutOfRange,
    NotInZ,
    TooLarge,
    // mu transform / verlinde
    LabelOutOfRange,
    NumericallyUnstable,
    UnconvertibleWeights,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code), detail_(message) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace parnode
