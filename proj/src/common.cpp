#include "parnode/errors.hpp"
#include "parnode/rational.hpp"

namespace parnode {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonIncreasingWeights: return "NonIncreasingWeights";
        case ErrorCode::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
        case ErrorCode::ZeroPolarization: return "ZeroPolarization";
        case ErrorCode::MissingFlagData: return "MissingFlagData";
        case ErrorCode::InconsistentFlagDims: return "InconsistentFlagDims";
        case ErrorCode::NonIntegralSplit: return "NonIntegralSplit";
        case ErrorCode::UnbalancedSpec: return "UnbalancedSpec";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::RankOverflow: return "RankOverflow";
        case ErrorCode::QImageOverflow: return "QImageOverflow";
        case ErrorCode::ZeroRank: return "ZeroRank";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::InfeasibleFiberDim: return "InfeasibleFiberDim";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::NotInZ: return "NotInZ";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
        case ErrorCode::NumericallyUnstable: return "NumericallyUnstable";
        case ErrorCode::UnconvertibleWeights: return "UnconvertibleWeights";
    }
    return "UnknownError";
}

Rational parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
}

}  // namespace parnode
