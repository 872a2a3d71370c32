#include "fglab/error.hpp"

namespace fglab {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::IrreduciblePolyNotFound: return "IrreduciblePolyNotFound";
    case ErrorCode::NotEisenstein: return "NotEisenstein";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DivisionByZeroToPrecision: return "DivisionByZeroToPrecision";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::LeadingCoefficientNotUnit: return "LeadingCoefficientNotUnit";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::NotPTypical: return "NotPTypical";
    case ErrorCode::DegreeCapTooSmall: return "DegreeCapTooSmall";
    case ErrorCode::NonUniqueSolution: return "NonUniqueSolution";
    case ErrorCode::MissingLogarithm: return "MissingLogarithm";
    case ErrorCode::DSquaredNonzero: return "DSquaredNonzero";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::UnitMissing: return "UnitMissing";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace fglab
