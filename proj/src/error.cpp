#include "gogc/error.hpp"

namespace gogc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::NonArrayRoot: return "NonArrayRoot";
    case ErrorCode::NestedObjectValue: return "NestedObjectValue";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::DuplicateDataset: return "DuplicateDataset";
    case ErrorCode::DuplicateField: return "DuplicateField";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::NonNumericField: return "NonNumericField";
    case ErrorCode::AllNull: return "AllNull";
    case ErrorCode::PredicateParseError: return "PredicateParseError";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::UnknownStatistic: return "UnknownStatistic";
    case ErrorCode::TooManyGlyphFields: return "TooManyGlyphFields";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BadProperties: return "BadProperties";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadQuantile: return "BadQuantile";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::DegenerateDomain: return "DegenerateDomain";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::TooFewAxes: return "TooFewAxes";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnboundChannel: return "UnboundChannel";
    case ErrorCode::NegativeStackValue: return "NegativeStackValue";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::UnknownShape: return "UnknownShape";
    case ErrorCode::UnlinkedScale: return "UnlinkedScale";
    case ErrorCode::BadOrient: return "BadOrient";
    case ErrorCode::ContinuousRangeUnsupported: return "ContinuousRangeUnsupported";
    case ErrorCode::InvalidCommand: return "InvalidCommand";
    case ErrorCode::UnknownScale: return "UnknownScale";
    case ErrorCode::IllegalLink: return "IllegalLink";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace gogc
