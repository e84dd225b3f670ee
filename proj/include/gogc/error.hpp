#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gogc {

enum class ErrorCode {
  MalformedCsv,
  MalformedJson,
  NonArrayRoot,
  NestedObjectValue,
  UnknownDataset,
  DuplicateDataset,
  DuplicateField,
  UnknownField,
  NonNumericField,
  AllNull,
  PredicateParseError,
  TypeMismatch,
  UnknownStatistic,
  TooManyGlyphFields,
  UnknownFunction,
  DomainError,
  BadProperties,
  EmptyInput,
  BadQuantile,
  EmptyDomain,
  DegenerateDomain,
  UnknownCategory,
  TooFewAxes,
  ArityMismatch,
  UnboundChannel,
  NegativeStackValue,
  NegativeValue,
  ZeroTotal,
  UnknownShape,
  UnlinkedScale,
  BadOrient,
  ContinuousRangeUnsupported,
  InvalidCommand,
  UnknownScale,
  IllegalLink,
};

std::string_view to_string(ErrorCode code);

// Every failing operation in the library throws this; the compiler turns it
// into a Diagnostic carrying the spec path of the layer that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gogc
