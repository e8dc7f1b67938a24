#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace charfactor {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  CycleDetected,
  IndexOutOfRange,
  ParameterOutOfRange,
  NotComparable,
  PosetMismatch,
  NotInvertible,
  NoZero,
  ZeroPolynomial,
  DimensionMismatch,
  ZeroDivisor,
  SizeCap,
  NotHyperplanes,
  NotSubBn,
  SizeMismatch,
  NotEmbedded,
  BadPrime,
  InsufficientSamples,
  NotInModule,
  NotHomogeneous,
  InsufficientCertificates,
  BudgetExceeded,
  NotLattice,
  ChainNotMaximal,
  NotSemimodular,
  NotSupersolvable,
  NoLeftModularChain,
  LevelConditionFails,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::PosetMismatch: return "PosetMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NoZero: return "NoZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::NotHyperplanes: return "NotHyperplanes";
    case ErrorCode::NotSubBn: return "NotSubBn";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotEmbedded: return "NotEmbedded";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NotInModule: return "NotInModule";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::InsufficientCertificates: return "InsufficientCertificates";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotLattice: return "NotLattice";
    case ErrorCode::ChainNotMaximal: return "ChainNotMaximal";
    case ErrorCode::NotSemimodular: return "NotSemimodular";
    case ErrorCode::NotSupersolvable: return "NotSupersolvable";
    case ErrorCode::NoLeftModularChain: return "NoLeftModularChain";
    case ErrorCode::LevelConditionFails: return "LevelConditionFails";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace charfactor
