#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic {

/// Failure categories shared by every module.
enum class Errc {
  NonPrime,
  TooLarge,
  PDividesN,
  NotInSubgroup,
  InvalidArgument,
  OwnerMismatch,
  DivisionByZeroToPrecision,
  PrecisionExhausted,
  ZeroElement,
  NoRoot,
  RootsOfUnityMissing,
  BadCharacteristic,
  ModelTooLarge,
  ZeroToPrecision,
  PrecisionTooLow,
  SingularReduction,
  TorsionFieldTooLarge,
  NonRationalValue,
  ParseError,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::TooLarge: return "TooLarge";
    case Errc::PDividesN: return "PDividesN";
    case Errc::NotInSubgroup: return "NotInSubgroup";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OwnerMismatch: return "OwnerMismatch";
    case Errc::DivisionByZeroToPrecision: return "DivisionByZeroToPrecision";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::NoRoot: return "NoRoot";
    case Errc::RootsOfUnityMissing: return "RootsOfUnityMissing";
    case Errc::BadCharacteristic: return "BadCharacteristic";
    case Errc::ModelTooLarge: return "ModelTooLarge";
    case Errc::ZeroToPrecision: return "ZeroToPrecision";
    case Errc::PrecisionTooLow: return "PrecisionTooLow";
    case Errc::SingularReduction: return "SingularReduction";
    case Errc::TorsionFieldTooLarge: return "TorsionFieldTooLarge";
    case Errc::NonRationalValue: return "NonRationalValue";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace padic
