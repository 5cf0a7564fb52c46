// Copyright 2026 The klein-ovoid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace klein {

enum class ErrorCode {
  kNotPrime,
  kReducibleModulus,
  kUnsupportedSize,
  kBadModulus,
  kDivisionByZero,
  kFieldMismatch,
  kNoWitness,
  kBadArity,
  kDegreeTooSmall,
  kBadShape,
  kZeroPolynomial,
  kNonVanishingAtOrigin,
  kExponentOverflow,
  kNotOnQuadric,
  kSamePoint,
  kTooLarge,
  kRestrictionViolated,
  kNotAnOvoid,
  kEvenCharacteristic,
  kInvalidSpec,
  kParseError,
  kUnknownFamily,
};

inline std::string_view ErrorName(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kReducibleModulus: return "ReducibleModulus";
    case ErrorCode::kUnsupportedSize: return "UnsupportedSize";
    case ErrorCode::kBadModulus: return "BadModulus";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kNoWitness: return "NoWitness";
    case ErrorCode::kBadArity: return "BadArity";
    case ErrorCode::kDegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::kBadShape: return "BadShape";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kNonVanishingAtOrigin: return "NonVanishingAtOrigin";
    case ErrorCode::kExponentOverflow: return "ExponentOverflow";
    case ErrorCode::kNotOnQuadric: return "NotOnQuadric";
    case ErrorCode::kSamePoint: return "SamePoint";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kRestrictionViolated: return "RestrictionViolated";
    case ErrorCode::kNotAnOvoid: return "NotAnOvoid";
    case ErrorCode::kEvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownFamily: return "UnknownFamily";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(ErrorName(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Throw(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

#define KLEIN_ENFORCE(cond, code, msg)  \
  do {                                  \
    if (!(cond)) ::klein::Throw(code, msg); \
  } while (0)

}  // namespace klein
