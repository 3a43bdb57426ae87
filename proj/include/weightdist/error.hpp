/* Copyright 2026 The weightdist Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace weightdist {

enum class ErrorKind {
  NonPrime,
  EvenCharacteristic,
  FieldTooLarge,
  DivisionByZero,
  NotADivisor,
  NotInSubfield,
  InvalidS,
  InvalidT,
  DegenerateFactor,
  NotRational,
  RankBoundViolation,
  LemmaMismatch,
  IntegerOverflow,
  NonIntegralFrequency,
  NonIntegralWeight,
  NonIntegralSolution,
  SingularSystem,
  BudgetExceeded,
  InadmissibleValue,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::NotInSubfield: return "NotInSubfield";
    case ErrorKind::InvalidS: return "InvalidS";
    case ErrorKind::InvalidT: return "InvalidT";
    case ErrorKind::DegenerateFactor: return "DegenerateFactor";
    case ErrorKind::NotRational: return "NotRational";
    case ErrorKind::RankBoundViolation: return "RankBoundViolation";
    case ErrorKind::LemmaMismatch: return "LemmaMismatch";
    case ErrorKind::IntegerOverflow: return "IntegerOverflow";
    case ErrorKind::NonIntegralFrequency: return "NonIntegralFrequency";
    case ErrorKind::NonIntegralWeight: return "NonIntegralWeight";
    case ErrorKind::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InadmissibleValue: return "InadmissibleValue";
  }
  return "Unknown";
}

/// Parameter errors are the caller's fault; falsifications mean a claimed
/// identity did not hold; everything else is an internal or capacity failure.
enum class ErrorClass { InvalidParameters, Falsified, Internal };

inline ErrorClass classify_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrime:
    case ErrorKind::EvenCharacteristic:
    case ErrorKind::FieldTooLarge:
    case ErrorKind::NotADivisor:
    case ErrorKind::NotInSubfield:
    case ErrorKind::InvalidS:
    case ErrorKind::InvalidT:
    case ErrorKind::DivisionByZero:
      return ErrorClass::InvalidParameters;
    case ErrorKind::DegenerateFactor:
    case ErrorKind::RankBoundViolation:
    case ErrorKind::LemmaMismatch:
    case ErrorKind::NonIntegralFrequency:
    case ErrorKind::NonIntegralWeight:
    case ErrorKind::NonIntegralSolution:
    case ErrorKind::InadmissibleValue:
      return ErrorClass::Falsified;
    case ErrorKind::NotRational:
    case ErrorKind::IntegerOverflow:
    case ErrorKind::SingularSystem:
    case ErrorKind::BudgetExceeded:
      return ErrorClass::Internal;
  }
  return ErrorClass::Internal;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weightdist
