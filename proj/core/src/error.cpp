// Copyright 2026 The qcong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcong/error.hpp"

namespace qcong {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEvenModulus: return "EvenModulus";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNotADivisor: return "NotADivisor";
    case ErrorCode::kOracleScaleExceeded: return "OracleScaleExceeded";
    case ErrorCode::kReductionMismatch: return "ReductionMismatch";
    case ErrorCode::kZeroFrequency: return "ZeroFrequency";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

ReductionMismatch::ReductionMismatch(std::int64_t b, std::int64_t t)
    : Error(ErrorCode::kReductionMismatch,
            "reduction mismatch: B=" + std::to_string(b) +
                " T=" + std::to_string(t)),
      b_(b),
      t_(t) {}

ZeroFrequency::ZeroFrequency(std::int64_t terms)
    : Error(ErrorCode::kZeroFrequency,
            "frequency is 0 mod s; every term equals 1"),
      terms_(terms) {}

void throw_even_modulus(std::int64_t q) {
  throw Error(ErrorCode::kEvenModulus,
              "modulus must be odd (got q=" + std::to_string(q) + ")");
}

void require_odd_modulus(std::int64_t q) {
  if (q < 1) {
    throw Error(ErrorCode::kOutOfRange,
                "modulus must be positive (got q=" + std::to_string(q) + ")");
  }
  if (q % 2 == 0) throw_even_modulus(q);
}

}  // namespace qcong
