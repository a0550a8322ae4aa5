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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcong {

enum class ErrorCode {
  kEvenModulus,
  kOutOfRange,
  kNotInvertible,
  kNotADivisor,
  kOracleScaleExceeded,
  kReductionMismatch,
  kZeroFrequency,
  kDegenerateFit,
  kIoError,
  kInvalidConfig,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI in particular) map failures onto exit statuses without
/// string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by verify_reduction when the stratum count and the product count
/// disagree. Never expected; carries both values for the report.
class ReductionMismatch : public Error {
 public:
  ReductionMismatch(std::int64_t b, std::int64_t t);

  std::int64_t b() const noexcept { return b_; }
  std::int64_t t() const noexcept { return t_; }

 private:
  std::int64_t b_;
  std::int64_t t_;
};

/// Raised by linear_exp_sum when r = 0 (mod s). Every term is 1, so the
/// magnitude is exactly the number of terms.
class ZeroFrequency : public Error {
 public:
  explicit ZeroFrequency(std::int64_t terms);

  double magnitude() const noexcept { return static_cast<double>(terms_); }

 private:
  std::int64_t terms_;
};

[[noreturn]] void throw_even_modulus(std::int64_t q);
void require_odd_modulus(std::int64_t q);

}  // namespace qcong
