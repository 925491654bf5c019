// Copyright 2026 The ergofatigue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ergo {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (nonpositive strength, negative time, angle beyond a limit).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the text-format readers. Carries the 1-based line number of the
/// offending input (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Raised when an output destination cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Gender { Male, Female };

std::string_view to_string(Gender gender);
Gender parse_gender(std::string_view text);

namespace units {

inline constexpr double kSecondsPerMinute = 60.0;

template <typename Scalar>
constexpr Scalar seconds_to_minutes(Scalar s) {
  return s / Scalar(kSecondsPerMinute);
}

template <typename Scalar>
constexpr Scalar minutes_to_seconds(Scalar m) {
  return m * Scalar(kSecondsPerMinute);
}

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

}  // namespace units

/// Round to `decimals` places with ties going toward +infinity.
inline double round_half_up(double value, int decimals = 0) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

}  // namespace ergo
