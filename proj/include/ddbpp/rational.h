// Copyright 2026 The ddbpp Authors
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

#ifndef DDBPP_RATIONAL_H_
#define DDBPP_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace ddbpp {

// Exact fraction over 64-bit integers. Always stored reduced with a positive
// denominator. Intermediate products use 128-bit arithmetic; results that do
// not fit back into 64 bits throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(int64_t num, int64_t den);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  // Largest integer not greater than the value.
  int64_t Floor() const;
  int64_t Ceil() const;
  bool IsInteger() const { return den_ == 1; }
  double ToDouble() const { return static_cast<double>(num_) / den_; }

  // "num/den", or just "num" when the denominator is 1.
  std::string ToString() const;
  // Always "num/den".
  std::string ToFractionString() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  static Rational FromWide(__int128 num, __int128 den);

  int64_t num_ = 0;
  int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Parses "a", "a/b" or a decimal such as "0.15" exactly.
Rational ParseRational(const std::string& text);

int64_t Gcd(int64_t a, int64_t b);
int64_t Lcm(int64_t a, int64_t b);

}  // namespace ddbpp

#endif  // DDBPP_RATIONAL_H_
