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

#include "ddbpp/rational.h"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ddbpp {
namespace {

__int128 WideGcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t Narrow(__int128 v) {
  if (v > std::numeric_limits<int64_t>::max() ||
      v < std::numeric_limits<int64_t>::min()) {
    throw std::overflow_error("rational overflow");
  }
  return static_cast<int64_t>(v);
}

__int128 FloorDiv(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

int64_t Gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t Lcm(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return Narrow(static_cast<__int128>(a / Gcd(a, b)) * b);
}

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = FromWide(num, den);
}

Rational Rational::FromWide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = WideGcd(num, den);
  Rational r;
  if (g > 1) {
    num /= g;
    den /= g;
  }
  r.num_ = Narrow(num);
  r.den_ = Narrow(den);
  return r;
}

int64_t Rational::Floor() const { return Narrow(FloorDiv(num_, den_)); }

int64_t Rational::Ceil() const { return -Narrow(FloorDiv(-static_cast<__int128>(num_), den_)); }

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return ToFractionString();
}

std::string Rational::ToFractionString() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  return FromWide(-static_cast<__int128>(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::FromWide(
      static_cast<__int128>(a.num_) * b.den_ +
          static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::FromWide(static_cast<__int128>(a.num_) * b.num_,
                            static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return Rational::FromWide(static_cast<__int128>(a.num_) * b.den_,
                            static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

Rational ParseRational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  const std::string int_part = text.substr(0, dot);
  const std::string frac_part = text.substr(dot + 1);
  if (frac_part.size() > 17) throw std::invalid_argument("too many digits");
  int64_t den = 1;
  for (size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  const bool negative = !int_part.empty() && int_part[0] == '-';
  const int64_t whole =
      int_part.empty() || int_part == "-" ? 0 : std::llabs(std::stoll(int_part));
  const int64_t frac = frac_part.empty() ? 0 : std::stoll(frac_part);
  Rational r = Rational(whole) + Rational(frac, den);
  return negative ? -r : r;
}

}  // namespace ddbpp
