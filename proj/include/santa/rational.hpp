// Copyright 2026 The Authors.
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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace santa {

// Exact rational number, always in lowest terms with a positive denominator.
// Thin value wrapper over GMP's mpq_class so that expression templates never
// leak into `auto` declarations.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "p" or "p/q" with q > 0, optional leading '-'. No whitespace.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s, bool allow_sign) {
      if (!s.empty() && allow_sign && s.front() == '-') s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!digits(num, true))
      throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
      const std::string_view den = text.substr(slash + 1);
      if (!digits(den, false))
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
      d = mpz_class(std::string(den), 10);
      if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(mpq_class(n, d));
  }

  // "p/q" in lowest terms, or "p" when the denominator is 1.
  std::string str() const {
    std::string s = q_.get_num().get_str();
    if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
    return s;
  }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  const mpq_class& raw() const { return q_; }
  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace santa

template <>
struct std::hash<santa::Rational> {
  std::size_t operator()(const santa::Rational& r) const { return std::hash<std::string>{}(r.str()); }
};
