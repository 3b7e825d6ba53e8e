#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "cartier/field.hpp"

namespace cartier {

// Arbitrary-precision rational, kept in lowest terms with a positive
// denominator so that equality is structural.
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() = default;
  explicit Rational(long long n) : v_(n) {}

  Rational(Int numerator, Int denominator) {
    if (denominator == 0) {
      throw std::domain_error("rational scalar with zero denominator");
    }
    v_ = Rep(std::move(numerator)) / Rep(std::move(denominator));
  }

  // Accepts "a" or "a/b" with an optional leading '-' on the numerator.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num =
        slash == std::string_view::npos ? text : text.substr(0, slash);
    const std::string_view den =
        slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!digits_ok(num, true) || (slash != std::string_view::npos && !digits_ok(den, false))) {
      throw std::invalid_argument("malformed rational scalar '" + std::string(text) + "'");
    }
    Int n{std::string(num)};
    Int d = slash == std::string_view::npos ? Int(1) : Int(std::string(den));
    return Rational(std::move(n), std::move(d));
  }

  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero: inverse of rational 0");
    return Rational(Rep(1) / v_);
  }

  std::string str() const {
    std::string s = numerator().str();
    if (denominator() != 1) s += "/" + denominator().str();
    return s;
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator-(const Rational& a) { return Rational(-a.v_); }
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  using Rep = boost::multiprecision::cpp_rational;

  explicit Rational(Rep v) : v_(std::move(v)) {}

  static bool digits_ok(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }

  Rep v_;
};

struct RationalField {
  using Scalar = Rational;

  Scalar zero() const { return Rational(); }
  Scalar one() const { return Rational(1); }
  Scalar from_int(std::int64_t n) const { return Rational(static_cast<long long>(n)); }
  Scalar parse(std::string_view text) const { return Rational::parse(text); }
  FieldDescriptor descriptor() const { return FieldDescriptor::rationals(); }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

static_assert(field_context<RationalField>);

}  // namespace cartier
