#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cartier/field.hpp"

namespace cartier {

// Residue modulo a prime p >= 5, stored in [0, p). Each element carries its
// modulus so that cross-field arithmetic is detected, not silently mixed.
class ModularInt {
 public:
  ModularInt() = default;
  ModularInt(std::uint64_t value, std::uint64_t modulus)
      : value_(modulus == 0 ? value : value % modulus), modulus_(modulus) {}

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }

  bool is_zero() const { return value_ == 0; }

  ModularInt inverse() const {
    if (value_ == 0) throw std::domain_error("division by zero: inverse of 0 in prime field");
    return {detail::powmod(value_, modulus_ - 2, modulus_), modulus_};
  }

  std::string str() const { return std::to_string(value_); }

  friend ModularInt operator+(const ModularInt& a, const ModularInt& b) {
    check_same(a, b);
    std::uint64_t s = a.value_ + b.value_;  // p < 2^63, no overflow
    if (s >= a.modulus_) s -= a.modulus_;
    return {s, a.modulus_};
  }
  friend ModularInt operator-(const ModularInt& a, const ModularInt& b) {
    check_same(a, b);
    return {a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_,
            a.modulus_};
  }
  friend ModularInt operator*(const ModularInt& a, const ModularInt& b) {
    check_same(a, b);
    return {detail::mulmod(a.value_, b.value_, a.modulus_), a.modulus_};
  }
  friend ModularInt operator-(const ModularInt& a) {
    return {a.value_ == 0 ? 0 : a.modulus_ - a.value_, a.modulus_};
  }
  friend bool operator==(const ModularInt&, const ModularInt&) = default;

 private:
  static void check_same(const ModularInt& a, const ModularInt& b) {
    if (a.modulus_ != b.modulus_) {
      throw std::invalid_argument("scalar field mismatch: prime " + std::to_string(a.modulus_) +
                                  " vs prime " + std::to_string(b.modulus_));
    }
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

class PrimeField {
 public:
  using Scalar = ModularInt;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 62)) {
      throw std::invalid_argument("prime field modulus too large: " + std::to_string(p));
    }
    FieldDescriptor::prime_field(p);  // validates p prime, p >= 5
  }

  std::uint64_t modulus() const { return p_; }

  Scalar zero() const { return {0, p_}; }
  Scalar one() const { return {1, p_}; }

  Scalar from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return {static_cast<std::uint64_t>(r), p_};
  }

  // Decimal residue of any length, optionally negative; reduced mod p.
  Scalar parse(std::string_view text) const {
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
      negative = true;
      text.remove_prefix(1);
    }
    if (text.empty()) throw std::invalid_argument("malformed prime-field scalar");
    std::uint64_t acc = 0;
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("malformed prime-field scalar '" + std::string(text) + "'");
      }
      acc = detail::mulmod(acc, 10, p_);
      acc = (acc + static_cast<std::uint64_t>(c - '0')) % p_;
    }
    Scalar v{acc, p_};
    return negative ? -v : v;
  }

  FieldDescriptor descriptor() const { return FieldDescriptor::prime_field(p_); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

static_assert(field_context<PrimeField>);

}  // namespace cartier
