#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "cartier/field.hpp"
#include "cartier/prime_field.hpp"
#include "cartier/rational.hpp"

namespace cartier {

// Dispatch a runtime field choice into code templated on the field context.
template <typename Fn>
decltype(auto) visit_field(const FieldDescriptor& fd, Fn&& fn) {
  if (fd.kind == FieldKind::rationals) {
    return std::forward<Fn>(fn)(RationalField{});
  }
  return std::forward<Fn>(fn)(PrimeField{fd.prime});
}

// Command-line spelling: "rational" or a decimal prime.
inline FieldDescriptor parse_field_spec(std::string_view spec) {
  if (spec == "rational") return FieldDescriptor::rationals();
  std::uint64_t p = 0;
  for (char c : spec) {
    if (c < '0' || c > '9' || p > (std::uint64_t{1} << 57)) {
      throw std::invalid_argument("field must be 'rational' or a prime >= 5, got '" +
                                  std::string(spec) + "'");
    }
    p = p * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return FieldDescriptor::prime_field(p);
}

// Reduction Q -> F_p, defined only when p does not divide the denominator.
inline ModularInt reduce_mod_p(const Rational& x, const PrimeField& fp) {
  using Int = Rational::Int;
  const Int p(fp.modulus());
  Int den = x.denominator() % p;
  if (den == 0) {
    throw std::domain_error("cannot reduce " + x.str() + " mod " + std::to_string(fp.modulus()) +
                            ": denominator divisible by p");
  }
  Int num = x.numerator() % p;
  if (num < 0) num += p;
  ModularInt n{num.convert_to<std::uint64_t>(), fp.modulus()};
  ModularInt d{den.convert_to<std::uint64_t>(), fp.modulus()};
  return n * d.inverse();
}

}  // namespace cartier
