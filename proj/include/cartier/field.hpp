#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cartier {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin, valid for the full 64-bit range.
inline bool is_prime_u64(std::uint64_t n) {
  constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t p : small) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : small) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

enum class FieldKind { rationals, prime };

// Runtime description of the scalar field. Prime moduli 2 and 3 are rejected:
// the calculus divides by 2 and relies on 3-fold cancellations.
struct FieldDescriptor {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t prime = 0;  // meaningful only when kind == FieldKind::prime

  static FieldDescriptor rationals() { return {}; }

  static FieldDescriptor prime_field(std::uint64_t p) {
    if (p < 5 || !is_prime_u64(p)) {
      throw std::invalid_argument("prime field modulus must be a prime >= 5, got " +
                                  std::to_string(p));
    }
    return {FieldKind::prime, p};
  }

  std::string str() const {
    return kind == FieldKind::rationals ? std::string("rational")
                                        : "prime " + std::to_string(prime);
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

// A field context mints, parses and describes exact scalars. Scalars are
// immutable values; every operation is pure and exact, so equality of
// canonical forms is structural equality.
template <typename F>
concept field_context = requires(const F f, const typename F::Scalar a,
                                 const typename F::Scalar b, std::string_view text) {
  { f.zero() } -> std::same_as<typename F::Scalar>;
  { f.one() } -> std::same_as<typename F::Scalar>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::Scalar>;
  { f.parse(text) } -> std::same_as<typename F::Scalar>;
  { f.descriptor() } -> std::same_as<FieldDescriptor>;
  { a + b } -> std::same_as<typename F::Scalar>;
  { a - b } -> std::same_as<typename F::Scalar>;
  { a * b } -> std::same_as<typename F::Scalar>;
  { -a } -> std::same_as<typename F::Scalar>;
  { a.inverse() } -> std::same_as<typename F::Scalar>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::same_as<std::string>;
  { a == b } -> std::same_as<bool>;
  { f == f } -> std::same_as<bool>;
};

}  // namespace cartier
