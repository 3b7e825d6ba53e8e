#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "cartier/cogravity.hpp"
#include "cartier/coop.hpp"
#include "cartier/fields.hpp"

namespace cartier {

// All randomness flows through mt19937_64 with hand-rolled bounded sampling,
// so the same seed produces the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty sampling range");
    return next() % n;
  }

  // Inclusive integer range.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step keyed by the stream index
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Probability encoded in 32 fractional bits: an entry is kept when a uniform
// 32-bit draw falls below the threshold, so density 1.0 keeps everything.
inline std::uint64_t density_bits(double density) {
  if (density <= 0.0) return 0;
  if (density >= 1.0) return std::uint64_t{1} << 32;
  return static_cast<std::uint64_t>(density * 4294967296.0);
}

// Small nonzero scalar: numerator in [-9,9]\{0} over denominator in [1,9] for
// the rationals, a uniform nonzero residue for a prime field. Small values
// keep fraction growth readable through composition chains.
template <field_context F>
typename F::Scalar random_nonzero_scalar(const F& field, Rng& rng) {
  if constexpr (std::same_as<F, RationalField>) {
    const auto num = static_cast<long long>(rng.below(9)) + 1;
    const bool neg = rng.below(2) == 1;
    const auto den = static_cast<long long>(rng.below(9)) + 1;
    return Rational(Rational::Int(neg ? -num : num), Rational::Int(den));
  } else {
    return field.from_int(static_cast<std::int64_t>(rng.below(field.modulus() - 1)) + 1);
  }
}

template <field_context F>
typename F::Scalar random_scalar(const F& field, Rng& rng) {
  if (rng.below(4) == 0) return field.zero();
  return random_nonzero_scalar(field, rng);
}

template <field_context F>
CoOp<F> random_coop(const ModuleSpace<F>& space, int degree, std::uint64_t density,
                    Rng& rng, const DegreeBound& bound = {}) {
  CoOp<F> f(space, degree, bound);
  for (std::size_t k = 0; k < f.coeff_count(); ++k) {
    if (rng.below(std::uint64_t{1} << 32) >= density) continue;
    f.set_coeff(k, random_nonzero_scalar(space.field, rng));
  }
  return f;
}

template <field_context F>
Tensor<F> random_tensor(const F& field, int dimension, int rank, Rng& rng,
                        const DegreeBound& bound = {}) {
  Tensor<F> t(field, dimension, rank, bound);
  for (std::size_t k = 0; k < t.size(); ++k) t.set_coeff(k, random_scalar(field, rng));
  return t;
}

// Random symmetric invertible metric; redraws until the inverse exists.
template <field_context F>
Metric<F> random_metric(const F& field, int dimension, Rng& rng) {
  const auto d = static_cast<std::size_t>(dimension);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Tensor<F> g(field, dimension, 2);
    for (std::size_t i = 0; i < d; ++i) {
      g.set_coeff(i * d + i, random_nonzero_scalar(field, rng));
      for (std::size_t j = i + 1; j < d; ++j) {
        auto v = random_scalar(field, rng);
        g.set_coeff(i * d + j, v);
        g.set_coeff(j * d + i, v);
      }
    }
    try {
      return make_metric(std::move(g));
    } catch (const std::domain_error&) {
      // singular draw, try again
    }
  }
  throw std::logic_error("no invertible metric found after 200 draws");
}

}  // namespace cartier
