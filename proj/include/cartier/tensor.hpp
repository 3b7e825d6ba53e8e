#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cartier/field.hpp"

namespace cartier {

// Hard guard on allocated tensors: a co-operation of degree n over a module of
// dimension d stores d^(n+1) dense coefficients.
struct DegreeBound {
  int max_degree = 32;
  std::size_t max_coeff_count = std::size_t{1} << 20;
};

namespace detail {

inline std::size_t checked_pow(int base, int exp, std::size_t limit, const char* what) {
  const auto b = static_cast<std::size_t>(base);
  std::size_t acc = 1;
  for (int k = 0; k < exp; ++k) {
    if (acc > limit / b) {
      throw std::length_error(std::string(what) + " guard exceeded: " + std::to_string(base) +
                              "^" + std::to_string(exp) + " entries requested, limit " +
                              std::to_string(limit));
    }
    acc *= b;
  }
  if (acc > limit) {
    throw std::length_error(std::string(what) + " guard exceeded: " + std::to_string(acc) +
                            " entries requested, limit " + std::to_string(limit));
  }
  return acc;
}

}  // namespace detail

// Odometer step over multi-indices in row-major order (first entry slowest);
// returns false once the all-zero index wraps around.
inline bool next_index(std::span<int> idx, int dimension) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dimension) return true;
    idx[k] = 0;
  }
  return false;
}

// Dense exact tensor with `rank` axes of equal extent `dimension`, flattened
// row-major with the first axis slowest. Rank 0 is a single scalar.
template <field_context F>
class Tensor {
 public:
  using Scalar = typename F::Scalar;

  Tensor(F field, int dimension, int rank, const DegreeBound& bound = {})
      : field_(std::move(field)), dimension_(dimension), rank_(rank) {
    if (dimension < 1) {
      throw std::invalid_argument("tensor dimension must be >= 1, got " +
                                  std::to_string(dimension));
    }
    if (rank < 0) throw std::invalid_argument("tensor rank must be >= 0");
    c_.assign(detail::checked_pow(dimension, rank, bound.max_coeff_count, "tensor"),
              field_.zero());
  }

  const F& field() const { return field_; }
  int dimension() const { return dimension_; }
  int rank() const { return rank_; }
  std::size_t size() const { return c_.size(); }

  const Scalar& coeff(std::size_t flat) const { return c_[flat]; }
  void set_coeff(std::size_t flat, Scalar v) { c_[flat] = std::move(v); }

  std::size_t flat_index(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank_) {
      throw std::invalid_argument("tensor index has " + std::to_string(idx.size()) +
                                  " entries, rank is " + std::to_string(rank_));
    }
    std::size_t flat = 0;
    for (int k : idx) {
      if (k < 0 || k >= dimension_) {
        throw std::out_of_range("tensor index entry " + std::to_string(k) +
                                " outside [0, " + std::to_string(dimension_) + ")");
      }
      flat = flat * static_cast<std::size_t>(dimension_) + static_cast<std::size_t>(k);
    }
    return flat;
  }

  const Scalar& at(std::span<const int> idx) const { return c_[flat_index(idx)]; }
  void set_at(std::span<const int> idx, Scalar v) { c_[flat_index(idx)] = std::move(v); }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  F field_;
  int dimension_;
  int rank_;
  std::vector<Scalar> c_;
};

template <field_context F>
bool is_zero(const Tensor<F>& t) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!t.coeff(k).is_zero()) return false;
  }
  return true;
}

namespace detail {

template <field_context F>
void check_tensor_compatible(const Tensor<F>& a, const Tensor<F>& b, const char* what) {
  if (a.rank() != b.rank() || a.dimension() != b.dimension() || !(a.field() == b.field())) {
    throw std::invalid_argument(std::string(what) + ": tensor shape or field mismatch (rank " +
                                std::to_string(a.rank()) + " dim " + std::to_string(a.dimension()) +
                                " vs rank " + std::to_string(b.rank()) + " dim " +
                                std::to_string(b.dimension()) + ")");
  }
}

}  // namespace detail

template <field_context F>
Tensor<F> add(const Tensor<F>& a, const Tensor<F>& b) {
  detail::check_tensor_compatible(a, b, "tensor addition");
  Tensor<F> out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.set_coeff(k, a.coeff(k) + b.coeff(k));
  return out;
}

template <field_context F>
Tensor<F> sub(const Tensor<F>& a, const Tensor<F>& b) {
  detail::check_tensor_compatible(a, b, "tensor subtraction");
  Tensor<F> out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.set_coeff(k, a.coeff(k) - b.coeff(k));
  return out;
}

template <field_context F>
Tensor<F> scale(const typename F::Scalar& c, const Tensor<F>& t) {
  Tensor<F> out = t;
  for (std::size_t k = 0; k < out.size(); ++k) out.set_coeff(k, c * t.coeff(k));
  return out;
}

}  // namespace cartier
