#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cartier/tensor.hpp"

namespace cartier {

template <field_context F>
struct ModuleSpace {
  F field;
  int dimension;

  ModuleSpace(F f, int d) : field(std::move(f)), dimension(d) {
    if (d < 1) {
      throw std::invalid_argument("module dimension must be >= 1, got " + std::to_string(d));
    }
  }

  friend bool operator==(const ModuleSpace&, const ModuleSpace&) = default;
};

// A homogeneous co-operation f : L -> L^(tensor n) over a free module L of
// dimension d, stored as the dense coefficient tensor f^{j1..jn}_i with
//
//   f(e^i) = sum f^{j1..jn}_i  e^{j1} x ... x e^{jn}.
//
// Flattening convention: the output multi-index (j1,..,jn) is row-major with
// j1 slowest, and the input index i is the last (fastest) axis, so
// flat = ((j1*d + j2)*d + ... + jn)*d + i with 0-based indices. Degree 0 is a
// functional L -> K: one scalar per input index.
template <field_context F>
class CoOp {
 public:
  using Scalar = typename F::Scalar;

  CoOp(ModuleSpace<F> space, int degree, const DegreeBound& bound = {})
      : space_(std::move(space)), degree_(degree) {
    if (degree < 0) {
      throw std::invalid_argument("co-operation degree must be >= 0, got " +
                                  std::to_string(degree));
    }
    if (degree > bound.max_degree) {
      throw std::length_error("degree guard exceeded: degree " + std::to_string(degree) +
                              ", limit " + std::to_string(bound.max_degree));
    }
    c_.assign(detail::checked_pow(space_.dimension, degree + 1, bound.max_coeff_count,
                                  "co-operation coefficient"),
              space_.field.zero());
  }

  const ModuleSpace<F>& space() const { return space_; }
  const F& field() const { return space_.field; }
  int dimension() const { return space_.dimension; }
  int degree() const { return degree_; }
  // Reduced degree |f| = deg f - 1 governs every sign; it is -1 in degree 0.
  int reduced_degree() const { return degree_ - 1; }

  std::size_t coeff_count() const { return c_.size(); }
  const Scalar& coeff(std::size_t flat) const { return c_[flat]; }
  void set_coeff(std::size_t flat, Scalar v) { c_[flat] = std::move(v); }

  std::size_t flat_index(std::span<const int> out, int in) const {
    if (static_cast<int>(out.size()) != degree_) {
      throw std::invalid_argument("output index tuple has " + std::to_string(out.size()) +
                                  " entries, degree is " + std::to_string(degree_));
    }
    std::size_t flat = 0;
    for (int j : out) {
      if (j < 0 || j >= space_.dimension) {
        throw std::out_of_range("basis index " + std::to_string(j) + " outside [0, " +
                                std::to_string(space_.dimension) + ")");
      }
      flat = flat * static_cast<std::size_t>(space_.dimension) + static_cast<std::size_t>(j);
    }
    if (in < 0 || in >= space_.dimension) {
      throw std::out_of_range("input index " + std::to_string(in) + " outside [0, " +
                              std::to_string(space_.dimension) + ")");
    }
    return flat * static_cast<std::size_t>(space_.dimension) + static_cast<std::size_t>(in);
  }

  const Scalar& at(std::span<const int> out, int in) const { return c_[flat_index(out, in)]; }
  void set_at(std::span<const int> out, int in, Scalar v) {
    c_[flat_index(out, in)] = std::move(v);
  }

  friend bool operator==(const CoOp&, const CoOp&) = default;

 private:
  ModuleSpace<F> space_;
  int degree_;
  std::vector<Scalar> c_;
};

// Decodes a flat coefficient position into (j1,..,jn, i), all 0-based, with
// the input index last.
inline std::vector<int> coop_indices(std::size_t flat, int dimension, int degree) {
  std::vector<int> idx(static_cast<std::size_t>(degree) + 1, 0);
  const auto d = static_cast<std::size_t>(dimension);
  for (std::size_t k = idx.size(); k-- > 0;) {
    idx[k] = static_cast<int>(flat % d);
    flat /= d;
  }
  return idx;
}

// "out=(j1,..,jn), in=i" with 1-based indices, for diagnostics.
inline std::string describe_entry(std::size_t flat, int dimension, int degree) {
  const auto idx = coop_indices(flat, dimension, degree);
  std::string s = "out=(";
  for (int k = 0; k < degree; ++k) {
    if (k > 0) s += ",";
    s += std::to_string(idx[static_cast<std::size_t>(k)] + 1);
  }
  s += "), in=" + std::to_string(idx.back() + 1);
  return s;
}

namespace detail {

template <field_context F>
void check_same_space(const CoOp<F>& a, const CoOp<F>& b, const char* what) {
  if (!(a.space() == b.space())) {
    throw std::invalid_argument(std::string(what) + ": space mismatch (dimension " +
                                std::to_string(a.dimension()) + " over " +
                                a.field().descriptor().str() + " vs dimension " +
                                std::to_string(b.dimension()) + " over " +
                                b.field().descriptor().str() + ")");
  }
}

}  // namespace detail

// The unit co-operation: the identity map of L as an element of degree 1.
template <field_context F>
CoOp<F> identity_coop(const ModuleSpace<F>& space, const DegreeBound& bound = {}) {
  CoOp<F> out(space, 1, bound);
  const auto d = static_cast<std::size_t>(space.dimension);
  for (std::size_t i = 0; i < d; ++i) out.set_coeff(i * d + i, space.field.one());
  return out;
}

template <field_context F>
CoOp<F> add(const CoOp<F>& a, const CoOp<F>& b) {
  detail::check_same_space(a, b, "co-operation addition");
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("co-operation addition: degree mismatch (" +
                                std::to_string(a.degree()) + " vs " + std::to_string(b.degree()) +
                                ")");
  }
  CoOp<F> out = a;
  for (std::size_t k = 0; k < out.coeff_count(); ++k) out.set_coeff(k, a.coeff(k) + b.coeff(k));
  return out;
}

template <field_context F>
CoOp<F> sub(const CoOp<F>& a, const CoOp<F>& b) {
  detail::check_same_space(a, b, "co-operation subtraction");
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("co-operation subtraction: degree mismatch (" +
                                std::to_string(a.degree()) + " vs " + std::to_string(b.degree()) +
                                ")");
  }
  CoOp<F> out = a;
  for (std::size_t k = 0; k < out.coeff_count(); ++k) out.set_coeff(k, a.coeff(k) - b.coeff(k));
  return out;
}

template <field_context F>
CoOp<F> scale(const typename F::Scalar& c, const CoOp<F>& f) {
  CoOp<F> out = f;
  for (std::size_t k = 0; k < out.coeff_count(); ++k) out.set_coeff(k, c * f.coeff(k));
  return out;
}

template <field_context F>
bool is_zero(const CoOp<F>& f) {
  for (std::size_t k = 0; k < f.coeff_count(); ++k) {
    if (!f.coeff(k).is_zero()) return false;
  }
  return true;
}

// First position where two co-operations of equal shape differ, if any.
template <field_context F>
std::ptrdiff_t first_difference(const CoOp<F>& a, const CoOp<F>& b) {
  for (std::size_t k = 0; k < a.coeff_count(); ++k) {
    if (!(a.coeff(k) == b.coeff(k))) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

template <field_context F>
std::ptrdiff_t first_nonzero(const CoOp<F>& f) {
  for (std::size_t k = 0; k < f.coeff_count(); ++k) {
    if (!f.coeff(k).is_zero()) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

// Multilinear evaluation on a coefficient vector: sum_i v_i f(e^i) as a
// rank-(deg f) tensor.
template <field_context F>
Tensor<F> apply(const CoOp<F>& f, std::span<const typename F::Scalar> v,
                const DegreeBound& bound = {}) {
  const auto d = static_cast<std::size_t>(f.dimension());
  if (v.size() != d) {
    throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                " does not match module dimension " + std::to_string(d));
  }
  Tensor<F> out(f.field(), f.dimension(), f.degree(), bound);
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto acc = f.field().zero();
    for (std::size_t i = 0; i < d; ++i) acc = acc + v[i] * f.coeff(c * d + i);
    out.set_coeff(c, std::move(acc));
  }
  return out;
}

}  // namespace cartier
