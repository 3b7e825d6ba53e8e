#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cartier/prime_field.hpp"
#include "cartier/rational.hpp"
#include "cartier/tensor.hpp"

namespace cartier {

template <field_context F>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<typename F::Scalar> a;

  DenseMatrix(std::size_t r, std::size_t c, typename F::Scalar fill)
      : rows(r), cols(c), a(r * c, std::move(fill)) {}

  typename F::Scalar& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const typename F::Scalar& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

template <field_context F>
bool is_zero(const DenseMatrix<F>& m) {
  for (const auto& x : m.a) {
    if (!x.is_zero()) return false;
  }
  return true;
}

template <field_context F>
DenseMatrix<F> multiply(const DenseMatrix<F>& a, const DenseMatrix<F>& b, const F& field) {
  if (a.cols != b.rows) {
    throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.cols) +
                                " columns vs " + std::to_string(b.rows) + " rows");
  }
  DenseMatrix<F> out(a.rows, b.cols, field.zero());
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const auto& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        const auto& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        out.at(i, j) = out.at(i, j) + aik * bkj;
      }
    }
  }
  return out;
}

// Pivot-row selection; rank must come out the same either way, which the test
// suite uses as a determinism check on the elimination.
enum class PivotOrder { first_nonzero, largest_entry };

// Rank over Q by integer-preserving (fraction-free) elimination: denominators
// are cleared per column (column scaling keeps rank), then one-step Bareiss
// elimination runs over the integers. Divisions are checked exact.
inline std::size_t exact_rank(const DenseMatrix<RationalField>& m,
                              PivotOrder order = PivotOrder::first_nonzero) {
  using Int = boost::multiprecision::cpp_int;
  const std::size_t rows = m.rows, cols = m.cols;
  if (rows == 0 || cols == 0) return 0;

  std::vector<Int> a(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Int l = 1;
    for (std::size_t r = 0; r < rows; ++r) {
      l = boost::multiprecision::lcm(l, m.at(r, c).denominator());
    }
    for (std::size_t r = 0; r < rows; ++r) {
      a[r * cols + c] = m.at(r, c).numerator() * (l / m.at(r, c).denominator());
    }
  }

  Int prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r * cols + c] == 0) continue;
      if (pivot == rows) {
        pivot = r;
        if (order == PivotOrder::first_nonzero) break;
      } else if (abs(a[r * cols + c]) > abs(a[pivot * cols + c])) {
        pivot = r;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    const Int p = a[rank * cols + c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Int f = a[r * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int num = p * a[r * cols + j] - f * a[rank * cols + j];
        Int q, rem;
        boost::multiprecision::divide_qr(num, prev, q, rem);
        if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
        a[r * cols + j] = std::move(q);
      }
      a[r * cols + c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

// Rank over F_p by plain row reduction; an independent elimination route used
// to cross-check the fraction-free one.
inline std::size_t exact_rank(const DenseMatrix<PrimeField>& m,
                              PivotOrder order = PivotOrder::first_nonzero) {
  const std::size_t rows = m.rows, cols = m.cols;
  if (rows == 0 || cols == 0) return 0;
  std::vector<ModularInt> a = m.a;

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r * cols + c].is_zero()) continue;
      if (pivot == rows) {
        pivot = r;
        if (order == PivotOrder::first_nonzero) break;
      } else if (a[r * cols + c].value() > a[pivot * cols + c].value()) {
        pivot = r;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    const ModularInt inv = a[rank * cols + c].inverse();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r * cols + c].is_zero()) continue;
      const ModularInt f = a[r * cols + c] * inv;
      for (std::size_t j = c; j < cols; ++j) {
        a[r * cols + j] = a[r * cols + j] - f * a[rank * cols + j];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace cartier
