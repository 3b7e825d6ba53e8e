#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartier/deformation.hpp"
#include "cartier/matrix.hpp"

namespace cartier {

struct MatrixGuard {
  std::size_t max_entries = std::size_t{1} << 24;
};

// Linearization of the coboundary d_n : C^n -> C^{n+1} in the elementary
// co-operation basis; column order is the co-operation flattening order.
template <field_context F>
struct CoboundaryMatrix {
  int degree_from = 0;  // n
  DenseMatrix<F> matrix;  // d^(n+2) rows, d^(n+1) columns
};

template <field_context F>
CoboundaryMatrix<F> coboundary_matrix(const CoOp<F>& delta0, int n,
                                      const MatrixGuard& guard = {},
                                      const DegreeBound& bound = {}) {
  if (delta0.degree() != 2) {
    throw std::invalid_argument("coboundary matrix requires a degree-2 reference, got degree " +
                                std::to_string(delta0.degree()));
  }
  if (n < 0) throw std::invalid_argument("coboundary matrix degree must be >= 0");
  const int d = delta0.dimension();
  const std::size_t cols = detail::checked_pow(d, n + 1, bound.max_coeff_count, "co-operation coefficient");
  const std::size_t rows = detail::checked_pow(d, n + 2, bound.max_coeff_count, "co-operation coefficient");
  if (cols != 0 && rows > guard.max_entries / cols) {
    throw std::length_error("matrix guard exceeded: " + std::to_string(rows) + " x " +
                            std::to_string(cols) + " entries for dimension " + std::to_string(d) +
                            ", degree " + std::to_string(n) + " (limit " +
                            std::to_string(guard.max_entries) + ")");
  }

  DenseMatrix<F> m(rows, cols, delta0.field().zero());
  for (std::size_t k = 0; k < cols; ++k) {
    CoOp<F> basis(delta0.space(), n, bound);
    basis.set_coeff(k, delta0.field().one());
    CoOp<F> image = coboundary(delta0, basis, bound);
    for (std::size_t r = 0; r < rows; ++r) m.at(r, k) = image.coeff(r);
  }
  return {n, std::move(m)};
}

template <field_context F>
std::size_t exact_rank(const CoboundaryMatrix<F>& m,
                       PivotOrder order = PivotOrder::first_nonzero) {
  return exact_rank(m.matrix, order);
}

struct CohomologyRow {
  int n = 0;
  std::size_t dim_cochains = 0;  // dim C^n = d^(n+1)
  std::size_t rank = 0;          // rank d_n
  std::size_t kernel = 0;        // dim ker d_n
  std::size_t h = 0;             // dim H^n = dim ker d_n - rank d_{n-1}
};

struct CohomologyReport {
  FieldDescriptor field;
  int dimension = 0;
  std::vector<CohomologyRow> rows;
};

// Cohomology dimensions of the pre-coboundary of a coassociative delta0, for
// degrees 0..max_n. H^0 is ker d_0 (there is no incoming differential).
template <field_context F>
CohomologyReport cohomology_dimensions(const CoOp<F>& delta0, int max_n,
                                       const MatrixGuard& guard = {},
                                       const DegreeBound& bound = {},
                                       PivotOrder order = PivotOrder::first_nonzero) {
  if (max_n < 0) throw std::invalid_argument("max degree must be >= 0");
  const CoOp<F> a0 = associator(delta0, bound);
  if (const auto k = first_nonzero(a0); k >= 0) {
    const auto flat = static_cast<std::size_t>(k);
    throw std::domain_error("cohomology requires a coassociative comultiplication; associator "
                            "entry " +
                            describe_entry(flat, a0.dimension(), a0.degree()) + " is " +
                            a0.coeff(flat).str());
  }

  CohomologyReport report{delta0.field().descriptor(), delta0.dimension(), {}};
  std::size_t prev_rank = 0;
  for (int n = 0; n <= max_n; ++n) {
    const auto mat = coboundary_matrix(delta0, n, guard, bound);
    const std::size_t dim_c = mat.matrix.cols;
    const std::size_t rank = exact_rank(mat, order);
    const std::size_t kernel = dim_c - rank;
    if (kernel < prev_rank) {
      throw std::logic_error("cohomology dimension would be negative at degree " +
                             std::to_string(n));
    }
    report.rows.push_back({n, dim_c, rank, kernel, kernel - prev_rank});
    prev_rank = rank;
  }
  return report;
}

}  // namespace cartier
