#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "cartier/deformation.hpp"

namespace cartier {

namespace detail {

template <field_context F>
CoOp<F> checked_coassociative(CoOp<F> delta, const char* name) {
  if (!is_zero(associator(delta))) {
    throw std::logic_error(std::string(name) + ": constructed comultiplication fails the "
                                               "coassociativity check");
  }
  return delta;
}

}  // namespace detail

// Group-like comultiplication delta(e^i) = e^i x e^i.
template <field_context F>
CoOp<F> comult_group_like(const ModuleSpace<F>& space, const DegreeBound& bound = {}) {
  CoOp<F> delta(space, 2, bound);
  const auto d = static_cast<std::size_t>(space.dimension);
  for (std::size_t i = 0; i < d; ++i) {
    delta.set_coeff((i * d + i) * d + i, space.field.one());
  }
  return detail::checked_coassociative(std::move(delta), "group-like comultiplication");
}

// Weighted group-like delta(e^i) = w_i e^i x e^i; coassociative for any
// weights.
template <field_context F>
CoOp<F> comult_scaled_group_like(const ModuleSpace<F>& space,
                                 std::span<const typename F::Scalar> weights,
                                 const DegreeBound& bound = {}) {
  const auto d = static_cast<std::size_t>(space.dimension);
  if (weights.size() != d) {
    throw std::invalid_argument("scaled group-like comultiplication needs one weight per basis "
                                "vector");
  }
  CoOp<F> delta(space, 2, bound);
  for (std::size_t i = 0; i < d; ++i) {
    delta.set_coeff((i * d + i) * d + i, weights[i]);
  }
  return detail::checked_coassociative(std::move(delta), "scaled group-like comultiplication");
}

// Dual of the truncated polynomial algebra K[x]/(x^2) on basis {1, x}:
//   delta(e^1) = e^1 x e^1,  delta(e^2) = e^1 x e^2 + e^2 x e^1.
template <field_context F>
CoOp<F> comult_dual_truncated_poly(const ModuleSpace<F>& space, const DegreeBound& bound = {}) {
  if (space.dimension != 2) {
    throw std::invalid_argument("dual truncated-polynomial comultiplication requires dimension 2");
  }
  CoOp<F> delta(space, 2, bound);
  const auto one = space.field.one();
  delta.set_coeff((0 * 2 + 0) * 2 + 0, one);  // e^1 x e^1 <- e^1
  delta.set_coeff((0 * 2 + 1) * 2 + 1, one);  // e^1 x e^2 <- e^2
  delta.set_coeff((1 * 2 + 0) * 2 + 1, one);  // e^2 x e^1 <- e^2
  return detail::checked_coassociative(std::move(delta), "dual truncated-polynomial");
}

// Dual of the group algebra K[Z/2] on basis {1, g}:
//   delta(e^1) = e^1 x e^1 + e^2 x e^2,  delta(e^2) = e^1 x e^2 + e^2 x e^1.
template <field_context F>
CoOp<F> comult_dual_z2_group_algebra(const ModuleSpace<F>& space, const DegreeBound& bound = {}) {
  if (space.dimension != 2) {
    throw std::invalid_argument("dual Z/2 group-algebra comultiplication requires dimension 2");
  }
  CoOp<F> delta(space, 2, bound);
  const auto one = space.field.one();
  delta.set_coeff((0 * 2 + 0) * 2 + 0, one);
  delta.set_coeff((1 * 2 + 1) * 2 + 0, one);
  delta.set_coeff((0 * 2 + 1) * 2 + 1, one);
  delta.set_coeff((1 * 2 + 0) * 2 + 1, one);
  return detail::checked_coassociative(std::move(delta), "dual Z/2 group algebra");
}

}  // namespace cartier
