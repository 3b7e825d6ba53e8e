#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "cartier/coop.hpp"

namespace cartier {

// Koszul parity of a product of reduced degrees. Reduced degrees may be -1
// (degree-0 co-operations); the parity of the integer product is what counts.
constexpr bool koszul_odd(long long a, long long b) { return ((a * b) % 2) != 0; }

// Partial composition: substitute g into output slot `slot` of f,
//
//   f o_i g = (-1)^{i|g|} (1^i x g x 1^{|f|-i}) after f,   0 <= i <= |f|.
//
// The result has degree deg f + deg g - 1. Coefficients contract f's slot
// index against g's input index; the first i and last |f|-i output indices of
// f pass through unchanged.
template <field_context F>
CoOp<F> partial_compose(const CoOp<F>& f, const CoOp<F>& g, int slot,
                        const DegreeBound& bound = {}) {
  detail::check_same_space(f, g, "partial composition");
  const int m = f.degree();
  const int n = g.degree();
  if (m < 1) {
    throw std::invalid_argument("partial composition: a degree-0 co-operation has no slots");
  }
  if (slot < 0 || slot > m - 1) {
    throw std::invalid_argument("partial composition slot " + std::to_string(slot) +
                                " out of range: need 0 <= slot <= " + std::to_string(m - 1) +
                                " (= deg f - 1)");
  }
  const int d = f.dimension();
  const auto dd = static_cast<std::size_t>(d);
  CoOp<F> out(f.space(), m + n - 1, bound);
  const bool negate = koszul_odd(slot, g.reduced_degree());

  std::size_t pre = 1;
  for (int k = 0; k < slot; ++k) pre *= dd;
  std::size_t suf = 1;
  for (int k = 0; k < m - 1 - slot; ++k) suf *= dd;
  std::size_t g_out = 1;
  for (int k = 0; k < n; ++k) g_out *= dd;

  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t s = 0; s < dd; ++s) {
      for (std::size_t q = 0; q < suf; ++q) {
        for (std::size_t a = 0; a < dd; ++a) {
          const auto& fc = f.coeff(((p * dd + s) * suf + q) * dd + a);
          if (fc.is_zero()) continue;
          for (std::size_t c = 0; c < g_out; ++c) {
            const auto& gc = g.coeff(c * dd + s);
            if (gc.is_zero()) continue;
            const std::size_t idx = ((p * g_out + c) * suf + q) * dd + a;
            auto term = fc * gc;
            out.set_coeff(idx, negate ? out.coeff(idx) - term : out.coeff(idx) + term);
          }
        }
      }
    }
  }
  return out;
}

// Total composition: the slot sum f . g = sum_{i=0}^{|f|} f o_i g, of degree
// deg f + |g|.
template <field_context F>
CoOp<F> total_compose(const CoOp<F>& f, const CoOp<F>& g, const DegreeBound& bound = {}) {
  detail::check_same_space(f, g, "total composition");
  if (f.degree() < 1) {
    throw std::invalid_argument("total composition: a degree-0 co-operation has no slots");
  }
  CoOp<F> acc(f.space(), f.degree() + g.degree() - 1, bound);
  for (int i = 0; i <= f.degree() - 1; ++i) acc = add(acc, partial_compose(f, g, i, bound));
  return acc;
}

// Gerstenhaber bracket [f,g] = f.g - (-1)^{|f||g|} g.f, graded antisymmetric
// by construction.
template <field_context F>
CoOp<F> bracket(const CoOp<F>& f, const CoOp<F>& g, const DegreeBound& bound = {}) {
  if (f.degree() < 1 || g.degree() < 1) {
    throw std::invalid_argument("bracket requires degree >= 1 on both arguments, got " +
                                std::to_string(f.degree()) + " and " + std::to_string(g.degree()));
  }
  CoOp<F> fg = total_compose(f, g, bound);
  CoOp<F> gf = total_compose(g, f, bound);
  return koszul_odd(f.reduced_degree(), g.reduced_degree()) ? add(fg, gf) : sub(fg, gf);
}

}  // namespace cartier
