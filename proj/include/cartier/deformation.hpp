#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "cartier/compose.hpp"

namespace cartier {

// Right adjoint action f -> [f, reference], the pre-coboundary operator of a
// fixed structure co-operation. Degree-0 cochains are admitted: the slot sum
// f . reference is empty there, leaving only the signed substitution term
// -(-1)^{|f||ref|} reference . f, which is the unique extension compatible
// with the composition relations (and the one the cohomology matrices in
// degree 0 are built from).
template <field_context F>
CoOp<F> coboundary(const CoOp<F>& reference, const CoOp<F>& f, const DegreeBound& bound = {}) {
  if (reference.degree() < 1) {
    throw std::invalid_argument("coboundary reference must have degree >= 1, got " +
                                std::to_string(reference.degree()));
  }
  if (f.degree() >= 1) return bracket(f, reference, bound);
  CoOp<F> rf = total_compose(reference, f, bound);
  return koszul_odd(f.reduced_degree(), reference.reduced_degree())
             ? rf
             : scale(-f.field().one(), rf);
}

// Associator of a degree-2 co-operation: A = delta . delta = 1/2 [delta, delta].
template <field_context F>
CoOp<F> associator(const CoOp<F>& delta, const DegreeBound& bound = {}) {
  if (delta.degree() != 2) {
    throw std::invalid_argument("associator requires a degree-2 co-operation, got degree " +
                                std::to_string(delta.degree()));
  }
  return total_compose(delta, delta, bound);
}

// Tensor-level coassociator (delta x 1 - 1 x delta) after delta, computed by a
// direct contraction that shares no code with the slot compositions; kept as
// an independent cross-check of associator().
template <field_context F>
CoOp<F> coassociator_direct(const CoOp<F>& delta, const DegreeBound& bound = {}) {
  if (delta.degree() != 2) {
    throw std::invalid_argument("coassociator requires a degree-2 co-operation, got degree " +
                                std::to_string(delta.degree()));
  }
  const auto d = static_cast<std::size_t>(delta.dimension());
  CoOp<F> out(delta.space(), 3, bound);
  for (std::size_t c1 = 0; c1 < d; ++c1) {
    for (std::size_t c2 = 0; c2 < d; ++c2) {
      for (std::size_t c3 = 0; c3 < d; ++c3) {
        for (std::size_t a = 0; a < d; ++a) {
          auto acc = delta.field().zero();
          for (std::size_t s = 0; s < d; ++s) {
            acc = acc + delta.coeff((c1 * d + c2) * d + s) * delta.coeff((s * d + c3) * d + a);
            acc = acc - delta.coeff((c2 * d + c3) * d + s) * delta.coeff((c1 * d + s) * d + a);
          }
          out.set_coeff(((c1 * d + c2) * d + c3) * d + a, std::move(acc));
        }
      }
    }
  }
  return out;
}

// A deformation pair: reference comultiplication delta0, deformed
// comultiplication delta (both degree 2), with the derived data
// omega = delta - delta0 and the associators assoc = delta.delta,
// assoc0 = delta0.delta0. Construction cross-checks the associators against
// the half-bracket route, which requires an invertible 2 in the field.
template <field_context F>
struct DeformationContext {
  CoOp<F> delta0;
  CoOp<F> delta;
  CoOp<F> omega;
  CoOp<F> assoc0;
  CoOp<F> assoc;

  static DeformationContext make(CoOp<F> delta0, CoOp<F> delta, const DegreeBound& bound = {}) {
    detail::check_same_space(delta0, delta, "deformation context");
    if (delta0.degree() != 2 || delta.degree() != 2) {
      throw std::invalid_argument("deformation context requires degree-2 co-operations, got " +
                                  std::to_string(delta0.degree()) + " and " +
                                  std::to_string(delta.degree()));
    }
    const auto half = delta0.field().from_int(2).inverse();
    CoOp<F> omega = sub(delta, delta0);
    CoOp<F> a0 = associator(delta0, bound);
    CoOp<F> a = associator(delta, bound);
    if (!(scale(half, bracket(delta0, delta0, bound)) == a0) ||
        !(scale(half, bracket(delta, delta, bound)) == a)) {
      throw std::logic_error("associator disagrees with the half-bracket route");
    }
    return DeformationContext{std::move(delta0), std::move(delta), std::move(omega),
                              std::move(a0), std::move(a)};
  }
};

// (A - A0) - (d omega + 1/2 [omega, omega]); identically zero.
template <field_context F>
CoOp<F> deformation_residual(const DeformationContext<F>& ctx, const DegreeBound& bound = {}) {
  const auto half = ctx.delta0.field().from_int(2).inverse();
  CoOp<F> rhs = add(coboundary(ctx.delta0, ctx.omega, bound),
                    scale(half, bracket(ctx.omega, ctx.omega, bound)));
  return sub(sub(ctx.assoc, ctx.assoc0), rhs);
}

// d(A - A0) - d^2 omega + [A - A0, omega]; identically zero.
template <field_context F>
CoOp<F> prolongation_residual(const DeformationContext<F>& ctx, const DegreeBound& bound = {}) {
  CoOp<F> diff = sub(ctx.assoc, ctx.assoc0);
  CoOp<F> d_diff = coboundary(ctx.delta0, diff, bound);
  CoOp<F> dd_omega =
      coboundary(ctx.delta0, coboundary(ctx.delta0, ctx.omega, bound), bound);
  return add(sub(d_diff, dd_omega), bracket(diff, ctx.omega, bound));
}

// d_{delta0}^2 f - [f, delta0 . delta0]; identically zero since |delta0| is odd.
template <field_context F>
CoOp<F> d_square_residual(const CoOp<F>& delta0, const CoOp<F>& f,
                          const DegreeBound& bound = {}) {
  if (delta0.degree() != 2) {
    throw std::invalid_argument("coboundary square requires a degree-2 reference, got degree " +
                                std::to_string(delta0.degree()));
  }
  CoOp<F> dd = coboundary(delta0, coboundary(delta0, f, bound), bound);
  return sub(dd, coboundary(associator(delta0, bound), f, bound));
}

// d A - [omega, A] under the coassociativity constraint A0 = 0; contexts with
// A0 != 0 are rejected because the identity is derived only there.
template <field_context F>
CoOp<F> bianchi_residual(const DeformationContext<F>& ctx, const DegreeBound& bound = {}) {
  if (const auto k = first_nonzero(ctx.assoc0); k >= 0) {
    const auto flat = static_cast<std::size_t>(k);
    throw std::domain_error(
        "Bianchi identity requires a coassociative reference (A0 = 0); A0 entry " +
        describe_entry(flat, ctx.assoc0.dimension(), ctx.assoc0.degree()) + " is " +
        ctx.assoc0.coeff(flat).str());
  }
  return sub(coboundary(ctx.delta0, ctx.assoc, bound), bracket(ctx.omega, ctx.assoc, bound));
}

// Covariant derivative nabla f = [f, delta] = d f + [f, omega].
template <field_context F>
CoOp<F> covariant_derivative(const DeformationContext<F>& ctx, const CoOp<F>& f,
                             const DegreeBound& bound = {}) {
  return coboundary(ctx.delta, f, bound);
}

// nabla^2 f - [f, A]; identically zero.
template <field_context F>
CoOp<F> nabla_square_residual(const DeformationContext<F>& ctx, const CoOp<F>& f,
                              const DegreeBound& bound = {}) {
  CoOp<F> nn = covariant_derivative(ctx, covariant_derivative(ctx, f, bound), bound);
  return sub(nn, coboundary(ctx.assoc, f, bound));
}

// d[f,g] - (-1)^{|ref||g|}[d f, g] - [f, d g]; identically zero.
template <field_context F>
CoOp<F> derivation_property_residual(const CoOp<F>& reference, const CoOp<F>& f,
                                     const CoOp<F>& g, const DegreeBound& bound = {}) {
  CoOp<F> lhs = coboundary(reference, bracket(f, g, bound), bound);
  CoOp<F> t1 = bracket(coboundary(reference, f, bound), g, bound);
  if (koszul_odd(reference.reduced_degree(), g.reduced_degree())) t1 = scale(-f.field().one(), t1);
  return sub(sub(lhs, t1), bracket(f, coboundary(reference, g, bound), bound));
}

// (d_f d_g - (-1)^{|f||g|} d_g d_f - d_{[g,f]}) h; identically zero.
template <field_context F>
CoOp<F> commutation_relation_residual(const CoOp<F>& f, const CoOp<F>& g, const CoOp<F>& h,
                                      const DegreeBound& bound = {}) {
  CoOp<F> t1 = coboundary(f, coboundary(g, h, bound), bound);
  CoOp<F> t2 = coboundary(g, coboundary(f, h, bound), bound);
  if (koszul_odd(f.reduced_degree(), g.reduced_degree())) t2 = scale(-f.field().one(), t2);
  return sub(sub(t1, t2), coboundary(bracket(g, f, bound), h, bound));
}

}  // namespace cartier
