#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "cartier/deformation.hpp"

namespace cartier {

// Connection coefficients Gamma^i_{jk}, a rank-3 tensor with axes (i, j, k),
// defining the deformation omega(e^i) = Gamma^i_{jk} e^j x e^k.
template <field_context F>
struct ConnectionCoefficients {
  ModuleSpace<F> space;
  Tensor<F> gamma;

  ConnectionCoefficients(ModuleSpace<F> s, Tensor<F> g)
      : space(std::move(s)), gamma(std::move(g)) {
    if (gamma.rank() != 3 || gamma.dimension() != space.dimension ||
        !(gamma.field() == space.field)) {
      throw std::invalid_argument("connection coefficients must be a rank-3 tensor over the "
                                  "module space");
    }
  }
};

// Reshape Gamma into the degree-2 co-operation with coefficients
// omega^{jk}_i = Gamma^i_{jk}.
template <field_context F>
CoOp<F> omega_from_gamma(const ConnectionCoefficients<F>& cc, const DegreeBound& bound = {}) {
  const auto d = static_cast<std::size_t>(cc.space.dimension);
  CoOp<F> omega(cc.space, 2, bound);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        omega.set_coeff((j * d + k) * d + i, cc.gamma.coeff((i * d + j) * d + k));
      }
    }
  }
  return omega;
}

template <field_context F>
ConnectionCoefficients<F> gamma_from_omega(const CoOp<F>& omega, const DegreeBound& bound = {}) {
  if (omega.degree() != 2) {
    throw std::invalid_argument("connection coefficients come from a degree-2 co-operation, got "
                                "degree " +
                                std::to_string(omega.degree()));
  }
  const auto d = static_cast<std::size_t>(omega.dimension());
  Tensor<F> gamma(omega.field(), omega.dimension(), 3, bound);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        gamma.set_coeff((i * d + j) * d + k, omega.coeff((j * d + k) * d + i));
      }
    }
  }
  return {omega.space(), std::move(gamma)};
}

// Coassociator components A^i_{jkl}, a rank-4 tensor with axes (i, j, k, l):
// A(e^i) = A^i_{jkl} e^j x e^k x e^l.
template <field_context F>
struct CoassociatorComponents {
  ModuleSpace<F> space;
  Tensor<F> comps;
};

template <field_context F>
CoassociatorComponents<F> coassociator_components(const CoOp<F>& delta,
                                                  const DegreeBound& bound = {}) {
  const CoOp<F> a = associator(delta, bound);
  const auto d = static_cast<std::size_t>(a.dimension());
  Tensor<F> comps(a.field(), a.dimension(), 4, bound);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
          comps.set_coeff(((i * d + j) * d + k) * d + l,
                          a.coeff(((j * d + k) * d + l) * d + i));
        }
      }
    }
  }
  return {a.space(), std::move(comps)};
}

// Inverse reshape; round-trips losslessly with coassociator_components.
template <field_context F>
CoOp<F> components_to_coop(const CoassociatorComponents<F>& cc, const DegreeBound& bound = {}) {
  const auto d = static_cast<std::size_t>(cc.space.dimension);
  CoOp<F> out(cc.space, 3, bound);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
          out.set_coeff(((j * d + k) * d + l) * d + i,
                        cc.comps.coeff(((i * d + j) * d + k) * d + l));
        }
      }
    }
  }
  return out;
}

// Which component slot the summed upper index is paired with in the Ricci
// contraction. The middle slot (A_ij = sum_s A^s_{isj}) is the normative
// reading; the others are provided as an escape hatch.
enum class RicciSlot { first, middle, last };

template <field_context F>
Tensor<F> ricci_coassociator(const CoassociatorComponents<F>& cc,
                             RicciSlot slot = RicciSlot::middle) {
  const int d = cc.space.dimension;
  Tensor<F> out(cc.space.field, d, 2);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      auto acc = cc.space.field.zero();
      for (int s = 0; s < d; ++s) {
        std::array<int, 4> idx{};
        switch (slot) {
          case RicciSlot::first: idx = {s, s, i, j}; break;
          case RicciSlot::middle: idx = {s, i, s, j}; break;
          case RicciSlot::last: idx = {s, i, j, s}; break;
        }
        acc = acc + cc.comps.at(idx);
      }
      out.set_at(std::array<int, 2>{i, j}, std::move(acc));
    }
  }
  return out;
}

// Symmetric metric together with its exact inverse.
template <field_context F>
struct Metric {
  Tensor<F> g;
  Tensor<F> g_inv;
};

// Gauss-Jordan inverse over the exact field; throws if singular.
template <field_context F>
Tensor<F> invert_matrix(const Tensor<F>& m) {
  if (m.rank() != 2) throw std::invalid_argument("matrix inverse requires a rank-2 tensor");
  const int d = m.dimension();
  const auto& field = m.field();
  const auto dd = static_cast<std::size_t>(d);
  std::vector<typename F::Scalar> a(dd * 2 * dd, field.zero());
  for (std::size_t r = 0; r < dd; ++r) {
    for (std::size_t c = 0; c < dd; ++c) a[r * 2 * dd + c] = m.coeff(r * dd + c);
    a[r * 2 * dd + dd + r] = field.one();
  }
  for (std::size_t c = 0; c < dd; ++c) {
    std::size_t pivot = dd;
    for (std::size_t r = c; r < dd; ++r) {
      if (!a[r * 2 * dd + c].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == dd) throw std::domain_error("matrix is singular over the exact field");
    if (pivot != c) {
      for (std::size_t j = 0; j < 2 * dd; ++j) std::swap(a[pivot * 2 * dd + j], a[c * 2 * dd + j]);
    }
    const auto inv = a[c * 2 * dd + c].inverse();
    for (std::size_t j = 0; j < 2 * dd; ++j) a[c * 2 * dd + j] = inv * a[c * 2 * dd + j];
    for (std::size_t r = 0; r < dd; ++r) {
      if (r == c || a[r * 2 * dd + c].is_zero()) continue;
      const auto f = a[r * 2 * dd + c];
      for (std::size_t j = 0; j < 2 * dd; ++j) {
        a[r * 2 * dd + j] = a[r * 2 * dd + j] - f * a[c * 2 * dd + j];
      }
    }
  }
  Tensor<F> out(field, d, 2);
  for (std::size_t r = 0; r < dd; ++r) {
    for (std::size_t c = 0; c < dd; ++c) out.set_coeff(r * dd + c, a[r * 2 * dd + dd + c]);
  }
  return out;
}

template <field_context F>
Metric<F> make_metric(Tensor<F> g) {
  if (g.rank() != 2) throw std::invalid_argument("metric must be a rank-2 tensor");
  const auto d = static_cast<std::size_t>(g.dimension());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (!(g.coeff(i * d + j) == g.coeff(j * d + i))) {
        throw std::invalid_argument("metric is not symmetric at entry (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
      }
    }
  }
  Tensor<F> inv = invert_matrix(g);
  return {std::move(g), std::move(inv)};
}

template <field_context F>
struct StressTensor {
  Tensor<F> t;
};

template <field_context F>
StressTensor<F> make_stress(Tensor<F> t) {
  if (t.rank() != 2) throw std::invalid_argument("stress tensor must be a rank-2 tensor");
  return {std::move(t)};
}

// T = g^{ij} T_{ij}; recomputed on demand, never cached.
template <field_context F>
typename F::Scalar stress_trace(const Metric<F>& metric, const StressTensor<F>& stress) {
  detail::check_tensor_compatible(metric.g, stress.t, "stress trace");
  auto acc = metric.g.field().zero();
  for (std::size_t k = 0; k < stress.t.size(); ++k) {
    acc = acc + metric.g_inv.coeff(k) * stress.t.coeff(k);
  }
  return acc;
}

template <field_context F>
struct Coupling {
  typename F::Scalar k;
};

template <field_context F>
Coupling<F> make_coupling(typename F::Scalar k) {
  if (k.is_zero()) throw std::invalid_argument("coupling constant must be nonzero");
  return {std::move(k)};
}

// Residual of A_ij = k (T_ij - 1/2 g_ij T); exactly zero iff the equation
// holds for the given data.
template <field_context F>
Tensor<F> cogravity_residual(const Tensor<F>& ricci, const StressTensor<F>& stress,
                             const Metric<F>& metric, const Coupling<F>& coupling) {
  if (ricci.rank() != 2) throw std::invalid_argument("Ricci coassociator must be a rank-2 tensor");
  detail::check_tensor_compatible(ricci, stress.t, "cogravity residual");
  detail::check_tensor_compatible(ricci, metric.g, "cogravity residual");
  const auto& field = ricci.field();
  const auto half = field.from_int(2).inverse();
  const auto trace = stress_trace(metric, stress);
  Tensor<F> out = ricci;
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto rhs = coupling.k * (stress.t.coeff(k) - half * metric.g.coeff(k) * trace);
    out.set_coeff(k, ricci.coeff(k) - rhs);
  }
  return out;
}

// Invert the field equation for T_ij. Contracting with g^{ij} gives
// T (1 - d/2) = g^{ij} A_ij / k; when 1 - d/2 = 0 in the field (dimension 2
// over Q) the trace equation is degenerate: it forces g^{ij} A_ij = 0, and T
// itself is free, so T = 0 is chosen. A nonzero contracted Ricci is refused.
template <field_context F>
StressTensor<F> solve_stress(const Tensor<F>& ricci, const Metric<F>& metric,
                             const Coupling<F>& coupling) {
  if (ricci.rank() != 2) throw std::invalid_argument("Ricci coassociator must be a rank-2 tensor");
  detail::check_tensor_compatible(ricci, metric.g, "stress solve");
  const auto& field = ricci.field();
  const auto half = field.from_int(2).inverse();
  const int d = ricci.dimension();

  auto contracted = field.zero();
  for (std::size_t k = 0; k < ricci.size(); ++k) {
    contracted = contracted + metric.g_inv.coeff(k) * ricci.coeff(k);
  }

  const auto k_inv = coupling.k.inverse();
  const auto trace_factor = field.one() - field.from_int(d) * half;  // 1 - d/2
  typename F::Scalar trace = field.zero();
  if (trace_factor.is_zero()) {
    if (!contracted.is_zero()) {
      throw std::domain_error("stress solve is degenerate at dimension " + std::to_string(d) +
                              ": the trace equation forces a vanishing contracted Ricci "
                              "coassociator, got " +
                              contracted.str());
    }
    // trace is a free parameter here; take the canonical representative 0
  } else {
    trace = contracted * k_inv * trace_factor.inverse();
  }

  Tensor<F> t = ricci;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t.set_coeff(k, ricci.coeff(k) * k_inv + half * metric.g.coeff(k) * trace);
  }
  return {std::move(t)};
}

}  // namespace cartier
