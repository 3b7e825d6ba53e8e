#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartier/deformation.hpp"
#include "cartier/fixtures.hpp"
#include "cartier/json_io.hpp"
#include "cartier/random_gen.hpp"

namespace cartier {

struct VerifyOptions {
  int dimension = 2;
  int max_degree = 3;
  int trials = 100;
  std::uint64_t seed = 1;
  DegreeBound bound{};
};

struct IdentityOutcome {
  std::string name;
  long long checks = 0;
  long long failures = 0;
  std::string first_counterexample;
};

struct VerificationReport {
  FieldDescriptor field;
  VerifyOptions options;
  std::vector<IdentityOutcome> identities;
  bool all_passed = true;
};

namespace identities {

inline constexpr std::string_view composition_case1 = "composition relations: case 1";
inline constexpr std::string_view composition_case2 = "composition relations: case 2";
inline constexpr std::string_view composition_case3 = "composition relations: case 3";
inline constexpr std::string_view unit_laws = "unit laws";
inline constexpr std::string_view antisymmetry = "bracket graded antisymmetry";
inline constexpr std::string_view jacobi = "graded Jacobi identity";
inline constexpr std::string_view derivation = "coboundary derivation property";
inline constexpr std::string_view commutation = "coboundary commutation relation";
inline constexpr std::string_view d_square = "coboundary square transfer";
inline constexpr std::string_view deformation_equation = "deformation equation";
inline constexpr std::string_view prolongation = "prolongation identity";
inline constexpr std::string_view omega_cube = "omega triple bracket vanishes";
inline constexpr std::string_view covariant_split = "covariant derivative decomposition";
inline constexpr std::string_view nabla_square = "covariant derivative square";
inline constexpr std::string_view coassociator_agreement = "associator equals coassociator";
inline constexpr std::string_view d_square_zero = "coboundary squares to zero (coassociative)";
inline constexpr std::string_view bianchi = "Bianchi identity (coassociative)";

inline constexpr std::array<std::string_view, 17> all = {
    composition_case1, composition_case2, composition_case3,
    unit_laws,         antisymmetry,      jacobi,
    derivation,        commutation,       d_square,
    deformation_equation, prolongation,   omega_cube,
    covariant_split,   nabla_square,      coassociator_agreement,
    d_square_zero,     bianchi,
};

}  // namespace identities

namespace detail {

// Comparison primitives behind every identity check; they collect instance
// counts and keep the first counterexample (inputs plus the offending entry).
template <field_context F, typename Describe>
void record_equal(IdentityOutcome& out, int trial, const CoOp<F>& lhs, const CoOp<F>& rhs,
                  Describe&& describe_inputs) {
  out.checks += 1;
  const auto k = first_difference(lhs, rhs);
  if (k < 0) return;
  out.failures += 1;
  if (out.first_counterexample.empty()) {
    const auto flat = static_cast<std::size_t>(k);
    out.first_counterexample =
        "trial " + std::to_string(trial) + ": entry " +
        describe_entry(flat, lhs.dimension(), lhs.degree()) + " lhs=" + lhs.coeff(flat).str() +
        " rhs=" + rhs.coeff(flat).str() + "; inputs: " + describe_inputs();
  }
}

template <field_context F, typename Describe>
void record_zero(IdentityOutcome& out, int trial, const CoOp<F>& residual,
                 Describe&& describe_inputs) {
  out.checks += 1;
  const auto k = first_nonzero(residual);
  if (k < 0) return;
  out.failures += 1;
  if (out.first_counterexample.empty()) {
    const auto flat = static_cast<std::size_t>(k);
    out.first_counterexample =
        "trial " + std::to_string(trial) + ": residual entry " +
        describe_entry(flat, residual.dimension(), residual.degree()) + " = " +
        residual.coeff(flat).str() + "; inputs: " + describe_inputs();
  }
}

// Degree-sum cap keeping one composition chain around 3*10^4 coefficient
// products, so random sweeps stay exact *and* fast at higher dimensions.
inline int degree_sum_cap(int dimension) {
  if (dimension <= 1) return 36;
  int cap = 0;
  std::size_t acc = 1;
  while (acc * static_cast<std::size_t>(dimension) <= 30000) {
    acc *= static_cast<std::size_t>(dimension);
    ++cap;
  }
  return cap < 6 ? 6 : cap;
}

template <field_context F>
struct TrialData {
  CoOp<F> h, f, g;        // composition-relation triple, deg h >= 1
  CoOp<F> bf, bg, bh;     // bracket triple, degrees >= 1
  CoOp<F> probe;          // cochain for coboundary identities, degree 1..3
  DeformationContext<F> ctx;
  CoOp<F> fixture;        // coassociative comultiplication
  DeformationContext<F> fixture_ctx;
};

template <field_context F>
CoOp<F> pick_fixture(const ModuleSpace<F>& space, int which,
                     std::span<const typename F::Scalar> weights, const DegreeBound& bound) {
  const int variants = space.dimension == 2 ? 4 : 2;
  switch (which % variants) {
    case 0: return comult_group_like(space, bound);
    case 1: return comult_scaled_group_like(space, weights, bound);
    case 2: return comult_dual_truncated_poly(space, bound);
    default: return comult_dual_z2_group_algebra(space, bound);
  }
}

template <field_context F>
TrialData<F> make_trial(const ModuleSpace<F>& space, const VerifyOptions& opts, Rng& rng,
                        int trial) {
  const std::uint64_t dens = density_bits(0.85);
  const int cap = degree_sum_cap(space.dimension);

  int dh = 1, df = 0, dg = 0;
  do {
    dh = rng.range(1, opts.max_degree);
    df = rng.range(0, opts.max_degree);
    dg = rng.range(0, opts.max_degree);
  } while (dh + df + dg > cap);
  CoOp<F> h = random_coop(space, dh, dens, rng, opts.bound);
  CoOp<F> f = random_coop(space, df, dens, rng, opts.bound);
  CoOp<F> g = random_coop(space, dg, dens, rng, opts.bound);

  int b1 = 1, b2 = 1, b3 = 1;
  do {
    b1 = rng.range(1, opts.max_degree);
    b2 = rng.range(1, opts.max_degree);
    b3 = rng.range(1, opts.max_degree);
  } while (b1 + b2 + b3 > cap);
  CoOp<F> bf = random_coop(space, b1, dens, rng, opts.bound);
  CoOp<F> bg = random_coop(space, b2, dens, rng, opts.bound);
  CoOp<F> bh = random_coop(space, b3, dens, rng, opts.bound);

  CoOp<F> probe = random_coop(space, rng.range(1, std::min(3, opts.max_degree)), dens, rng,
                              opts.bound);

  CoOp<F> delta0 = random_coop(space, 2, dens, rng, opts.bound);
  CoOp<F> delta = random_coop(space, 2, dens, rng, opts.bound);
  auto ctx = DeformationContext<F>::make(delta0, delta, opts.bound);

  std::vector<typename F::Scalar> weights;
  weights.reserve(static_cast<std::size_t>(space.dimension));
  for (int i = 0; i < space.dimension; ++i) {
    weights.push_back(random_nonzero_scalar(space.field, rng));
  }
  CoOp<F> fixture = pick_fixture(space, trial, weights, opts.bound);
  CoOp<F> omega_c = random_coop(space, 2, dens, rng, opts.bound);
  auto fixture_ctx = DeformationContext<F>::make(fixture, add(fixture, omega_c), opts.bound);

  return TrialData<F>{std::move(h), std::move(f), std::move(g),
                      std::move(bf), std::move(bg), std::move(bh),
                      std::move(probe), std::move(ctx),
                      std::move(fixture), std::move(fixture_ctx)};
}

}  // namespace detail

// Runs every boxed identity of the calculus on seeded random data and reports
// exact pass/fail counts. `only` restricts the run to a subset of identity
// names; trial data is drawn identically either way.
template <field_context F>
VerificationReport run_verification(const F& field, const VerifyOptions& opts,
                                    std::span<const std::string_view> only = {}) {
  if (opts.dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (opts.max_degree < 2) {
    throw std::invalid_argument("max degree must be >= 2 (the deformation pair lives in "
                                "degree 2)");
  }

  ModuleSpace<F> space(field, opts.dimension);
  VerificationReport report{field.descriptor(), opts, {}, true};
  report.identities.reserve(identities::all.size());
  for (auto name : identities::all) {
    IdentityOutcome o;
    o.name = std::string(name);
    report.identities.push_back(std::move(o));
  }

  auto active = [&](std::string_view name) -> IdentityOutcome* {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) return nullptr;
    const auto it = std::find(identities::all.begin(), identities::all.end(), name);
    return &report.identities[static_cast<std::size_t>(it - identities::all.begin())];
  };

  const auto one = field.one();
  for (int t = 0; t < opts.trials; ++t) {
    Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(t)));
    auto data = detail::make_trial(space, opts, rng, t);

    IdentityOutcome* c1 = active(identities::composition_case1);
    IdentityOutcome* c2 = active(identities::composition_case2);
    IdentityOutcome* c3 = active(identities::composition_case3);
    if (c1 != nullptr || c2 != nullptr || c3 != nullptr) {
      const auto& h = data.h;
      const auto& f = data.f;
      const auto& g = data.g;
      const bool sign = koszul_odd(f.reduced_degree(), g.reduced_degree());
      for (int i = 0; i <= h.reduced_degree(); ++i) {
        const CoOp<F> hf = partial_compose(h, f, i, opts.bound);
        for (int j = 0; j <= hf.reduced_degree(); ++j) {
          auto inputs = [&, i, j] {
            return "i=" + std::to_string(i) + " j=" + std::to_string(j) +
                   " h=" + coop_to_json(h).dump() + " f=" + coop_to_json(f).dump() +
                   " g=" + coop_to_json(g).dump();
          };
          const CoOp<F> lhs = partial_compose(hf, g, j, opts.bound);
          if (j <= i - 1) {
            if (c1 == nullptr) continue;
            CoOp<F> rhs = partial_compose(partial_compose(h, g, j, opts.bound), f,
                                          i + g.reduced_degree(), opts.bound);
            if (sign) rhs = scale(-one, rhs);
            detail::record_equal(*c1, t, lhs, rhs, inputs);
          } else if (j <= i + f.reduced_degree()) {
            if (c2 == nullptr) continue;
            const CoOp<F> rhs =
                partial_compose(h, partial_compose(f, g, j - i, opts.bound), i, opts.bound);
            detail::record_equal(*c2, t, lhs, rhs, inputs);
          } else {
            if (c3 == nullptr) continue;
            CoOp<F> rhs = partial_compose(
                partial_compose(h, g, j - f.reduced_degree(), opts.bound), f, i, opts.bound);
            if (sign) rhs = scale(-one, rhs);
            detail::record_equal(*c3, t, lhs, rhs, inputs);
          }
        }
      }
    }

    if (IdentityOutcome* u = active(identities::unit_laws)) {
      const CoOp<F> unit = identity_coop(space, opts.bound);
      for (const CoOp<F>* x : {&data.h, &data.f, &data.g}) {
        auto inputs = [&] { return "f=" + coop_to_json(*x).dump(); };
        detail::record_equal(*u, t, partial_compose(unit, *x, 0, opts.bound), *x, inputs);
        if (x->degree() >= 1) {
          for (int i = 0; i <= x->reduced_degree(); ++i) {
            detail::record_equal(*u, t, partial_compose(*x, unit, i, opts.bound), *x, inputs);
          }
        }
      }
    }

    auto bracket_inputs = [&] {
      return "f=" + coop_to_json(data.bf).dump() + " g=" + coop_to_json(data.bg).dump() +
             " h=" + coop_to_json(data.bh).dump();
    };

    if (IdentityOutcome* o = active(identities::antisymmetry)) {
      const CoOp<F> fg = bracket(data.bf, data.bg, opts.bound);
      const CoOp<F> gf = bracket(data.bg, data.bf, opts.bound);
      const bool odd = koszul_odd(data.bf.reduced_degree(), data.bg.reduced_degree());
      detail::record_zero(*o, t, odd ? sub(fg, gf) : add(fg, gf), bracket_inputs);
    }

    if (IdentityOutcome* o = active(identities::jacobi)) {
      auto term = [&](const CoOp<F>& x, const CoOp<F>& y, const CoOp<F>& z) {
        CoOp<F> v = bracket(bracket(x, y, opts.bound), z, opts.bound);
        return koszul_odd(x.reduced_degree(), z.reduced_degree()) ? scale(-one, v) : v;
      };
      const CoOp<F> residual = add(add(term(data.bf, data.bg, data.bh),
                                       term(data.bg, data.bh, data.bf)),
                                   term(data.bh, data.bf, data.bg));
      detail::record_zero(*o, t, residual, bracket_inputs);
    }

    if (IdentityOutcome* o = active(identities::derivation)) {
      detail::record_zero(*o, t,
                          derivation_property_residual(data.bh, data.bf, data.bg, opts.bound),
                          bracket_inputs);
    }

    if (IdentityOutcome* o = active(identities::commutation)) {
      detail::record_zero(*o, t,
                          commutation_relation_residual(data.bf, data.bg, data.bh, opts.bound),
                          bracket_inputs);
    }

    auto ctx_inputs = [&] {
      return "delta0=" + coop_to_json(data.ctx.delta0).dump() +
             " delta=" + coop_to_json(data.ctx.delta).dump();
    };
    auto probe_inputs = [&] {
      return "f=" + coop_to_json(data.probe).dump() + "; " + ctx_inputs();
    };

    if (IdentityOutcome* o = active(identities::d_square)) {
      detail::record_zero(*o, t, d_square_residual(data.ctx.delta0, data.probe, opts.bound),
                          probe_inputs);
    }

    if (IdentityOutcome* o = active(identities::deformation_equation)) {
      detail::record_zero(*o, t, deformation_residual(data.ctx, opts.bound), ctx_inputs);
    }

    if (IdentityOutcome* o = active(identities::prolongation)) {
      detail::record_zero(*o, t, prolongation_residual(data.ctx, opts.bound), ctx_inputs);
    }

    if (IdentityOutcome* o = active(identities::omega_cube)) {
      const auto& w = data.ctx.omega;
      detail::record_zero(*o, t, bracket(bracket(w, w, opts.bound), w, opts.bound), ctx_inputs);
    }

    if (IdentityOutcome* o = active(identities::covariant_split)) {
      const CoOp<F> lhs = covariant_derivative(data.ctx, data.probe, opts.bound);
      const CoOp<F> rhs = add(coboundary(data.ctx.delta0, data.probe, opts.bound),
                              bracket(data.probe, data.ctx.omega, opts.bound));
      detail::record_equal(*o, t, lhs, rhs, probe_inputs);
    }

    if (IdentityOutcome* o = active(identities::nabla_square)) {
      detail::record_zero(*o, t, nabla_square_residual(data.ctx, data.probe, opts.bound),
                          probe_inputs);
    }

    if (IdentityOutcome* o = active(identities::coassociator_agreement)) {
      for (const CoOp<F>* delta : {&data.ctx.delta0, &data.ctx.delta}) {
        auto inputs = [&] { return "delta=" + coop_to_json(*delta).dump(); };
        detail::record_equal(*o, t, associator(*delta, opts.bound),
                             coassociator_direct(*delta, opts.bound), inputs);
      }
    }

    auto fixture_inputs = [&] {
      return "delta0=" + coop_to_json(data.fixture).dump() +
             " omega=" + coop_to_json(data.fixture_ctx.omega).dump();
    };

    if (IdentityOutcome* o = active(identities::d_square_zero)) {
      const CoOp<F> dd =
          coboundary(data.fixture, coboundary(data.fixture, data.probe, opts.bound), opts.bound);
      detail::record_zero(*o, t, dd, [&] {
        return "f=" + coop_to_json(data.probe).dump() + "; " + fixture_inputs();
      });
    }

    if (IdentityOutcome* o = active(identities::bianchi)) {
      detail::record_zero(*o, t, bianchi_residual(data.fixture_ctx, opts.bound), fixture_inputs);
    }
  }

  for (const auto& o : report.identities) {
    if (o.failures > 0) report.all_passed = false;
  }
  return report;
}

inline VerificationReport run_verification(const FieldDescriptor& fd, const VerifyOptions& opts,
                                           std::span<const std::string_view> only = {}) {
  return visit_field(fd, [&](auto field) { return run_verification(field, opts, only); });
}

inline std::string verification_report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "identity verification report\n";
  os << "field: " << r.field.str() << "\n";
  os << "dimension=" << r.options.dimension << " max_degree=" << r.options.max_degree
     << " trials=" << r.options.trials << " seed=" << r.options.seed << "\n\n";
  os << std::left << std::setw(46) << "identity" << std::right << std::setw(10) << "checks"
     << std::setw(10) << "failures" << "\n";
  long long failures = 0;
  for (const auto& o : r.identities) {
    if (o.checks == 0 && o.failures == 0) continue;
    os << std::left << std::setw(46) << o.name << std::right << std::setw(10) << o.checks
       << std::setw(10) << o.failures << "\n";
    failures += o.failures;
  }
  for (const auto& o : r.identities) {
    if (!o.first_counterexample.empty()) {
      os << "\ncounterexample for " << o.name << ":\n  " << o.first_counterexample << "\n";
    }
  }
  os << "\nresult: " << (r.all_passed ? "PASS" : "FAIL") << " (" << failures << " failure"
     << (failures == 1 ? "" : "s") << ")\n";
  return os.str();
}

inline json verification_report_json(const VerificationReport& r) {
  json ids = json::array();
  for (const auto& o : r.identities) {
    if (o.checks == 0 && o.failures == 0) continue;
    json e = {{"name", o.name}, {"checks", o.checks}, {"failures", o.failures}};
    if (!o.first_counterexample.empty()) e["first_counterexample"] = o.first_counterexample;
    ids.push_back(std::move(e));
  }
  return {{"field", field_to_json(r.field)},
          {"dimension", r.options.dimension},
          {"max_degree", r.options.max_degree},
          {"trials", r.options.trials},
          {"seed", r.options.seed},
          {"identities", std::move(ids)},
          {"pass", r.all_passed}};
}

}  // namespace cartier
