// Command-line surface: generate and combine co-operations, run the identity
// verification sweep, compute cohomology tables, and evaluate the cogravity
// equation, all in exact arithmetic. Exit codes: 0 success / all identities
// pass / zero residual, 1 identity failure or nonzero residual, 2 usage or
// input error.

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartier/cartier.hpp"

namespace {

using namespace cartier;

struct CommonOptions {
  std::string field_spec = "rational";
  std::size_t max_coeffs = DegreeBound{}.max_coeff_count;
  int max_degree_guard = DegreeBound{}.max_degree;

  DegreeBound bound() const { return {max_degree_guard, max_coeffs}; }
  FieldDescriptor field() const { return parse_field_spec(field_spec); }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

// Reads a co-operation file and hands the typed value to `fn` together with
// its field context.
template <typename Fn>
auto with_coop_file(const std::string& path, const DegreeBound& bound, Fn&& fn) {
  const json j = read_json_file(path);
  const FieldDescriptor fd = field_from_json(j.at("field"));
  return visit_field(fd, [&](auto field) {
    return fn(field, coop_from_json(j, field, bound));
  });
}

int cmd_verify(const CommonOptions& common, const VerifyOptions& opts,
               const std::string& json_path) {
  const VerificationReport report = run_verification(common.field(), opts);
  std::cout << verification_report_text(report);
  if (!json_path.empty()) {
    emit(canonical_dump(verification_report_json(report)), json_path);
  }
  return report.all_passed ? 0 : 1;
}

int cmd_random(const CommonOptions& common, int dim, int degree, std::uint64_t seed,
               double density, const std::string& out_path) {
  return visit_field(common.field(), [&](auto field) {
    ModuleSpace space(field, dim);
    Rng rng(seed);
    const auto coop = random_coop(space, degree, density_bits(density), rng, common.bound());
    emit(canonical_dump(coop_to_json(coop)), out_path);
    return 0;
  });
}

int cmd_compose(const CommonOptions& common, const std::string& f_path,
                const std::string& g_path, std::optional<int> slot, bool total,
                const std::string& out_path) {
  if (slot.has_value() == total) {
    throw std::invalid_argument("choose exactly one of --slot <i> and --total");
  }
  return with_coop_file(f_path, common.bound(), [&](auto field, auto f) {
    const auto g = coop_from_json(read_json_file(g_path), field, common.bound());
    const auto result = total ? total_compose(f, g, common.bound())
                              : partial_compose(f, g, *slot, common.bound());
    emit(canonical_dump(coop_to_json(result)), out_path);
    return 0;
  });
}

int cmd_bracket(const CommonOptions& common, const std::string& f_path,
                const std::string& g_path, const std::string& out_path) {
  return with_coop_file(f_path, common.bound(), [&](auto field, auto f) {
    const auto g = coop_from_json(read_json_file(g_path), field, common.bound());
    emit(canonical_dump(coop_to_json(bracket(f, g, common.bound()))), out_path);
    return 0;
  });
}

int cmd_associator(const CommonOptions& common, const std::string& delta_path,
                   const std::string& out_path) {
  return with_coop_file(delta_path, common.bound(), [&](auto, auto delta) {
    emit(canonical_dump(coop_to_json(associator(delta, common.bound()))), out_path);
    return 0;
  });
}

int cmd_cohomology(const CommonOptions& common, const std::string& delta0_path, int max_n,
                   std::size_t max_matrix_entries, const std::string& json_path) {
  return with_coop_file(delta0_path, common.bound(), [&](auto, auto delta0) {
    const MatrixGuard guard{max_matrix_entries};
    const auto report = cohomology_dimensions(delta0, max_n, guard, common.bound());
    std::cout << cohomology_report_table(report);
    if (!json_path.empty()) {
      emit(canonical_dump(cohomology_report_to_json(report, delta0_path)), json_path);
    }
    return 0;
  });
}

template <field_context F>
std::string tensor_table(const Tensor<F>& t, const std::string& title) {
  const auto d = static_cast<std::size_t>(t.dimension());
  std::vector<std::string> cells(t.size());
  std::size_t width = 1;
  for (std::size_t k = 0; k < t.size(); ++k) {
    cells[k] = t.coeff(k).str();
    width = std::max(width, cells[k].size());
  }
  std::ostringstream os;
  os << title << "\n";
  for (std::size_t i = 0; i < d; ++i) {
    os << " ";
    for (std::size_t j = 0; j < d; ++j) {
      os << " " << std::setw(static_cast<int>(width)) << cells[i * d + j];
    }
    os << "\n";
  }
  return os.str();
}

// Shared front half of the cogravity commands: field comes from the gamma
// file, delta (= delta0 + omega) drives the Ricci coassociator.
template <typename Fn>
int with_cogravity_inputs(const CommonOptions& common, const std::string& gamma_path,
                          const std::string& delta0_path, const std::string& metric_path,
                          const std::string& k_text, Fn&& fn) {
  const json gamma_json = read_json_file(gamma_path);
  const FieldDescriptor fd = field_from_json(gamma_json.at("field"));
  return visit_field(fd, [&](auto field) {
    const auto bound = common.bound();
    const auto gamma_tensor = tensor_from_json(gamma_json, field, 3, bound);
    ModuleSpace space(field, gamma_tensor.dimension());
    const ConnectionCoefficients gamma(space, gamma_tensor);
    const auto delta0 = coop_from_json(read_json_file(delta0_path), field, bound);
    const auto metric = make_metric(tensor_from_json(read_json_file(metric_path), field, 2, bound));
    const auto coupling = make_coupling<decltype(field)>(field.parse(k_text));

    const auto omega = omega_from_gamma(gamma, bound);
    const auto delta = add(delta0, omega);
    const auto ricci = ricci_coassociator(coassociator_components(delta, bound));
    return fn(field, ricci, metric, coupling);
  });
}

int cmd_cogravity(const CommonOptions& common, const std::string& gamma_path,
                  const std::string& delta0_path, const std::string& metric_path,
                  const std::string& stress_path, const std::string& k_text,
                  const std::string& json_path) {
  return with_cogravity_inputs(
      common, gamma_path, delta0_path, metric_path, k_text,
      [&](auto field, const auto& ricci, const auto& metric, const auto& coupling) {
        const auto stress =
            make_stress(tensor_from_json(read_json_file(stress_path), field, 2, common.bound()));
        const auto trace = stress_trace(metric, stress);
        const auto residual = cogravity_residual(ricci, stress, metric, coupling);
        const bool zero = is_zero(residual);

        std::cout << tensor_table(ricci, "Ricci coassociator A_ij:");
        std::cout << "stress trace T = " << trace.str() << "\n";
        std::cout << tensor_table(residual, "residual A_ij - k(T_ij - 1/2 g_ij T):");
        std::cout << "residual is " << (zero ? "zero" : "nonzero") << "\n";
        if (!json_path.empty()) {
          const json out = {{"ricci", tensor_to_json(ricci)},
                            {"trace", trace.str()},
                            {"residual", tensor_to_json(residual)},
                            {"zero", zero}};
          emit(canonical_dump(out), json_path);
        }
        return zero ? 0 : 1;
      });
}

int cmd_solve_stress(const CommonOptions& common, const std::string& gamma_path,
                     const std::string& delta0_path, const std::string& metric_path,
                     const std::string& k_text, const std::string& out_path) {
  return with_cogravity_inputs(
      common, gamma_path, delta0_path, metric_path, k_text,
      [&](auto, const auto& ricci, const auto& metric, const auto& coupling) {
        const auto stress = solve_stress(ricci, metric, coupling);
        emit(canonical_dump(tensor_to_json(stress.t)), out_path);
        return 0;
      });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact operadic deformation calculus over a finite free module"};
  app.require_subcommand(1);

  CommonOptions common;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--field", common.field_spec, "scalar field: 'rational' or a prime >= 5")
        ->capture_default_str();
    cmd->add_option("--max-coeffs", common.max_coeffs,
                    "guard on dense coefficient tensors (entries)")
        ->capture_default_str();
    cmd->add_option("--max-degree-guard", common.max_degree_guard,
                    "guard on co-operation degrees")
        ->capture_default_str();
  };

  // verify
  VerifyOptions vopts;
  std::string verify_json;
  auto* verify = app.add_subcommand("verify", "run the identity verification sweep");
  verify->add_option("--dim", vopts.dimension, "module dimension")->capture_default_str();
  verify->add_option("--max-degree", vopts.max_degree, "largest random co-operation degree")
      ->capture_default_str();
  verify->add_option("--trials", vopts.trials, "number of random trials")->capture_default_str();
  verify->add_option("--seed", vopts.seed, "random seed")->capture_default_str();
  verify->add_option("--json", verify_json, "also write the report as JSON to this path");
  add_common(verify);

  // random
  int r_dim = 2, r_degree = 2;
  std::uint64_t r_seed = 1;
  double r_density = 1.0;
  std::string r_out;
  auto* rnd = app.add_subcommand("random", "emit a deterministic pseudo-random co-operation");
  rnd->add_option("--dim", r_dim, "module dimension")->capture_default_str();
  rnd->add_option("--degree", r_degree, "co-operation degree")->capture_default_str();
  rnd->add_option("--seed", r_seed, "random seed")->capture_default_str();
  rnd->add_option("--density", r_density, "probability that an entry is nonzero")
      ->capture_default_str();
  rnd->add_option("-o,--out", r_out, "output path (default: stdout)");
  add_common(rnd);

  // compose
  std::string c_f, c_g, c_out;
  std::optional<int> c_slot;
  bool c_total = false;
  auto* compose = app.add_subcommand("compose", "partial or total composition of two files");
  compose->add_option("f", c_f, "first co-operation file")->required();
  compose->add_option("g", c_g, "second co-operation file")->required();
  compose->add_option("--slot", c_slot, "slot index for partial composition");
  compose->add_flag("--total", c_total, "total composition (slot sum)");
  compose->add_option("-o,--out", c_out, "output path (default: stdout)");
  add_common(compose);

  // bracket
  std::string b_f, b_g, b_out;
  auto* br = app.add_subcommand("bracket", "Gerstenhaber bracket of two files");
  br->add_option("f", b_f, "first co-operation file")->required();
  br->add_option("g", b_g, "second co-operation file")->required();
  br->add_option("-o,--out", b_out, "output path (default: stdout)");
  add_common(br);

  // associator
  std::string a_delta, a_out;
  auto* assoc = app.add_subcommand("associator", "associator of a degree-2 co-operation");
  assoc->add_option("delta", a_delta, "degree-2 co-operation file")->required();
  assoc->add_option("-o,--out", a_out, "output path (default: stdout)");
  add_common(assoc);

  // cohomology
  std::string coh_delta0, coh_json;
  int coh_max_n = 2;
  std::size_t coh_max_entries = MatrixGuard{}.max_entries;
  auto* coh = app.add_subcommand("cohomology", "cohomology table of a coassociative file");
  coh->add_option("delta0", coh_delta0, "coassociative degree-2 co-operation file")->required();
  coh->add_option("--max-n", coh_max_n, "largest cochain degree")->capture_default_str();
  coh->add_option("--max-matrix-entries", coh_max_entries, "guard on coboundary matrix size")
      ->capture_default_str();
  coh->add_option("--json", coh_json, "also write the report as JSON to this path");
  add_common(coh);

  // cogravity
  std::string cg_gamma, cg_delta0, cg_metric, cg_stress, cg_k = "1", cg_json;
  auto* cg = app.add_subcommand("cogravity",
                                "residual of A_ij = k(T_ij - 1/2 g_ij T) for given data");
  cg->add_option("--gamma", cg_gamma, "connection coefficients file (rank-3 tensor)")->required();
  cg->add_option("--delta0", cg_delta0, "reference degree-2 co-operation file")->required();
  cg->add_option("--metric", cg_metric, "symmetric metric file (rank-2 tensor)")->required();
  cg->add_option("--stress", cg_stress, "stress tensor file (rank-2 tensor)")->required();
  cg->add_option("--k", cg_k, "coupling constant (scalar in the file field)")
      ->capture_default_str();
  cg->add_option("--json", cg_json, "also write the result as JSON to this path");
  add_common(cg);

  // solve-stress
  std::string ss_gamma, ss_delta0, ss_metric, ss_k = "1", ss_out;
  auto* ss = app.add_subcommand("solve-stress",
                                "stress tensor solving the cogravity equation exactly");
  ss->add_option("--gamma", ss_gamma, "connection coefficients file (rank-3 tensor)")->required();
  ss->add_option("--delta0", ss_delta0, "reference degree-2 co-operation file")->required();
  ss->add_option("--metric", ss_metric, "symmetric metric file (rank-2 tensor)")->required();
  ss->add_option("--k", ss_k, "coupling constant (scalar in the file field)")
      ->capture_default_str();
  ss->add_option("-o,--out", ss_out, "output path (default: stdout)");
  add_common(ss);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(common, vopts, verify_json);
    if (rnd->parsed()) return cmd_random(common, r_dim, r_degree, r_seed, r_density, r_out);
    if (compose->parsed()) return cmd_compose(common, c_f, c_g, c_slot, c_total, c_out);
    if (br->parsed()) return cmd_bracket(common, b_f, b_g, b_out);
    if (assoc->parsed()) return cmd_associator(common, a_delta, a_out);
    if (coh->parsed()) return cmd_cohomology(common, coh_delta0, coh_max_n, coh_max_entries,
                                             coh_json);
    if (cg->parsed()) {
      return cmd_cogravity(common, cg_gamma, cg_delta0, cg_metric, cg_stress, cg_k, cg_json);
    }
    if (ss->parsed()) return cmd_solve_stress(common, ss_gamma, ss_delta0, ss_metric, ss_k, ss_out);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
