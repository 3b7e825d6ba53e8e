#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartier/cogravity.hpp"
#include "cartier/cohomology.hpp"
#include "cartier/coop.hpp"
#include "cartier/fields.hpp"

namespace cartier {

using json = nlohmann::json;

inline json field_to_json(const FieldDescriptor& fd) {
  if (fd.kind == FieldKind::rationals) return json("rational");
  return json{{"prime", fd.prime}};
}

inline FieldDescriptor field_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "rational") return FieldDescriptor::rationals();
  if (j.is_object() && j.contains("prime") && j["prime"].is_number_unsigned()) {
    return FieldDescriptor::prime_field(j["prime"].get<std::uint64_t>());
  }
  throw std::invalid_argument("field must be \"rational\" or {\"prime\": p}, got " + j.dump());
}

namespace detail {

inline std::string scalar_text(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw std::invalid_argument(std::string(what) + ": scalar value must be a string or integer, "
                                                  "got " +
                              v.dump());
}

inline void check_declared_field(const json& j, const FieldDescriptor& expected,
                                 const char* what) {
  const FieldDescriptor declared = field_from_json(j.at("field"));
  if (!(declared == expected)) {
    throw std::invalid_argument(std::string(what) + ": file declares field " + declared.str() +
                                " but " + expected.str() + " was requested");
  }
}

inline int get_dimension(const json& j, const char* what) {
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
    throw std::invalid_argument(std::string(what) + ": missing integer \"dimension\"");
  }
  return j["dimension"].get<int>();
}

}  // namespace detail

// Canonical co-operation serialization: 1-based basis indices, zero entries
// omitted, entries sorted lexicographically by (in, out). Serializing the
// parse of a canonical file reproduces it byte for byte.
template <field_context F>
json coop_to_json(const CoOp<F>& f) {
  const auto d = static_cast<std::size_t>(f.dimension());
  const std::size_t out_count = f.coeff_count() / d;
  json entries = json::array();
  for (std::size_t in = 0; in < d; ++in) {
    for (std::size_t out = 0; out < out_count; ++out) {
      const auto& v = f.coeff(out * d + in);
      if (v.is_zero()) continue;
      const auto idx = coop_indices(out * d + in, f.dimension(), f.degree());
      json out_idx = json::array();
      for (int k = 0; k < f.degree(); ++k) out_idx.push_back(idx[static_cast<std::size_t>(k)] + 1);
      entries.push_back({{"in", in + 1}, {"out", std::move(out_idx)}, {"value", v.str()}});
    }
  }
  return {{"dimension", f.dimension()},
          {"field", field_to_json(f.field().descriptor())},
          {"degree", f.degree()},
          {"coefficients", std::move(entries)}};
}

template <field_context F>
CoOp<F> coop_from_json(const json& j, const F& field, const DegreeBound& bound = {}) {
  constexpr const char* what = "co-operation";
  detail::check_declared_field(j, field.descriptor(), what);
  const int d = detail::get_dimension(j, what);
  if (!j.contains("degree") || !j["degree"].is_number_integer()) {
    throw std::invalid_argument("co-operation: missing integer \"degree\"");
  }
  const int degree = j["degree"].get<int>();
  ModuleSpace<F> space(field, d);
  CoOp<F> f(space, degree, bound);
  std::vector<bool> seen(f.coeff_count(), false);

  if (!j.contains("coefficients") || !j["coefficients"].is_array()) {
    throw std::invalid_argument("co-operation: missing \"coefficients\" array");
  }
  for (const auto& e : j["coefficients"]) {
    if (!e.contains("in") || !e["in"].is_number_integer() || !e.contains("out") ||
        !e["out"].is_array() || !e.contains("value")) {
      throw std::invalid_argument("co-operation: each coefficient needs \"in\", \"out\", "
                                  "\"value\", got " +
                                  e.dump());
    }
    const int in = e["in"].get<int>() - 1;
    std::vector<int> out;
    for (const auto& o : e["out"]) {
      if (!o.is_number_integer()) {
        throw std::invalid_argument("co-operation: output indices must be integers, got " +
                                    e["out"].dump());
      }
      out.push_back(o.get<int>() - 1);
    }
    const std::size_t flat = f.flat_index(out, in);  // validates ranges and arity
    if (seen[flat]) {
      throw std::invalid_argument("co-operation: duplicate coefficient entry at " +
                                  describe_entry(flat, d, degree));
    }
    seen[flat] = true;
    f.set_coeff(flat, field.parse(detail::scalar_text(e["value"], what)));
  }
  return f;
}

// Tensor serialization: {"idx": [i,j,..], "value": ...} entries, 1-based,
// zeros omitted, sorted by flat (row-major) index.
template <field_context F>
json tensor_to_json(const Tensor<F>& t) {
  const int d = t.dimension();
  json entries = json::array();
  std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
  std::size_t flat = 0;
  do {
    const auto& v = t.coeff(flat);
    if (!v.is_zero()) {
      json jidx = json::array();
      for (int k : idx) jidx.push_back(k + 1);
      entries.push_back({{"idx", std::move(jidx)}, {"value", v.str()}});
    }
    ++flat;
  } while (next_index(idx, d));
  return {{"dimension", d},
          {"field", field_to_json(t.field().descriptor())},
          {"rank", t.rank()},
          {"entries", std::move(entries)}};
}

template <field_context F>
Tensor<F> tensor_from_json(const json& j, const F& field, int expected_rank,
                           const DegreeBound& bound = {}) {
  constexpr const char* what = "tensor";
  detail::check_declared_field(j, field.descriptor(), what);
  const int d = detail::get_dimension(j, what);
  if (j.contains("rank") && j["rank"].is_number_integer() &&
      j["rank"].get<int>() != expected_rank) {
    throw std::invalid_argument("tensor: rank " + std::to_string(j["rank"].get<int>()) +
                                " in file, expected " + std::to_string(expected_rank));
  }
  Tensor<F> t(field, d, expected_rank, bound);
  std::vector<bool> seen(t.size(), false);
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw std::invalid_argument("tensor: missing \"entries\" array");
  }
  for (const auto& e : j["entries"]) {
    if (!e.contains("idx") || !e["idx"].is_array() || !e.contains("value")) {
      throw std::invalid_argument("tensor: each entry needs \"idx\" and \"value\", got " +
                                  e.dump());
    }
    std::vector<int> idx;
    for (const auto& o : e["idx"]) {
      if (!o.is_number_integer()) {
        throw std::invalid_argument("tensor: indices must be integers, got " + e["idx"].dump());
      }
      idx.push_back(o.get<int>() - 1);
    }
    const std::size_t flat = t.flat_index(idx);
    if (seen[flat]) {
      throw std::invalid_argument("tensor: duplicate entry at " + e["idx"].dump());
    }
    seen[flat] = true;
    t.set_coeff(flat, field.parse(detail::scalar_text(e["value"], what)));
  }
  return t;
}

inline json cohomology_report_to_json(const CohomologyReport& report,
                                      const std::string& source_label) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"dimC", r.dim_cochains},
                    {"rank", r.rank},
                    {"kernel", r.kernel},
                    {"H", r.h}});
  }
  return {{"delta0", source_label},
          {"field", field_to_json(report.field)},
          {"dimension", report.dimension},
          {"rows", std::move(rows)}};
}

inline std::string cohomology_report_table(const CohomologyReport& report) {
  std::ostringstream os;
  os << "cohomology of the pre-coboundary (dimension " << report.dimension << ", field "
     << report.field.str() << ")\n";
  os << "   n     dim C^n    rank d_n   dim ker    dim H^n\n";
  for (const auto& r : report.rows) {
    os.width(4);
    os << r.n;
    for (std::size_t v : {r.dim_cochains, r.rank, r.kernel, r.h}) {
      os.width(12);
      os << v;
    }
    os << "\n";
  }
  return os.str();
}

// Two-space indentation with sorted keys (nlohmann objects are ordered maps),
// so equal values serialize to equal bytes.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace cartier
