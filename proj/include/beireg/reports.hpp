#pragma once

#include <string>
#include <vector>

#include "beireg/binomial_edge.hpp"
#include "beireg/decompose.hpp"
#include "beireg/json_io.hpp"
#include "beireg/reg_formulas.hpp"

namespace beireg {

// ---------------------------------------------------------------------------
// CmDecomposition

inline Json part_to_json(const CmPart& p) {
  if (p.kind == CmPart::Kind::F) return Json{{"F", p.ms[0]}};
  return Json{{"chain", p.ms}};
}

inline CmPart part_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("F")) return {CmPart::Kind::F, {detail::as_int(j.at("F"), where + ".F")}};
  if (j.is_object() && j.contains("chain"))
    return {CmPart::Kind::Chain, detail::as_int_list(j.at("chain"), where + ".chain")};
  throw InputError(where + ": expected {\"F\": n} or {\"chain\": [...]}");
}

inline Json index_map_to_json(const std::map<int, std::vector<int>>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

inline Json decomposition_to_json(const CmDecomposition& d) {
  Json parts = Json::array();
  for (const CmPart& p : d.parts) parts.push_back(part_to_json(p));
  return Json{{"decomposable", true},
              {"parts", parts},
              {"A", d.a_set},
              {"B", d.b_set},
              {"C", d.c_set},
              {"C_i", index_map_to_json(d.chain_c)},
              {"C_i_prime", index_map_to_json(d.chain_c_prime)},
              {"alpha", d.alpha},
              {"beta", d.beta},
              {"expression", expr_to_json(d.expression)}};
}

inline Json recognition_to_json(const Recognition& r) {
  if (const auto* d = std::get_if<CmDecomposition>(&r)) return decomposition_to_json(*d);
  const auto& bad = std::get<NotDecomposable>(r);
  Json out{{"decomposable", false}, {"reason", to_string(bad.reason)}};
  if (!bad.detail.empty()) out["detail"] = bad.detail;
  return out;
}

/// Rebuilds a decomposition from its JSON; index sets are recomputed and
/// must match the stored ones.
inline CmDecomposition decomposition_from_json(const Json& j) {
  const Json& parts = detail::field(j, "parts", "decomposition");
  if (!parts.is_array()) throw InputError("decomposition.parts: expected an array");
  CmDecomposition d;
  for (std::size_t i = 0; i < parts.size(); ++i)
    d.parts.push_back(part_from_json(parts[i], "decomposition.parts[" + std::to_string(i) + "]"));
  d.expression = expr_from_json(detail::field(j, "expression", "decomposition"), "decomposition.expression");
  compute_statistics(d);
  if (detail::as_int(detail::field(j, "alpha", "decomposition"), "decomposition.alpha") != d.alpha ||
      detail::as_int(detail::field(j, "beta", "decomposition"), "decomposition.beta") != d.beta)
    throw InputError("decomposition: alpha/beta do not match the parts");
  return d;
}

// ---------------------------------------------------------------------------
// RegResult

inline Json reg_result_to_json(const RegResult& r) {
  Json out = Json::object();
  if (r.value) out["value"] = *r.value;
  else out["lower"] = r.lower, out["upper"] = r.upper;
  out["provenance"] = r.provenance;
  return out;
}

inline RegResult reg_result_from_json(const Json& j) {
  std::vector<std::string> why;
  if (j.contains("provenance")) why = j.at("provenance").get<std::vector<std::string>>();
  if (j.contains("value")) return RegResult::exact(detail::as_int(j.at("value"), "reg.value"), why);
  return RegResult::bounds(detail::as_int(detail::field(j, "lower", "reg"), "reg.lower"),
                           detail::as_int(detail::field(j, "upper", "reg"), "reg.upper"), why);
}

// ---------------------------------------------------------------------------
// BettiTable and the oracle report

inline Json betti_to_json(const BettiTable& t) {
  Json rows = Json::array();
  for (const auto& [ij, b] : t.entries) rows.push_back({ij.first, ij.second, b});
  return rows;
}

inline BettiTable betti_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("betti: expected an array of [i, j, b]");
  BettiTable t;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::vector<int> row = detail::as_int_list(j[k], "betti[" + std::to_string(k) + "]");
    if (row.size() != 3 || row[2] <= 0) throw InputError("betti[" + std::to_string(k) + "]: expected [i, j, b > 0]");
    t.entries[{row[0], row[1]}] = row[2];
  }
  return t;
}

inline Json oracle_report_to_json(const OracleReport& r) {
  return Json{{"betti", betti_to_json(r.betti)},
              {"reg", r.regularity},
              {"pd", r.projective_dimension},
              {"dim", r.dimension},
              {"depth", r.depth},
              {"cm", r.cohen_macaulay}};
}

}  // namespace beireg
