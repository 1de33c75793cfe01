#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "beireg/error.hpp"
#include "beireg/families.hpp"
#include "beireg/graph.hpp"

namespace beireg {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name))
    throw InputError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

inline int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> as_int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graph: {"n": <int>, "edges": [[u,v], ...]}, 1-based, u < v, sorted.

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return Json{{"n", g.order()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
  int n = detail::as_int(detail::field(j, "n", "graph"), "graph.n");
  const Json& edges = detail::field(j, "edges", "graph");
  if (!edges.is_array()) throw InputError("graph.edges: expected an array");
  std::vector<Edge> list;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string where = "graph.edges[" + std::to_string(i) + "]";
    std::vector<int> pair = detail::as_int_list(edges[i], where);
    if (pair.size() != 2) throw InputError(where + ": expected [u, v]");
    if (pair[0] == pair[1]) throw InputError(where + ": self-loop");
    if (pair[0] > pair[1]) throw InputError(where + ": expected u < v");
    list.push_back({pair[0], pair[1]});
  }
  for (std::size_t i = 1; i < list.size(); ++i) {
    if (list[i - 1] == list[i])
      throw InputError("graph.edges[" + std::to_string(i) + "]: duplicate edge");
    if (list[i] < list[i - 1])
      throw InputError("graph.edges[" + std::to_string(i) + "]: edges not sorted");
  }
  try {
    return Graph(n, list);
  } catch (const InputError& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// GraphExpr: {"F": m} | {"fan": {"n":..., "blocks":[{"W":[...], "a":[...]}]}}
//          | {"star": [e1, e2, f1?, f2?]} | {"circ": [e1, e2, f1?, f2?]}

inline Json fan_to_json(const FanSpec& s) {
  Json blocks = Json::array();
  for (const FanBlock& b : s.blocks) blocks.push_back({{"W", b.base}, {"a", b.sizes}});
  return Json{{"n", s.n}, {"blocks", blocks}};
}

inline FanSpec fan_from_json(const Json& j, const std::string& where) {
  FanSpec s;
  s.n = detail::as_int(detail::field(j, "n", where), where + ".n");
  const Json& blocks = detail::field(j, "blocks", where);
  if (!blocks.is_array()) throw InputError(where + ".blocks: expected an array");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::string at = where + ".blocks[" + std::to_string(i) + "]";
    FanBlock b;
    b.base = detail::as_int_list(detail::field(blocks[i], "W", at), at + ".W");
    b.sizes = detail::as_int_list(detail::field(blocks[i], "a", at), at + ".a");
    s.blocks.push_back(std::move(b));
  }
  try {
    s.validate();
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return s;
}

inline Json expr_to_json(const ExprPtr& e) {
  if (const auto* f = std::get_if<FLeaf>(&e->node)) return Json{{"F", f->m}};
  if (const auto* fan = std::get_if<FanLeaf>(&e->node)) return Json{{"fan", fan_to_json(fan->spec)}};
  const auto& g = std::get<GlueNode>(e->node);
  Json args = Json::array({expr_to_json(g.left), expr_to_json(g.right)});
  if (g.f1 || g.f2) {
    args.push_back(g.f1 ? Json(*g.f1) : Json(nullptr));
    if (g.f2) args.push_back(*g.f2);
  }
  return Json{{g.op == GlueOp::Star ? "star" : "circ", args}};
}

inline ExprPtr expr_from_json(const Json& j, const std::string& where = "expr") {
  if (!j.is_object() || j.size() != 1)
    throw InputError(where + ": expected an object with exactly one of F, fan, star, circ");
  if (j.contains("F")) {
    int m = detail::as_int(j.at("F"), where + ".F");
    if (m < 1) throw InputError(where + ".F: m must be >= 1");
    return expr_F(m);
  }
  if (j.contains("fan")) return expr_fan(fan_from_json(j.at("fan"), where + ".fan"));
  for (GlueOp op : {GlueOp::Star, GlueOp::Circ}) {
    const char* key = op == GlueOp::Star ? "star" : "circ";
    if (!j.contains(key)) continue;
    std::string at = where + "." + key;
    const Json& args = j.at(key);
    if (!args.is_array() || args.size() < 2 || args.size() > 4)
      throw InputError(at + ": expected [e1, e2, f1?, f2?]");
    auto vertex = [&](std::size_t i) -> std::optional<int> {
      if (args.size() <= i || args[i].is_null()) return std::nullopt;
      return detail::as_int(args[i], at + "[" + std::to_string(i) + "]");
    };
    return expr_glue(op, expr_from_json(args[0], at + "[0]"), expr_from_json(args[1], at + "[1]"),
                     vertex(2), vertex(3));
  }
  throw InputError(where + ": unknown expression kind \"" + j.begin().key() + "\"");
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": malformed JSON: " + e.what());
  }
}

/// Reads a JSON document from a path, or from stdin when path is "-".
inline Json read_json_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    buf << in.rdbuf();
  }
  return parse_json_text(buf.str(), path);
}

}  // namespace beireg
