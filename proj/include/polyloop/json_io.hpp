#pragma once

// JSON documents for complexes, series, products, traces and oracle
// reports. Integers that overflow 64 bits are written as decimal strings.

#include "polyloop/decomposition.hpp"
#include "polyloop/error.hpp"
#include "polyloop/graded_series.hpp"
#include "polyloop/homology_oracle.hpp"
#include "polyloop/homotopy_algebra.hpp"
#include "polyloop/integer_linalg.hpp"
#include "polyloop/simplicial_complex.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace polyloop::io {

using Json = nlohmann::json;

inline Json to_json(const Integer &x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from_json(const Json &j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception &) {
    }
  }
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

inline Json to_json(std::span<const Integer> xs) {
  Json a = Json::array();
  for (const auto &x : xs) a.push_back(to_json(x));
  return a;
}

inline Json series_to_json(const GradedSeries &s, std::optional<int> expand_to = std::nullopt) {
  Json j{{"num", to_json(s.numerator().coefficients())}, {"den", to_json(s.denominator().coefficients())}};
  if (j["num"].empty()) j["num"] = Json::array({0});
  if (expand_to) j["expansion"] = to_json(s.expand(*expand_to));
  return j;
}

inline GradedSeries series_from_json(const Json &j) {
  auto poly = [](const Json &a) {
    if (!a.is_array()) throw Error(ErrorCode::ParseError, "series coefficients must be an array");
    std::vector<Integer> c;
    for (const auto &x : a) c.push_back(integer_from_json(x));
    return Polynomial(std::move(c));
  };
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw Error(ErrorCode::ParseError, "series needs num and den arrays");
  return GradedSeries(poly(j.at("num")), poly(j.at("den")));
}

inline Json product_to_json(const PProduct &p) {
  Json factors = Json::array();
  for (const auto &f : p.factors())
    factors.push_back({{"kind", f.factor.kind == FactorKind::Sphere ? "sphere" : "loop_sphere"},
                       {"dim", f.factor.dim},
                       {"mult", to_json(f.mult)}});
  return {{"factors", factors}, {"series", series_to_json(p.series())}, {"cutoff", p.cutoff()},
          {"expansion", to_json(p.series().expand(p.cutoff()))}};
}

inline PProduct product_from_json(const Json &j) {
  const int D = j.value("cutoff", kDefaultCutoff);
  PProduct p(D);
  p.set_series(series_from_json(j.at("series")));
  for (const auto &f : j.at("factors")) {
    const std::string kind = f.at("kind").get<std::string>();
    const int dim = f.at("dim").get<int>();
    const PFactor pf = kind == "sphere" ? PFactor::sphere(dim) : PFactor::loop_sphere(dim);
    p.add(pf, integer_from_json(f.at("mult")));
  }
  return p;
}

inline Json complex_to_json(const SimplicialComplex &K) {
  return {{"m", K.vertex_count()}, {"facets", K.facet_labels()}};
}

inline SimplicialComplex complex_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("facets"))
    throw Error(ErrorCode::ParseError, "complex document needs \"m\" and \"facets\"");
  try {
    const int m = j.at("m").get<int>();
    const auto facets = j.at("facets").get<std::vector<std::vector<int>>>();
    return validate_complex(facets, m);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline Json trace_to_json(const TraceNode &node) {
  Json j{{"rule", node.rule},
         {"anchor", node.anchor},
         {"complex", {{"m", node.vertex_count}, {"facets", node.facets}}},
         {"output", series_to_json(node.output)}};
  if (node.split_vertex != 0) j["split_vertex"] = node.split_vertex;
  if (!node.inputs.empty()) {
    Json in = Json::object();
    for (const auto &[k, s] : node.inputs) in[k] = series_to_json(s);
    j["inputs"] = in;
  }
  if (!node.children.empty()) {
    Json ch = Json::array();
    for (const auto &e : node.children)
      ch.push_back({{"role", e.role}, {"labels", e.labels}, {"node", trace_to_json(*e.node)}});
    j["children"] = ch;
  }
  return j;
}

inline Json report_to_json(const OracleReport &r) {
  Json checks = Json::array();
  for (const auto &c : r.checks) {
    Json j{{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}};
    if (c.first_divergent_degree) j["first_divergent_degree"] = *c.first_divergent_degree;
    if (c.engine_series) j["engine_series"] = to_json(*c.engine_series);
    if (c.reference_series) j["reference_series"] = to_json(*c.reference_series);
    checks.push_back(std::move(j));
  }
  Json out{{"status", r.passed() ? "PASS" : "FAIL"}, {"checks", checks}};
  if (r.decomposition) out["product"] = product_to_json(r.decomposition->product);
  return out;
}

inline IntMatrix matrix_from_json(const Json &j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  std::vector<IntVector> rows;
  for (const auto &r : j) {
    if (!r.is_array()) throw Error(ErrorCode::ParseError, "matrix row must be an array");
    IntVector v;
    for (const auto &x : r) v.push_back(integer_from_json(x));
    rows.push_back(std::move(v));
  }
  return IntMatrix::from_rows(rows);
}

inline IntVector vector_from_json(const Json &j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "vector must be an array");
  IntVector v;
  for (const auto &x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json vectors_to_json(const std::vector<IntVector> &vs) {
  Json a = Json::array();
  for (const auto &v : vs) a.push_back(to_json(v));
  return a;
}

} // namespace polyloop::io
