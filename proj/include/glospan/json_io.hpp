#pragma once

// JSON reading and writing (schema 1) for algebras, span diagrams, transfer
// systems and reports. Rationals are written as strings such as "-3/2".

#include <string>
#include <vector>

#include <json.hpp>

#include "glospan/span_diagram.hpp"
#include "glospan/transfer.hpp"

namespace glospan {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  parse_fail("expected a rational, got " + j.dump());
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline void check_schema(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || !j.at("schema").is_number_integer() || j.at("schema").get<int>() != kSchemaVersion)
    parse_fail("expected \"schema\": " + std::to_string(kSchemaVersion));
}

}  // namespace detail

inline Json to_json(const SparseVec& v, int dim) {
  Json out = Json::array();
  for (const auto& q : to_dense(v, dim)) out.push_back(to_string(q));
  return out;
}

inline Json algebra_to_json(const QAlgebra& a) {
  Json j;
  j["label"] = a.label;
  j["dim"] = a.dim;
  j["unit"] = to_json(a.unit, a.dim);
  Json products = Json::array();
  for (int i = 0; i < a.dim; ++i)
    for (int k = i; k < a.dim; ++k) {
      const auto& p = a.product(i, k);
      if (p.empty()) continue;
      Json terms = Json::array();
      for (const auto& [t, q] : p) terms.push_back(Json::array({t, to_string(q)}));
      products.push_back(Json::array({i, k, terms}));
    }
  j["products"] = products;
  if (a.grading) j["grading"] = *a.grading;
  return j;
}

/// Products are listed for i <= j and mirrored.
inline AlgebraPtr algebra_from_json(const Json& j) {
  auto a = std::make_shared<QAlgebra>();
  try {
    a->dim = detail::field(j, "dim").get<int>();
    if (a->dim < 1) detail::parse_fail("algebra dimension must be positive");
    a->label = j.value("label", std::string("A"));
    const Json& unit = detail::field(j, "unit");
    if (!unit.is_array() || static_cast<int>(unit.size()) != a->dim) detail::parse_fail("unit has the wrong length");
    std::vector<Rational> u;
    for (const auto& q : unit) u.push_back(detail::rational_from_json(q));
    a->unit = from_dense(u);
    a->products.assign(static_cast<std::size_t>(a->dim * a->dim), {});
    for (const auto& entry : detail::field(j, "products")) {
      if (!entry.is_array() || entry.size() != 3) detail::parse_fail("product entries are [i, j, terms]");
      const int i = entry[0].get<int>(), k = entry[1].get<int>();
      if (i < 0 || k < 0 || i >= a->dim || k >= a->dim) detail::parse_fail("product index out of range");
      SparseVec v;
      for (const auto& term : entry[2]) {
        const int t = term.at(0).get<int>();
        if (t < 0 || t >= a->dim) detail::parse_fail("product term index out of range");
        axpy(v, detail::rational_from_json(term.at(1)), basis_vector(t));
      }
      a->products[static_cast<std::size_t>(i * a->dim + k)] = v;
      a->products[static_cast<std::size_t>(k * a->dim + i)] = v;
    }
    if (j.contains("grading")) {
      auto g = j.at("grading").get<std::vector<int>>();
      if (static_cast<int>(g.size()) != a->dim) detail::parse_fail("grading has the wrong length");
      a->grading = std::move(g);
    }
  } catch (const nlohmann::json::exception& e) {
    detail::parse_fail(std::string("malformed algebra: ") + e.what());
  }
  return a;
}

inline Json map_to_json(const AlgebraMap& f) {
  Json rows = Json::array();
  for (const auto& row : to_matrix(f)) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    rows.push_back(r);
  }
  return rows;
}

inline AlgebraMap map_from_json(const Json& rows, const AlgebraPtr& source, const AlgebraPtr& target) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != target->dim) detail::parse_fail("matrix needs one row per target basis vector");
  Matrix m;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != source->dim) detail::parse_fail("matrix needs one column per source basis vector");
    std::vector<Rational> r;
    for (const auto& q : row) r.push_back(detail::rational_from_json(q));
    m.push_back(std::move(r));
  }
  return from_matrix(source, target, m);
}

// ---------------------------------------------------------------------------
// Span diagrams

inline Json diagram_to_json(const SpanDiagram& d) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "span_diagram";
  Json sk = Json::array();
  for (const auto& g : d.skeleton) sk.push_back(g->label());
  j["skeleton"] = sk;
  j["norm_class"] = d.norm_class.name();
  Json values = Json::array();
  for (const auto& v : d.values) values.push_back(algebra_to_json(*v));
  j["values"] = values;
  Json infl = Json::object(), nrm = Json::object();
  for (const auto& [k, m] : d.inflations) infl[k] = map_to_json(m);
  for (const auto& [k, m] : d.norms) nrm[k] = map_to_json(m);
  j["inflations"] = infl;
  j["norms"] = nrm;
  return j;
}

/// Skeleton groups are preset names; map keys "X->Y#k" name their feet.
inline SpanDiagram diagram_from_json(const Json& j, int order_bound = kDefaultOrderBound) {
  detail::check_schema(j);
  SpanDiagram d;
  try {
    for (const auto& name : detail::field(j, "skeleton")) d.skeleton.push_back(make_group(name.get<std::string>(), order_bound));
    d.norm_class = LegClass::parse(j.value("norm_class", std::string("faithful")));
    if (!d.norm_class.within_faithful()) detail::parse_fail("norm class must consist of faithful maps");
    const Json& values = detail::field(j, "values");
    if (!values.is_array() || values.size() != d.skeleton.size()) detail::parse_fail("need one value per skeleton group");
    for (const auto& v : values) d.values.push_back(algebra_from_json(v));
    auto foot = [&](const std::string& label) -> int {
      for (std::size_t i = 0; i < d.skeleton.size(); ++i)
        if (d.skeleton[i]->label() == label) return static_cast<int>(i);
      detail::parse_fail("map key names '" + label + "', which is not in the skeleton");
    };
    auto read = [&](const char* key, std::map<std::string, AlgebraMap>& out) {
      if (!j.contains(key)) return;
      for (const auto& [id, rows] : j.at(key).items()) {
        auto arrow = id.find("->");
        auto hash = id.rfind('#');
        if (arrow == std::string::npos || hash == std::string::npos || hash < arrow) detail::parse_fail("bad span identifier '" + id + "'");
        const int x = foot(id.substr(0, arrow)), y = foot(id.substr(arrow + 2, hash - arrow - 2));
        out.emplace(id, map_from_json(rows, d.values[static_cast<std::size_t>(x)], d.values[static_cast<std::size_t>(y)]));
      }
    };
    read("inflations", d.inflations);
    read("norms", d.norms);
  } catch (const nlohmann::json::exception& e) {
    detail::parse_fail(std::string("malformed diagram: ") + e.what());
  }
  return d;
}

inline Json report_to_json(const FunctorReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "functor_report";
  j["ok"] = r.ok;
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  return j;
}

// ---------------------------------------------------------------------------
// Groups, maps and spans

inline Json subgroup_to_json(ElementMask m) { return mask_elements(m); }

inline ElementMask subgroup_from_json(const FiniteGroup& g, const Json& j) {
  ElementMask m = 0;
  for (const auto& e : j) {
    const int x = e.get<int>();
    if (x < 0 || x >= g.order()) detail::parse_fail("element index out of range");
    m |= bit(x);
  }
  if (!is_subgroup_mask(g, m)) detail::parse_fail("element list is not a subgroup");
  return m;
}

inline Json groupoid_map_to_json(const GroupoidMap& f) {
  Json j;
  j["source"] = f.source().label;
  j["target"] = f.target().label;
  Json comps = Json::array();
  for (int i = 0; i < f.source().size(); ++i) {
    Json c;
    c["group"] = f.source().component(i)->label();
    c["order"] = f.source().component(i)->order();
    c["to"] = f.assigned(i);
    c["map"] = f.hom(i).map;
    comps.push_back(c);
  }
  j["components"] = comps;
  return j;
}

inline Json span_to_json(const Span& s) {
  Json j;
  j["back"] = groupoid_map_to_json(s.back);
  j["forward"] = groupoid_map_to_json(s.fwd);
  return j;
}

// ---------------------------------------------------------------------------
// Transfer systems

inline Json transfer_system_to_json(const TransferSystem& t) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "transfer_system";
  j["group"] = t.group()->label();
  Json pairs = Json::array();
  for (auto [h, k] : t.pairs()) {
    Json p;
    p["sub"] = subgroup_to_json(h);
    p["sup"] = subgroup_to_json(k);
    pairs.push_back(p);
  }
  j["pairs"] = pairs;
  return j;
}

inline TransferSystem transfer_system_from_json(const Json& j, int order_bound = kDefaultOrderBound) {
  detail::check_schema(j);
  try {
    auto g = make_group(detail::field(j, "group").get<std::string>(), order_bound);
    std::vector<std::pair<ElementMask, ElementMask>> pairs;
    for (const auto& p : detail::field(j, "pairs"))
      pairs.emplace_back(subgroup_from_json(*g, detail::field(p, "sub")), subgroup_from_json(*g, detail::field(p, "sup")));
    return TransferSystem::from_pairs(g, pairs);
  } catch (const nlohmann::json::exception& e) {
    detail::parse_fail(std::string("malformed transfer system: ") + e.what());
  }
}

}  // namespace glospan
