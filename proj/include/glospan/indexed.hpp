#pragma once

// Diagrams of commutative Q-algebras on an indexing system of BG: a value per
// orbit and a map for every admitted morphism of orbits.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "glospan/algebra.hpp"
#include "glospan/span_diagram.hpp"
#include "glospan/transfer.hpp"

namespace glospan {

struct IndexedDiagram {
  std::vector<AlgebraPtr> values;
  /// keyed by (source orbit, target orbit, minimal coset representative)
  std::map<std::tuple<int, int, Element>, AlgebraMap> maps;
};

inline std::string morphism_name(const OrbitCategory& oc, int i, int j, Element x) {
  return "G/" + oc.object(i).embedded.group->label() + "->G/" + oc.object(j).embedded.group->label() + "@" + std::to_string(x);
}

inline FunctorReport check_indexed_functor(const GroupPtr& g, const IndexingSystem& ix, const IndexedDiagram& d) {
  if (ix.base().size() != 1 || !ix.base().component(0)->same_table(*g))
    throw Error(ErrorKind::InvalidIndexingSystem, "indexing system is not on B" + g->label());
  const OrbitCategory& oc = ix.orbit_category();
  FunctorReport r;
  if (static_cast<int>(d.values.size()) != oc.size()) {
    r.violations.push_back("expected " + std::to_string(oc.size()) + " values, found " + std::to_string(d.values.size()));
    detail::sort_report(r);
    return r;
  }
  std::vector<std::tuple<int, int, Element>> admitted;
  for (int i = 0; i < oc.size(); ++i)
    for (int j = 0; j < oc.size(); ++j)
      for (Element x : oc.morphisms(i, j))
        if (ix.admits(i, j, x)) admitted.emplace_back(i, j, x);
  for (const auto& [key, m] : d.maps) {
    auto [i, j, x] = key;
    if (i < 0 || j < 0 || i >= oc.size() || j >= oc.size() ||
        std::find(admitted.begin(), admitted.end(), key) == admitted.end()) {
      r.violations.push_back("map at a morphism outside the indexing system");
      continue;
    }
    if (!same_algebra(m.source, d.values[static_cast<std::size_t>(i)]) || !same_algebra(m.target, d.values[static_cast<std::size_t>(j)]))
      r.violations.push_back(morphism_name(oc, i, j, x) + ": source or target algebra differs from the values");
    else if (auto e = m.defect())
      r.violations.push_back(morphism_name(oc, i, j, x) + ": " + *e);
  }
  for (const auto& key : admitted)
    if (!d.maps.count(key))
      r.violations.push_back("missing map " + morphism_name(oc, std::get<0>(key), std::get<1>(key), std::get<2>(key)));
  if (!r.violations.empty()) {
    detail::sort_report(r);
    return r;
  }
  for (int i = 0; i < oc.size(); ++i) {
    ++r.checked;
    const auto key = std::make_tuple(i, i, oc.coset_rep(i, g->identity()));
    if (!(d.maps.at(key) == AlgebraMap::identity(d.values[static_cast<std::size_t>(i)])))
      r.violations.push_back("identity of " + oc.object(i).embedded.group->label() + " is not sent to the identity");
  }
  for (const auto& [i, j, a] : admitted)
    for (const auto& [j2, k, b] : admitted) {
      if (j2 != j) continue;
      ++r.checked;
      const Element c = oc.compose(k, a, b, 0);
      const auto& lhs = d.maps.at({i, k, c});
      if (!(compose(d.maps.at({j, k, b}), d.maps.at({i, j, a})) == lhs))
        r.violations.push_back(morphism_name(oc, i, j, a) + " then " + morphism_name(oc, j, k, b) + " differs from " +
                               morphism_name(oc, i, k, c));
    }
  detail::sort_report(r);
  return r;
}

inline IndexedDiagram constant_indexed_diagram(const IndexingSystem& ix, const AlgebraPtr& a) {
  const OrbitCategory& oc = ix.orbit_category();
  IndexedDiagram d;
  d.values.assign(static_cast<std::size_t>(oc.size()), a);
  for (int i = 0; i < oc.size(); ++i)
    for (int j = 0; j < oc.size(); ++j)
      for (Element x : oc.morphisms(i, j))
        if (ix.admits(i, j, x)) d.maps.emplace(std::make_tuple(i, j, x), AlgebraMap::identity(a));
  return d;
}

}  // namespace glospan
