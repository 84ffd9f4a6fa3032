#pragma once

// Diagrams of commutative Q-algebras on the span category between the groups
// of a finite skeleton: backward legs surjective, forward legs in a chosen
// class of injections. A diagram stores an inflation for each surjection
// span and a norm for each injection span; a general span X <- R -> Y is
// evaluated as norm(R -> Y) ∘ inflation(X <- R).

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glospan/algebra.hpp"
#include "glospan/span.hpp"

namespace glospan {

/// Hom-sets, factorizations and composition table of the span category on a
/// skeleton of connected groupoids BG.
class SkeletonSpans {
 public:
  struct Factorization {
    int middle = 0;     // skeleton index of the apex
    int inflation = 0;  // class in Hom(source, middle)
    int norm = 0;       // class in Hom(middle, target)
  };

  SkeletonSpans(std::vector<GroupPtr> skeleton, LegClass norms = LegClass::faithful())
      : skeleton_(std::move(skeleton)), norms_(std::move(norms)) {
    const std::size_t n = skeleton_.size();
    homs_.resize(n * n);
    factors_.resize(n * n);
    composites_.resize(n * n * n);
  }

  int size() const { return static_cast<int>(skeleton_.size()); }
  const std::vector<GroupPtr>& skeleton() const { return skeleton_; }
  const GroupPtr& group(int i) const { return skeleton_[static_cast<std::size_t>(i)]; }
  const LegClass& norm_class() const { return norms_; }

  /// Skeleton index of a group with the same label or table.
  std::optional<int> find(const GroupPtr& g) const {
    for (int i = 0; i < size(); ++i)
      if (group(i) == g || group(i)->same_table(*g)) return i;
    for (int i = 0; i < size(); ++i)
      if (group(i)->label() == g->label()) return i;
    return std::nullopt;
  }
  std::optional<int> find(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (group(i)->label() == label) return i;
    return std::nullopt;
  }

  const HomSet& hom(int x, int y) const {
    auto& slot = homs_[index(x, y)];
    if (!slot)
      slot = std::make_unique<HomSet>(FiniteGroupoid::of(group(x)), FiniteGroupoid::of(group(y)), LegClass::full(), norms_,
                                      std::max(group(x)->order(), group(y)->order()));
    return *slot;
  }

  std::string id(int x, int y, int k) const { return hom(x, y).id(k); }

  /// (x, y, k) for an identifier "X->Y#k".
  std::optional<std::tuple<int, int, int>> parse_id(const std::string& id) const {
    auto arrow = id.find("->");
    auto hash = id.rfind('#');
    if (arrow == std::string::npos || hash == std::string::npos || hash < arrow) return std::nullopt;
    auto x = find(id.substr(0, arrow));
    auto y = find(id.substr(arrow + 2, hash - arrow - 2));
    if (!x || !y) return std::nullopt;
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(id.substr(hash + 1), &used);
      if (used != id.size() - hash - 1) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (k < 0 || k >= hom(*x, *y).size()) return std::nullopt;
    return std::make_tuple(*x, *y, k);
  }

  /// Apex is the whole target group: X <- Y = Y.
  bool is_inflation(int x, int y, int k) const {
    const auto& h = hom(x, y);
    return h.apexes()[static_cast<std::size_t>(h.entry(k).apex)].group.group->order() == group(y)->order();
  }
  /// Backward leg is an isomorphism: X = R -> Y.
  bool is_norm(int x, int y, int k) const {
    const auto& h = hom(x, y);
    return h.apexes()[static_cast<std::size_t>(h.entry(k).apex)].group.group->order() == group(x)->order();
  }

  int identity(int x) const {
    auto k = hom(x, x).classify(Span::identity(FiniteGroupoid::of(group(x))));
    if (!k) throw Error(ErrorKind::ClassViolation, "identity span is not in the hom-set");
    return *k;
  }

  /// Class of a span X <- M -> Y with connected apex in Hom(x, y).
  int classify(int x, int y, const Span& s) const {
    auto k = hom(x, y).classify(s);
    if (!k) throw Error(ErrorKind::ClassViolation, "span is not in the hom-set " + group(x)->label() + "->" + group(y)->label());
    return *k;
  }

  /// Transports the apex of class k to a skeleton group and splits the span.
  const Factorization& factor(int x, int y, int k) const {
    auto& row = factors_[index(x, y)];
    if (row.empty()) row.resize(static_cast<std::size_t>(hom(x, y).size()));
    auto& slot = row[static_cast<std::size_t>(k)];
    if (slot) return *slot;
    const Span& s = hom(x, y).at(k);
    const GroupPtr& r = s.apex().component(0);
    std::optional<GroupHom> theta;
    int middle = -1;
    for (int i = 0; i < size() && !theta; ++i) {
      if (group(i)->order() != r->order()) continue;
      if (group(i)->same_table(*r)) theta = GroupHom{group(i), r, identity_hom(r).map};
      else theta = find_isomorphism(group(i), r);
      if (theta) middle = i;
    }
    if (!theta)
      throw Error(ErrorKind::SkeletonIncomplete, "no skeleton group is isomorphic to the apex of " + id(x, y, k));
    const FiniteGroupoid sm = FiniteGroupoid::of(group(middle));
    auto back = GroupoidMap::make_trusted(sm, s.left(), {0}, {compose(s.back.hom(0), *theta)});
    auto fwd = GroupoidMap::make_trusted(sm, s.right(), {0}, {compose(s.fwd.hom(0), *theta)});
    auto id_m = GroupoidMap::identity(sm);
    Factorization f;
    f.middle = middle;
    f.inflation = classify(x, middle, Span{back, id_m, LegClass::full(), norms_});
    f.norm = classify(middle, y, Span{id_m, fwd, LegClass::full(), norms_});
    slot = f;
    return *slot;
  }

  /// Class of s2 ∘ s1 for s1 = k1 in Hom(x, y) and s2 = k2 in Hom(y, z).
  int compose_classes(int x, int y, int z, int k1, int k2) const {
    auto& table = composites_[(static_cast<std::size_t>(x) * skeleton_.size() + static_cast<std::size_t>(y)) * skeleton_.size() +
                              static_cast<std::size_t>(z)];
    const int n2 = hom(y, z).size();
    if (table.empty()) table.assign(static_cast<std::size_t>(hom(x, y).size() * n2), -1);
    int& slot = table[static_cast<std::size_t>(k1 * n2 + k2)];
    if (slot < 0) {
      Span c = compose(hom(y, z).at(k2), hom(x, y).at(k1));
      if (!c.apex().connected())
        throw Error(ErrorKind::ClassViolation, "composite of " + id(x, y, k1) + " and " + id(y, z, k2) + " is disconnected");
      slot = classify(x, z, c);
    }
    return slot;
  }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(x) * skeleton_.size() + static_cast<std::size_t>(y); }

  std::vector<GroupPtr> skeleton_;
  LegClass norms_;
  mutable std::vector<std::unique_ptr<HomSet>> homs_;
  mutable std::vector<std::vector<std::optional<Factorization>>> factors_;
  mutable std::vector<std::vector<int>> composites_;
};

struct SpanDiagram {
  std::vector<GroupPtr> skeleton;
  std::vector<AlgebraPtr> values;
  LegClass norm_class = LegClass::faithful();
  /// keyed by span identifiers "X->Y#k"
  std::map<std::string, AlgebraMap> inflations;
  std::map<std::string, AlgebraMap> norms;
};

struct FunctorReport {
  bool ok = true;
  long long checked = 0;
  std::vector<std::string> violations;
};

namespace detail {

inline void sort_report(FunctorReport& r) {
  std::sort(r.violations.begin(), r.violations.end());
  r.violations.erase(std::unique(r.violations.begin(), r.violations.end()), r.violations.end());
  r.ok = r.violations.empty();
}

}  // namespace detail

/// Checks that the diagram defines a functor on the span category of its
/// skeleton: every generating map is present and is an algebra map between
/// the right values, isomorphism spans carry equal inflation and norm,
/// identities go to identities, and every composable pair of span classes
/// is sent to the composite of the images.
inline FunctorReport check_functor(const SpanDiagram& d, const SkeletonSpans& spans) {
  FunctorReport r;
  const int n = spans.size();
  if (static_cast<int>(d.values.size()) != n) {
    r.violations.push_back("expected " + std::to_string(n) + " values, found " + std::to_string(d.values.size()));
    detail::sort_report(r);
    return r;
  }
  for (int i = 0; i < n; ++i)
    if (auto e = d.values[static_cast<std::size_t>(i)]->defect()) r.violations.push_back("value at " + spans.group(i)->label() + ": " + *e);

  // generating maps
  auto check_entries = [&](const std::map<std::string, AlgebraMap>& entries, bool inflation) {
    const std::string kind = inflation ? "inflation" : "norm";
    for (const auto& [key, m] : entries) {
      ++r.checked;
      auto parsed = spans.parse_id(key);
      if (!parsed) {
        r.violations.push_back(kind + " " + key + ": unknown span identifier");
        continue;
      }
      auto [x, y, k] = *parsed;
      if (inflation ? !spans.is_inflation(x, y, k) : !spans.is_norm(x, y, k)) {
        r.violations.push_back(kind + " " + key + ": span is not of this kind");
        continue;
      }
      if (!same_algebra(m.source, d.values[static_cast<std::size_t>(x)]) || !same_algebra(m.target, d.values[static_cast<std::size_t>(y)])) {
        r.violations.push_back(kind + " " + key + ": source or target algebra differs from the diagram values");
        continue;
      }
      if (auto e = m.defect()) r.violations.push_back(kind + " " + key + ": " + *e);
    }
  };
  check_entries(d.inflations, true);
  check_entries(d.norms, false);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int k = 0; k < spans.hom(x, y).size(); ++k) {
        const std::string key = spans.id(x, y, k);
        const bool infl = spans.is_inflation(x, y, k), nrm = spans.is_norm(x, y, k);
        if (infl && !d.inflations.count(key)) r.violations.push_back("missing inflation " + key);
        if (nrm && !d.norms.count(key)) r.violations.push_back("missing norm " + key);
        if (infl && nrm && d.inflations.count(key) && d.norms.count(key) && !(d.inflations.at(key) == d.norms.at(key)))
          r.violations.push_back("isomorphism " + key + ": inflation and norm differ");
      }
  if (!r.violations.empty()) {
    detail::sort_report(r);
    return r;
  }

  // evaluation of every span class
  std::map<std::tuple<int, int, int>, AlgebraMap> value;
  auto eval = [&](int x, int y, int k) -> const AlgebraMap& {
    auto key = std::make_tuple(x, y, k);
    auto it = value.find(key);
    if (it != value.end()) return it->second;
    const auto& f = spans.factor(x, y, k);
    const auto& infl = d.inflations.at(spans.id(x, f.middle, f.inflation));
    const auto& nrm = d.norms.at(spans.id(f.middle, y, f.norm));
    return value.emplace(key, compose(nrm, infl)).first->second;
  };

  for (int x = 0; x < n; ++x) {
    ++r.checked;
    const int id = spans.identity(x);
    if (!(eval(x, x, id) == AlgebraMap::identity(d.values[static_cast<std::size_t>(x)])))
      r.violations.push_back("identity " + spans.id(x, x, id) + " is not sent to the identity");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int k1 = 0; k1 < spans.hom(x, y).size(); ++k1)
          for (int k2 = 0; k2 < spans.hom(y, z).size(); ++k2) {
            ++r.checked;
            const int k = spans.compose_classes(x, y, z, k1, k2);
            if (!(compose(eval(y, z, k2), eval(x, y, k1)) == eval(x, z, k)))
              r.violations.push_back("composite of " + spans.id(x, y, k1) + " then " + spans.id(y, z, k2) + " differs from " +
                                     spans.id(x, z, k));
          }
  detail::sort_report(r);
  return r;
}

inline FunctorReport check_functor(const SpanDiagram& d) {
  SkeletonSpans spans(d.skeleton, d.norm_class);
  return check_functor(d, spans);
}

/// Every value a, every generating map the identity.
inline SpanDiagram constant_diagram(const SkeletonSpans& spans, const AlgebraPtr& a) {
  SpanDiagram d;
  d.skeleton = spans.skeleton();
  d.norm_class = spans.norm_class();
  d.values.assign(static_cast<std::size_t>(spans.size()), a);
  for (int x = 0; x < spans.size(); ++x)
    for (int y = 0; y < spans.size(); ++y)
      for (int k = 0; k < spans.hom(x, y).size(); ++k) {
        if (spans.is_inflation(x, y, k)) d.inflations.emplace(spans.id(x, y, k), AlgebraMap::identity(a));
        if (spans.is_norm(x, y, k)) d.norms.emplace(spans.id(x, y, k), AlgebraMap::identity(a));
      }
  return d;
}

/// X -> Q[Hom(BG, X)] truncated above the given degree; a span acts on
/// generators by postcomposition.
inline SpanDiagram free_functor(const GroupPtr& g, const SkeletonSpans& spans, int degree = 2) {
  auto gi = spans.find(g);
  if (!gi) throw Error(ErrorKind::SkeletonIncomplete, g->label() + " is not in the skeleton");
  SpanDiagram d;
  d.skeleton = spans.skeleton();
  d.norm_class = spans.norm_class();
  const int n = spans.size();
  std::vector<int> gens(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    gens[static_cast<std::size_t>(x)] = spans.hom(*gi, x).size();
    d.values.push_back(truncated_polynomial(gens[static_cast<std::size_t>(x)], degree));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int k = 0; k < spans.hom(x, y).size(); ++k) {
        const bool infl = spans.is_inflation(x, y, k), nrm = spans.is_norm(x, y, k);
        if (!infl && !nrm) continue;
        std::vector<int> send;
        for (int t = 0; t < gens[static_cast<std::size_t>(x)]; ++t) send.push_back(spans.compose_classes(*gi, x, y, t, k));
        auto m = variable_substitution(d.values[static_cast<std::size_t>(x)], gens[static_cast<std::size_t>(x)],
                                       d.values[static_cast<std::size_t>(y)], gens[static_cast<std::size_t>(y)], degree, send);
        if (infl) d.inflations.emplace(spans.id(x, y, k), m);
        if (nrm) d.norms.emplace(spans.id(x, y, k), std::move(m));
      }
  return d;
}

inline SpanDiagram free_functor(const GroupPtr& g, const std::vector<GroupPtr>& skeleton, int degree = 2,
                                const LegClass& norms = LegClass::faithful()) {
  SkeletonSpans spans(skeleton, norms);
  return free_functor(g, spans, degree);
}

}  // namespace glospan
