#pragma once

// Spans X <- M -> Y of finite groupoids: composition by homotopy pullback,
// isomorphism of spans, span automorphisms and the finite hom-sets of the
// homotopy category when the forward legs are faithful.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "glospan/groupoid.hpp"
#include "glospan/presets.hpp"

namespace glospan {

/// A wide subcategory of finite groupoids, tested componentwise.
class LegClass {
 public:
  enum class Kind { all, full, faithful, fold, iso, custom };
  /// Called on each connected component of a map.
  using Predicate = std::function<bool(const GroupoidMap&)>;

  static LegClass all() { return LegClass(Kind::all, "all"); }
  static LegClass full() { return LegClass(Kind::full, "full"); }
  static LegClass faithful() { return LegClass(Kind::faithful, "faithful"); }
  static LegClass fold() { return LegClass(Kind::fold, "fold"); }
  static LegClass iso() { return LegClass(Kind::iso, "iso"); }
  /// within_faithful declares that every admitted map is faithful.
  static LegClass custom(std::string name, Predicate p, bool within_faithful) {
    LegClass c(Kind::custom, std::move(name));
    c.predicate_ = std::move(p);
    c.within_faithful_ = within_faithful;
    return c;
  }

  static LegClass parse(std::string_view s) {
    if (s == "all") return all();
    if (s == "full") return full();
    if (s == "faithful") return faithful();
    if (s == "fold") return fold();
    if (s == "iso") return iso();
    throw Error(ErrorKind::ParseError, "unknown leg class '" + std::string(s) + "'");
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  bool within_faithful() const {
    return kind_ == Kind::faithful || kind_ == Kind::fold || kind_ == Kind::iso ||
           (kind_ == Kind::custom && within_faithful_);
  }

  bool contains(const GroupoidMap& f) const {
    switch (kind_) {
      case Kind::all: return true;
      case Kind::full: return is_full(f);
      case Kind::faithful: return is_faithful(f);
      case Kind::fold: return is_fold(f);
      case Kind::iso: return is_equivalence(f);
      case Kind::custom:
        for (int i = 0; i < f.source().size(); ++i)
          if (!predicate_(f.component_map(i))) return false;
        return true;
    }
    return false;
  }

 private:
  LegClass(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  Predicate predicate_;
  bool within_faithful_ = false;
};

/// X <- M -> Y with the classes its legs are declared to lie in.
struct Span {
  GroupoidMap back;  // M -> X
  GroupoidMap fwd;   // M -> Y
  LegClass back_class = LegClass::all();
  LegClass fwd_class = LegClass::all();

  const FiniteGroupoid& left() const { return back.target(); }
  const FiniteGroupoid& apex() const { return back.source(); }
  const FiniteGroupoid& right() const { return fwd.target(); }

  static Span make(GroupoidMap back, GroupoidMap fwd, LegClass back_class = LegClass::all(),
                   LegClass fwd_class = LegClass::all()) {
    if (!(back.source() == fwd.source())) throw Error(ErrorKind::GroupMismatch, "span legs have different sources");
    if (!back_class.contains(back))
      throw Error(ErrorKind::ClassViolation, "backward leg is not in class " + back_class.name());
    if (!fwd_class.contains(fwd))
      throw Error(ErrorKind::ClassViolation, "forward leg is not in class " + fwd_class.name());
    return {std::move(back), std::move(fwd), std::move(back_class), std::move(fwd_class)};
  }

  static Span identity(const FiniteGroupoid& x, LegClass back_class = LegClass::all(),
                       LegClass fwd_class = LegClass::all()) {
    auto id = GroupoidMap::identity(x);
    return make(id, id, std::move(back_class), std::move(fwd_class));
  }
};

/// s2 ∘ s1 for s1: X -> Y and s2: Y -> Z. The composite keeps the backward
/// class of s1 and the forward class of s2.
inline Span compose(const Span& s2, const Span& s1) {
  if (!(s1.right() == s2.left()))
    throw Error(ErrorKind::FeetMismatch, "cannot compose: right foot " + s1.right().label + " vs left foot " + s2.left().label);
  auto pb = homotopy_pullback(s1.fwd, s2.back);
  auto back = compose(s1.back, pb.to_left);
  auto fwd = compose(s2.fwd, pb.to_right);
  if (!s1.back_class.contains(back))
    throw Error(ErrorKind::ClassViolation, "composite backward leg left class " + s1.back_class.name());
  if (!s2.fwd_class.contains(fwd))
    throw Error(ErrorKind::ClassViolation, "composite forward leg left class " + s2.fwd_class.name());
  return {std::move(back), std::move(fwd), s1.back_class, s2.fwd_class};
}

// ---------------------------------------------------------------------------
// Isomorphisms of spans

namespace detail {

inline std::vector<Element> inverse_on_image(const GroupHom& f) {
  std::vector<Element> inv(static_cast<std::size_t>(f.target->order()), -1);
  for (Element x = 0; x < f.source->order(); ++x) inv[static_cast<std::size_t>(f(x))] = x;
  return inv;
}

inline std::vector<Element> compose_maps(const std::vector<Element>& outer, const std::vector<Element>& inner) {
  std::vector<Element> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

// Isomorphisms psi: M1_i -> M2_j, up to conjugation in M2_j, such that both
// legs of s2 composed with psi are conjugate to the legs of s1.
inline std::vector<std::vector<Element>> compatible_isos(const Span& s1, int i, const Span& s2, int j) {
  const GroupPtr& a = s1.apex().component(i);
  const GroupPtr& b = s2.apex().component(j);
  if (a->order() != b->order() || s1.back.assigned(i) != s2.back.assigned(j) || s1.fwd.assigned(i) != s2.fwd.assigned(j))
    return {};
  const GroupHom& b1 = s1.back.hom(i);
  const GroupHom& b2 = s2.back.hom(j);
  const GroupHom& f1 = s1.fwd.hom(i);
  const GroupHom& f2 = s2.fwd.hom(j);
  if (b1.is_injective() != b2.is_injective() || f1.is_injective() != f2.is_injective()) return {};

  std::vector<std::vector<Element>> candidates;
  auto through_faithful_leg = [&](const GroupHom& l1, const GroupHom& l2) {
    const FiniteGroup& t = *l1.target;
    const ElementMask im1 = l1.image(), im2 = l2.image();
    auto inv2 = inverse_on_image(l2);
    for (Element y = 0; y < t.order(); ++y) {
      if (conjugate_mask(t, im1, y) != im2) continue;
      std::vector<Element> psi(static_cast<std::size_t>(a->order()));
      for (Element x = 0; x < a->order(); ++x) psi[static_cast<std::size_t>(x)] = inv2[static_cast<std::size_t>(t.conj(y, l1(x)))];
      candidates.push_back(std::move(psi));
    }
  };
  if (f1.is_injective()) through_faithful_leg(f1, f2);
  else if (b1.is_injective()) through_faithful_leg(b1, b2);
  else
    for (auto& h : all_isomorphisms(a, b)) candidates.push_back(std::move(h.map));

  std::vector<std::vector<Element>> out;
  for (auto& psi : candidates) {
    if (canonical_image_tuple(*b2.target, compose_maps(b2.map, psi)).first != b1.map) continue;
    if (canonical_image_tuple(*f2.target, compose_maps(f2.map, psi)).first != f1.map) continue;
    out.push_back(canonical_image_tuple(*b, psi).first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Apex equivalence s1.apex -> s2.apex commuting with both legs up to conjugacy.
struct SpanIsomorphism {
  std::vector<int> component_map;
  std::vector<GroupHom> isos;
};

inline std::optional<SpanIsomorphism> iso_spans(const Span& s1, const Span& s2) {
  if (!(s1.left() == s2.left()) || !(s1.right() == s2.right())) return std::nullopt;
  const int n = s1.apex().size();
  if (n != s2.apex().size()) return std::nullopt;
  std::vector<std::vector<std::vector<std::vector<Element>>>> options(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) options[static_cast<std::size_t>(i)].push_back(detail::compatible_isos(s1, i, s2, j));

  SpanIsomorphism w;
  w.component_map.assign(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto match = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)] || options[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].empty()) continue;
      used[static_cast<std::size_t>(j)] = 1;
      w.component_map[static_cast<std::size_t>(i)] = j;
      if (self(self, i + 1)) return true;
      used[static_cast<std::size_t>(j)] = 0;
    }
    return false;
  };
  if (!match(match, 0)) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    int j = w.component_map[static_cast<std::size_t>(i)];
    w.isos.push_back(GroupHom{s1.apex().component(i), s2.apex().component(j),
                              options[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].front()});
  }
  return w;
}

/// Apex self-equivalences up to natural isomorphism whose composites with
/// both legs are isomorphic to the legs, as a group under composition.
inline GroupPtr span_automorphisms(const Span& s) {
  const int n = s.apex().size();
  std::vector<std::vector<std::vector<std::vector<Element>>>> options(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) options[static_cast<std::size_t>(i)].push_back(detail::compatible_isos(s, i, s, j));

  using Auto = std::pair<std::vector<int>, std::vector<std::vector<Element>>>;
  std::vector<Auto> elems;
  Auto cur{std::vector<int>(static_cast<std::size_t>(n)), std::vector<std::vector<Element>>(static_cast<std::size_t>(n))};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      elems.push_back(cur);
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = 1;
      cur.first[static_cast<std::size_t>(i)] = j;
      for (const auto& psi : options[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        cur.second[static_cast<std::size_t>(i)] = psi;
        self(self, i + 1);
      }
      used[static_cast<std::size_t>(j)] = 0;
    }
  };
  rec(rec, 0);
  std::sort(elems.begin(), elems.end());
  std::map<Auto, int> index;
  for (std::size_t k = 0; k < elems.size(); ++k) index.emplace(elems[k], static_cast<int>(k));

  const int m = static_cast<int>(elems.size());
  std::vector<Element> flat(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const Auto& a = elems[static_cast<std::size_t>(x)];
      const Auto& b = elems[static_cast<std::size_t>(y)];
      Auto c{std::vector<int>(static_cast<std::size_t>(n)), std::vector<std::vector<Element>>(static_cast<std::size_t>(n))};
      for (int i = 0; i < n; ++i) {
        int mid = b.first[static_cast<std::size_t>(i)];
        int end = a.first[static_cast<std::size_t>(mid)];
        c.first[static_cast<std::size_t>(i)] = end;
        c.second[static_cast<std::size_t>(i)] =
            canonical_image_tuple(*s.apex().component(end),
                                  detail::compose_maps(a.second[static_cast<std::size_t>(mid)], b.second[static_cast<std::size_t>(i)]))
                .first;
      }
      flat[static_cast<std::size_t>(x) * static_cast<std::size_t>(m) + static_cast<std::size_t>(y)] = index.at(c);
    }
  return FiniteGroup::from_trusted(m, std::move(flat), "Aut(span)");
}

// ---------------------------------------------------------------------------
// Hom-sets of the homotopy category

/// Isomorphism classes of spans X <- M -> Y with connected apex, backward leg
/// in L and forward leg in R (R within faithful). Each class has apex a
/// subgroup class representative of a component of Y with the inclusion as
/// forward leg.
class HomSet {
 public:
  struct Apex {
    int component = 0;       // component of Y
    int subgroup_class = 0;
    EmbeddedSubgroup group;  // apex group and its inclusion
    std::vector<std::vector<Element>> stabilizer;  // conjugations by the normalizer, on apex indices
  };

  struct Entry {
    int apex = 0;               // index into apexes()
    int source_component = 0;   // component of X
  };

  HomSet(FiniteGroupoid source, FiniteGroupoid target, LegClass back_class, LegClass fwd_class,
         int order_bound = kDefaultOrderBound)
      : source_(std::move(source)), target_(std::move(target)), back_class_(std::move(back_class)),
        fwd_class_(std::move(fwd_class)) {
    if (!fwd_class_.within_faithful())
      throw Error(ErrorKind::InfiniteHomSet, "forward class " + fwd_class_.name() + " is not contained in faithful maps");
    for (const auto* x : {&source_, &target_})
      for (const auto& g : x->components)
        if (g->order() > order_bound)
          throw Error(ErrorKind::OrderBoundExceeded, g->label() + " exceeds the order bound");
    build();
  }

  const FiniteGroupoid& source() const { return source_; }
  const FiniteGroupoid& target() const { return target_; }
  const LegClass& back_class() const { return back_class_; }
  const LegClass& fwd_class() const { return fwd_class_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const std::vector<Span>& classes() const { return classes_; }
  const Span& at(int k) const { return classes_[static_cast<std::size_t>(k)]; }
  const Entry& entry(int k) const { return entries_[static_cast<std::size_t>(k)]; }
  const std::vector<Apex>& apexes() const { return apexes_; }

  /// Canonical identifier "X->Y#k".
  std::string id(int k) const { return source_.label + "->" + target_.label + "#" + std::to_string(k); }

  /// Automorphism group of class k, computed on first request.
  GroupPtr automorphism_group(int k) const {
    auto& slot = automorphisms_[static_cast<std::size_t>(k)];
    if (!slot) slot = span_automorphisms(at(k));
    return slot;
  }

  /// Class of an arbitrary span with these feet and a connected apex, or
  /// nullopt when the span is not in the declared leg classes.
  std::optional<int> classify(const Span& s) const {
    if (!(s.left() == source_) || !(s.right() == target_))
      throw Error(ErrorKind::FeetMismatch, "span feet do not match the hom-set");
    if (!s.apex().connected()) return std::nullopt;
    const GroupHom& f = s.fwd.hom(0);
    if (!f.is_injective()) return std::nullopt;
    const int y = s.fwd.assigned(0);
    const GroupPtr& ty = target_.component(y);
    const auto& lat = ty->lattice();
    const int idx = lat.index(f.image());
    const int cls = lat.class_of[static_cast<std::size_t>(idx)];
    const Element c = lat.to_rep[static_cast<std::size_t>(idx)];
    const Element c_inv = ty->inv(c);
    const int a = apex_index_[static_cast<std::size_t>(y)][static_cast<std::size_t>(cls)];
    if (a < 0) return std::nullopt;
    const Apex& apex = apexes_[static_cast<std::size_t>(a)];
    // psi: R -> M with f(psi(r)) = c^-1 r c
    auto f_inv = detail::inverse_on_image(f);
    const auto& incl = apex.group.inclusion.map;
    std::vector<Element> back(incl.size());
    const GroupHom& b = s.back.hom(0);
    for (std::size_t r = 0; r < incl.size(); ++r)
      back[r] = b(f_inv[static_cast<std::size_t>(ty->conj(c_inv, incl[r]))]);
    const int x = s.back.assigned(0);
    auto key = std::make_tuple(a, x, canonical_back(apex, x, back));
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Element> canonical_back(const Apex& apex, int x, const std::vector<Element>& back) const {
    const FiniteGroup& tx = *source_.component(x);
    std::vector<Element> best;
    for (const auto& phi : apex.stabilizer) {
      auto cand = canonical_image_tuple(tx, detail::compose_maps(back, phi)).first;
      if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
  }

  void build() {
    apex_index_.resize(static_cast<std::size_t>(target_.size()));
    for (int y = 0; y < target_.size(); ++y) {
      const GroupPtr& ty = target_.component(y);
      const auto& lat = ty->lattice();
      apex_index_[static_cast<std::size_t>(y)].assign(static_cast<std::size_t>(lat.class_count()), -1);
      for (int cls = 0; cls < lat.class_count(); ++cls) {
        Apex apex;
        apex.component = y;
        apex.subgroup_class = cls;
        apex.group = subgroup_as_group(ty, lat.rep(cls), ty->label() + "[" + std::to_string(cls) + "]");
        const GroupPtr r = apex.group.group;
        auto fwd = GroupoidMap::make_trusted(FiniteGroupoid::of(r), target_, {y}, {apex.group.inclusion});
        if (!fwd_class_.contains(fwd)) continue;
        auto pos = detail::inverse_on_image(apex.group.inclusion);
        for (Element n : mask_elements(normalizer_mask(*ty, lat.rep(cls)))) {
          std::vector<Element> phi(static_cast<std::size_t>(r->order()));
          for (Element e = 0; e < r->order(); ++e)
            phi[static_cast<std::size_t>(e)] = pos[static_cast<std::size_t>(ty->conj(n, apex.group.inclusion(e)))];
          apex.stabilizer.push_back(std::move(phi));
        }
        std::sort(apex.stabilizer.begin(), apex.stabilizer.end());
        apex.stabilizer.erase(std::unique(apex.stabilizer.begin(), apex.stabilizer.end()), apex.stabilizer.end());
        const int a = static_cast<int>(apexes_.size());
        apex_index_[static_cast<std::size_t>(y)][static_cast<std::size_t>(cls)] = a;
        apexes_.push_back(std::move(apex));
        const Apex& ap = apexes_.back();

        for (int x = 0; x < source_.size(); ++x) {
          std::vector<std::vector<Element>> found;
          for (const auto& h : homs_up_to_conjugacy(r, source_.component(x))) {
            auto back = GroupoidMap::make_trusted(FiniteGroupoid::of(r), source_, {x}, {h});
            if (!back_class_.contains(back)) continue;
            found.push_back(canonical_back(ap, x, h.map));
          }
          std::sort(found.begin(), found.end());
          found.erase(std::unique(found.begin(), found.end()), found.end());
          for (auto& b : found) {
            const int k = static_cast<int>(classes_.size());
            auto back = GroupoidMap::make_trusted(FiniteGroupoid::of(r), source_, {x}, {GroupHom{r, source_.component(x), b}});
            classes_.push_back({std::move(back), fwd, back_class_, fwd_class_});
            entries_.push_back({a, x});
            index_.emplace(std::make_tuple(a, x, std::move(b)), k);
          }
        }
      }
    }
    automorphisms_.resize(classes_.size());
  }

  FiniteGroupoid source_;
  FiniteGroupoid target_;
  LegClass back_class_;
  LegClass fwd_class_;
  std::vector<Apex> apexes_;
  std::vector<std::vector<int>> apex_index_;
  std::vector<Span> classes_;
  std::vector<Entry> entries_;
  std::map<std::tuple<int, int, std::vector<Element>>, int> index_;
  mutable std::vector<GroupPtr> automorphisms_;
};

inline HomSet hom_set(const FiniteGroupoid& x, const FiniteGroupoid& y, const LegClass& back_class,
                      const LegClass& fwd_class, int order_bound = kDefaultOrderBound) {
  return HomSet(x, y, back_class, fwd_class, order_bound);
}

// ---------------------------------------------------------------------------
// Base change

struct ClosureReport {
  bool closed = true;
  long long squares = 0;
  /// admitted map, map pulled back along, and the offending pulled-back map
  std::optional<std::tuple<GroupoidMap, GroupoidMap, GroupoidMap>> counterexample;
};

/// Pulls back every map of R along every map of L between connected
/// groupoids whose groups are library presets of order <= bound.
/// Disconnected groupoids reduce to these since pullbacks distribute over
/// components and the classes are tested componentwise.
inline ClosureReport check_base_change_closed(const LegClass& r, const LegClass& l, int bound) {
  ClosureReport report;
  auto groups = preset_library(bound);
  for (const auto& base : groups) {
    std::vector<GroupoidMap> admitted, along;
    for (const auto& src : groups) {
      for (const auto& h : homs_up_to_conjugacy(src, base)) {
        auto m = GroupoidMap::from_hom(h);
        if (r.contains(m)) admitted.push_back(m);
        if (l.contains(m)) along.push_back(std::move(m));
      }
    }
    for (const auto& f : admitted)
      for (const auto& g : along) {
        ++report.squares;
        auto pb = homotopy_pullback(f, g);
        if (!r.contains(pb.to_right)) {
          report.closed = false;
          report.counterexample.emplace(f, g, pb.to_right);
          return report;
        }
      }
  }
  return report;
}

/// Checks that a leg class contains all isomorphisms and is closed under
/// composition, over connected maps between library groups of order <= bound.
inline std::optional<std::string> check_leg_class(const LegClass& c, int bound) {
  auto groups = preset_library(bound);
  for (const auto& g : groups)
    for (const auto& h : all_isomorphisms(g, g))
      if (!c.contains(GroupoidMap::from_hom(h))) return c.name() + " misses an automorphism of " + g->label();
  std::vector<std::vector<std::vector<GroupHom>>> homs(groups.size());
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = 0; b < groups.size(); ++b) {
      std::vector<GroupHom> in;
      for (auto& h : homs_up_to_conjugacy(groups[a], groups[b]))
        if (c.contains(GroupoidMap::from_hom(h))) in.push_back(std::move(h));
      homs[a].push_back(std::move(in));
    }
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = 0; b < groups.size(); ++b)
      for (std::size_t d = 0; d < groups.size(); ++d)
        for (const auto& f : homs[a][b])
          for (const auto& g : homs[b][d])
            if (!c.contains(GroupoidMap::from_hom(compose(g, f))))
              return c.name() + " is not closed under composition " + groups[a]->label() + "->" + groups[b]->label() +
                     "->" + groups[d]->label();
  return std::nullopt;
}

}  // namespace glospan
