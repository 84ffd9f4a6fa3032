#pragma once

// Finite groupoids modeled skeletally as lists of groups (one object per
// component). Maps are stored componentwise, up to conjugacy in the target.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glospan/group.hpp"

namespace glospan {

struct FiniteGroupoid {
  std::vector<GroupPtr> components;
  std::string label;

  static FiniteGroupoid of(GroupPtr g) {
    std::string l = g->label();
    return {{std::move(g)}, std::move(l)};
  }
  static FiniteGroupoid empty() { return {{}, "0"}; }

  int size() const { return static_cast<int>(components.size()); }
  bool connected() const { return components.size() == 1; }
  const GroupPtr& component(int i) const { return components[static_cast<std::size_t>(i)]; }

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    if (a.components.size() != b.components.size()) return false;
    for (std::size_t i = 0; i < a.components.size(); ++i)
      if (a.components[i] != b.components[i] && !a.components[i]->same_table(*b.components[i])) return false;
    return true;
  }
};

inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  out.label = a.label + "+" + b.label;
  return out;
}

enum class MapClass { all, full, faithful, fold };

inline const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::all: return "all";
    case MapClass::full: return "full";
    case MapClass::faithful: return "faithful";
    case MapClass::fold: return "fold";
  }
  return "?";
}

class GroupoidMap {
 public:
  GroupoidMap() = default;

  /// Validates the component data and stores every hom in canonical form.
  static GroupoidMap make(FiniteGroupoid source, FiniteGroupoid target, std::vector<int> assignment,
                          std::vector<GroupHom> homs) {
    if (assignment.size() != source.components.size() || homs.size() != source.components.size())
      throw Error(ErrorKind::ParseError, "map data does not match the source components");
    for (std::size_t i = 0; i < homs.size(); ++i) {
      int t = assignment[i];
      if (t < 0 || t >= target.size()) throw Error(ErrorKind::ParseError, "component assignment out of range");
      const auto& h = homs[i];
      if (!h.source->same_table(*source.components[i]) || !h.target->same_table(*target.component(t)))
        throw Error(ErrorKind::GroupMismatch, "component hom does not match the groupoids");
      if (!h.is_homomorphism()) throw Error(ErrorKind::ParseError, "component map is not a homomorphism");
    }
    return make_trusted(std::move(source), std::move(target), std::move(assignment), std::move(homs));
  }

  /// As make(), for data that is valid by construction.
  static GroupoidMap make_trusted(FiniteGroupoid source, FiniteGroupoid target, std::vector<int> assignment,
                                  std::vector<GroupHom> homs) {
    GroupoidMap m;
    for (std::size_t i = 0; i < homs.size(); ++i) {
      homs[i].source = source.components[i];
      homs[i].target = target.component(assignment[i]);
      homs[i].map = canonical_image_tuple(*homs[i].target, homs[i].map).first;
    }
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.assignment_ = std::move(assignment);
    m.homs_ = std::move(homs);
    return m;
  }

  static GroupoidMap from_hom(const GroupHom& h) {
    return make_trusted(FiniteGroupoid::of(h.source), FiniteGroupoid::of(h.target), {0}, {h});
  }

  static GroupoidMap identity(const FiniteGroupoid& x) {
    std::vector<int> a(static_cast<std::size_t>(x.size()));
    std::vector<GroupHom> h;
    for (int i = 0; i < x.size(); ++i) {
      a[static_cast<std::size_t>(i)] = i;
      h.push_back(identity_hom(x.component(i)));
    }
    return make_trusted(x, x, std::move(a), std::move(h));
  }

  const FiniteGroupoid& source() const { return source_; }
  const FiniteGroupoid& target() const { return target_; }
  const std::vector<int>& assignment() const { return assignment_; }
  const std::vector<GroupHom>& homs() const { return homs_; }
  const GroupHom& hom(int i) const { return homs_[static_cast<std::size_t>(i)]; }
  int assigned(int i) const { return assignment_[static_cast<std::size_t>(i)]; }

  /// Restriction to one source component.
  GroupoidMap component_map(int i) const {
    GroupoidMap m;
    m.source_ = FiniteGroupoid::of(source_.component(i));
    m.target_ = target_;
    m.assignment_ = {assigned(i)};
    m.homs_ = {hom(i)};
    return m;
  }

  friend bool operator==(const GroupoidMap& a, const GroupoidMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.assignment_ == b.assignment_ &&
           std::equal(a.homs_.begin(), a.homs_.end(), b.homs_.begin(), b.homs_.end(),
                      [](const GroupHom& x, const GroupHom& y) { return x.map == y.map; });
  }

  /// Total order on maps with equal source and target (canonical forms).
  friend bool operator<(const GroupoidMap& a, const GroupoidMap& b) {
    if (a.assignment_ != b.assignment_) return a.assignment_ < b.assignment_;
    for (std::size_t i = 0; i < a.homs_.size(); ++i)
      if (a.homs_[i].map != b.homs_[i].map) return a.homs_[i].map < b.homs_[i].map;
    return false;
  }

 private:
  FiniteGroupoid source_;
  FiniteGroupoid target_;
  std::vector<int> assignment_;
  std::vector<GroupHom> homs_;
};

/// outer ∘ inner.
inline GroupoidMap compose(const GroupoidMap& outer, const GroupoidMap& inner) {
  if (!(inner.target() == outer.source())) throw Error(ErrorKind::GroupMismatch, "maps are not composable");
  std::vector<int> a;
  std::vector<GroupHom> h;
  for (int i = 0; i < inner.source().size(); ++i) {
    int mid = inner.assigned(i);
    a.push_back(outer.assigned(mid));
    h.push_back(compose(outer.hom(mid), inner.hom(i)));
  }
  return GroupoidMap::make_trusted(inner.source(), outer.target(), std::move(a), std::move(h));
}

inline bool is_full(const GroupoidMap& f) {
  return std::all_of(f.homs().begin(), f.homs().end(), [](const GroupHom& h) { return h.is_surjective(); });
}
inline bool is_faithful(const GroupoidMap& f) {
  return std::all_of(f.homs().begin(), f.homs().end(), [](const GroupHom& h) { return h.is_injective(); });
}
inline bool is_fold(const GroupoidMap& f) {
  return std::all_of(f.homs().begin(), f.homs().end(), [](const GroupHom& h) { return h.is_isomorphism(); });
}
/// A fold map that is bijective on components.
inline bool is_equivalence(const GroupoidMap& f) {
  if (f.source().size() != f.target().size() || !is_fold(f)) return false;
  std::vector<char> hit(static_cast<std::size_t>(f.target().size()), 0);
  for (int t : f.assignment()) {
    if (hit[static_cast<std::size_t>(t)]) return false;
    hit[static_cast<std::size_t>(t)] = 1;
  }
  return true;
}

inline bool in_class(const GroupoidMap& f, MapClass c) {
  switch (c) {
    case MapClass::all: return true;
    case MapClass::full: return is_full(f);
    case MapClass::faithful: return is_faithful(f);
    case MapClass::fold: return is_fold(f);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Factorization

struct EpiMonoFactorization {
  FiniteGroupoid middle;
  GroupoidMap epi;   // full
  GroupoidMap mono;  // faithful
};

inline EpiMonoFactorization epi_mono_factorize(const GroupoidMap& f) {
  EpiMonoFactorization out;
  std::vector<GroupHom> epis, monos;
  std::vector<int> mid_assign, mono_assign;
  for (int i = 0; i < f.source().size(); ++i) {
    const GroupHom& h = f.hom(i);
    EmbeddedSubgroup img = subgroup_as_group(h.target, h.image(), "im(" + h.source->label() + ")");
    std::vector<int> pos(static_cast<std::size_t>(h.target->order()), -1);
    for (std::size_t k = 0; k < img.inclusion.map.size(); ++k) pos[static_cast<std::size_t>(img.inclusion.map[k])] = static_cast<int>(k);
    std::vector<Element> e(h.map.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = pos[static_cast<std::size_t>(h.map[k])];
    out.middle.components.push_back(img.group);
    epis.push_back({h.source, img.group, std::move(e)});
    mid_assign.push_back(i);
    monos.push_back(img.inclusion);
    mono_assign.push_back(f.assigned(i));
  }
  out.middle.label = "im";
  out.epi = GroupoidMap::make_trusted(f.source(), out.middle, std::move(mid_assign), std::move(epis));
  out.mono = GroupoidMap::make_trusted(out.middle, f.target(), std::move(mono_assign), std::move(monos));
  return out;
}

// ---------------------------------------------------------------------------
// Homotopy pullbacks

struct PullbackComponent {
  int left = 0;    // component of the left source
  int right = 0;   // component of the right source
  int base = 0;    // common target component
  Element rep = 0; // minimal element of the double coset alpha(H) rep beta(K)
};

struct HomotopyPullback {
  FiniteGroupoid apex;
  GroupoidMap to_left;
  GroupoidMap to_right;
  std::vector<PullbackComponent> info;
};

namespace detail {

struct PullbackPiece {
  GroupPtr group;
  GroupHom to_left;
  GroupHom to_right;
  Element rep;
};

// Components of BH x_BG BK for alpha: H -> G, beta: K -> G.
inline std::vector<PullbackPiece> connected_pullback(const GroupHom& alpha, const GroupHom& beta) {
  const FiniteGroup& g = *alpha.target;
  const GroupPtr& h = alpha.source;
  const GroupPtr& k = beta.source;
  auto a_img = mask_elements(alpha.image());
  auto b_img = mask_elements(beta.image());
  std::vector<std::vector<Element>> preimage(static_cast<std::size_t>(g.order()));
  for (Element x = 0; x < h->order(); ++x) preimage[static_cast<std::size_t>(alpha(x))].push_back(x);

  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::vector<PullbackPiece> out;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    for (Element a : a_img)
      for (Element b : b_img) seen[static_cast<std::size_t>(g.mul(g.mul(a, x), b))] = 1;
    // isotropy {(h,k) : alpha(h) x = x beta(k)}
    std::vector<std::pair<Element, Element>> pairs;
    const Element x_inv = g.inv(x);
    for (Element kk = 0; kk < k->order(); ++kk) {
      Element t = g.mul(g.mul(x, beta(kk)), x_inv);
      for (Element hh : preimage[static_cast<std::size_t>(t)]) pairs.emplace_back(hh, kk);
    }
    std::sort(pairs.begin(), pairs.end());
    const int n = static_cast<int>(pairs.size());
    std::vector<int> index(static_cast<std::size_t>(h->order() * k->order()), -1);
    for (int i = 0; i < n; ++i)
      index[static_cast<std::size_t>(pairs[static_cast<std::size_t>(i)].first * k->order() + pairs[static_cast<std::size_t>(i)].second)] = i;
    std::vector<Element> flat(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& p = pairs[static_cast<std::size_t>(i)];
        const auto& q = pairs[static_cast<std::size_t>(j)];
        flat[static_cast<std::size_t>(i * n + j)] =
            index[static_cast<std::size_t>(h->mul(p.first, q.first) * k->order() + k->mul(p.second, q.second))];
      }
    auto grp = FiniteGroup::from_trusted(n, std::move(flat), "P" + std::to_string(n));
    std::vector<Element> pl(static_cast<std::size_t>(n)), pr(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pl[static_cast<std::size_t>(i)] = pairs[static_cast<std::size_t>(i)].first;
      pr[static_cast<std::size_t>(i)] = pairs[static_cast<std::size_t>(i)].second;
    }
    out.push_back({grp, GroupHom{grp, h, std::move(pl)}, GroupHom{grp, k, std::move(pr)}, x});
  }
  return out;
}

}  // namespace detail

/// Homotopy pullback of f: A -> X and g: B -> X. Components are ordered by
/// (component of A, component of B, minimal double-coset representative).
inline HomotopyPullback homotopy_pullback(const GroupoidMap& f, const GroupoidMap& g) {
  if (!(f.target() == g.target())) throw Error(ErrorKind::GroupMismatch, "pullback legs have different targets");
  HomotopyPullback out;
  std::vector<int> la, ra;
  std::vector<GroupHom> lh, rh;
  for (int a = 0; a < f.source().size(); ++a)
    for (int b = 0; b < g.source().size(); ++b) {
      if (f.assigned(a) != g.assigned(b)) continue;
      for (auto& piece : detail::connected_pullback(f.hom(a), g.hom(b))) {
        out.apex.components.push_back(piece.group);
        out.info.push_back({a, b, f.assigned(a), piece.rep});
        la.push_back(a);
        ra.push_back(b);
        lh.push_back(std::move(piece.to_left));
        rh.push_back(std::move(piece.to_right));
      }
    }
  out.apex.label = "(" + f.source().label + " x_" + f.target().label + " " + g.source().label + ")";
  out.to_left = GroupoidMap::make_trusted(out.apex, f.source(), std::move(la), std::move(lh));
  out.to_right = GroupoidMap::make_trusted(out.apex, g.source(), std::move(ra), std::move(rh));
  return out;
}

// ---------------------------------------------------------------------------
// Orbit categories

struct OrbitObject {
  int component = 0;
  int subgroup_class = 0;
  ElementMask subgroup = 0;   // class representative in the component group
  EmbeddedSubgroup embedded;  // BH -> BG
  WeylGroup weyl;
};

struct CoreAutomorphisms {
  GroupPtr group;                  // endomorphism cosets nH under nH * n'H = nn'H
  std::vector<Element> coset_reps; // element index -> minimal coset representative
  GroupHom to_weyl;                // isomorphism witness onto weyl_group(G, H)
};

class OrbitCategory {
 public:
  explicit OrbitCategory(FiniteGroupoid base) : base_(std::move(base)) {
    for (int c = 0; c < base_.size(); ++c) {
      const GroupPtr& g = base_.component(c);
      const auto& lat = g->lattice();
      first_object_.push_back(static_cast<int>(objects_.size()));
      for (int k = 0; k < lat.class_count(); ++k) {
        OrbitObject o;
        o.component = c;
        o.subgroup_class = k;
        o.subgroup = lat.rep(k);
        o.embedded = subgroup_as_group(g, o.subgroup, "H" + std::to_string(k) + "<" + g->label());
        o.weyl = weyl_group(g, o.subgroup);
        objects_.push_back(std::move(o));
      }
    }
    first_object_.push_back(static_cast<int>(objects_.size()));
    for (int i = 0; i < size(); ++i) core_.push_back(build_core(i));
  }

  const FiniteGroupoid& base() const { return base_; }
  int size() const { return static_cast<int>(objects_.size()); }
  const OrbitObject& object(int i) const { return objects_[static_cast<std::size_t>(i)]; }
  const std::vector<OrbitObject>& objects() const { return objects_; }
  const GroupPtr& group_of(int i) const { return base_.component(object(i).component); }
  int object_index(int component, int subgroup_class) const {
    return first_object_[static_cast<std::size_t>(component)] + subgroup_class;
  }
  /// Objects over the given component: [first, last).
  std::pair<int, int> objects_over(int component) const {
    return {first_object_[static_cast<std::size_t>(component)], first_object_[static_cast<std::size_t>(component) + 1]};
  }
  const CoreAutomorphisms& core(int i) const { return core_[static_cast<std::size_t>(i)]; }

  /// Morphisms G/H_i -> G/H_j as minimal representatives g of cosets g H_j with H_i ⊆ g H_j g^-1.
  std::vector<Element> morphisms(int i, int j) const {
    const auto& oi = object(i);
    const auto& oj = object(j);
    if (oi.component != oj.component) return {};
    const FiniteGroup& g = *group_of(i);
    std::vector<Element> out;
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    auto hj = mask_elements(oj.subgroup);
    for (Element x = 0; x < g.order(); ++x) {
      if (seen[static_cast<std::size_t>(x)]) continue;
      for (Element y : hj) seen[static_cast<std::size_t>(g.mul(x, y))] = 1;
      if ((oi.subgroup & ~conjugate_mask(g, oj.subgroup, x)) == 0) out.push_back(x);
    }
    return out;
  }

  /// Minimal representative of the coset x H_j.
  Element coset_rep(int j, Element x) const {
    const FiniteGroup& g = *group_of(j);
    Element best = x;
    for (Element y : mask_elements(object(j).subgroup)) best = std::min(best, g.mul(x, y));
    return best;
  }

  /// (b: j -> k) ∘ (a: i -> j).
  Element compose(int k, Element a, Element b, int component) const {
    return coset_rep(k, base_.component(component)->mul(a, b));
  }

  /// Orbit class of a subgroup of a component group, with c such that c S c^-1 is the representative.
  std::pair<int, Element> classify(int component, ElementMask subgroup) const {
    const auto& lat = base_.component(component)->lattice();
    int idx = lat.index(subgroup);
    return {object_index(component, lat.class_of[static_cast<std::size_t>(idx)]), lat.to_rep[static_cast<std::size_t>(idx)]};
  }

  /// Orbit of a connected faithful map M -> base.
  std::pair<int, Element> classify(const GroupoidMap& connected_faithful) const {
    return classify(connected_faithful.assigned(0), connected_faithful.hom(0).image());
  }

 private:
  CoreAutomorphisms build_core(int i) const {
    CoreAutomorphisms c;
    const FiniteGroup& g = *group_of(i);
    c.coset_reps = morphisms(i, i);
    const int n = static_cast<int>(c.coset_reps.size());
    std::map<Element, int> index;
    for (int a = 0; a < n; ++a) index.emplace(c.coset_reps[static_cast<std::size_t>(a)], a);
    std::vector<Element> flat(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        flat[static_cast<std::size_t>(a * n + b)] =
            index.at(coset_rep(i, g.mul(c.coset_reps[static_cast<std::size_t>(a)], c.coset_reps[static_cast<std::size_t>(b)])));
    c.group = FiniteGroup::from_trusted(n, std::move(flat), "Aut(G/H)");
    std::vector<Element> w(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      w[static_cast<std::size_t>(a)] = object(i).weyl.quotient[static_cast<std::size_t>(c.coset_reps[static_cast<std::size_t>(a)])];
    c.to_weyl = GroupHom{c.group, object(i).weyl.group, std::move(w)};
    return c;
  }

  FiniteGroupoid base_;
  std::vector<OrbitObject> objects_;
  std::vector<int> first_object_;
  std::vector<CoreAutomorphisms> core_;
};

inline OrbitCategory orbit_category(const FiniteGroupoid& x) { return OrbitCategory(x); }

// ---------------------------------------------------------------------------
// Hom-sets of groupoids

/// One representative per isomorphism class of maps Y -> X in the requested class.
inline std::vector<GroupoidMap> maps_up_to_iso(const FiniteGroupoid& y, const FiniteGroupoid& x, MapClass cls,
                                               std::uint64_t limit = kDefaultSearchLimit) {
  // choices[i][t] = admissible hom classes from component i of Y to component t of X
  std::vector<std::vector<std::vector<GroupHom>>> choices(static_cast<std::size_t>(y.size()));
  for (int i = 0; i < y.size(); ++i)
    for (int t = 0; t < x.size(); ++t) {
      std::vector<GroupHom> ok;
      for (auto& h : homs_up_to_conjugacy(y.component(i), x.component(t), limit)) {
        bool keep = cls == MapClass::all || (cls == MapClass::full && h.is_surjective()) ||
                    (cls == MapClass::faithful && h.is_injective()) || (cls == MapClass::fold && h.is_isomorphism());
        if (keep) ok.push_back(std::move(h));
      }
      choices[static_cast<std::size_t>(i)].push_back(std::move(ok));
    }
  std::uint64_t total = 1;
  for (const auto& per : choices) {
    std::uint64_t s = 0;
    for (const auto& c : per) s += c.size();
    total *= std::max<std::uint64_t>(s, 1);
    if (total > limit) throw Error(ErrorKind::OrderBoundExceeded, "map enumeration exceeds the search limit");
  }
  std::vector<GroupoidMap> out;
  std::vector<int> assign(static_cast<std::size_t>(y.size()));
  std::vector<GroupHom> homs(static_cast<std::size_t>(y.size()));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == y.size()) {
      out.push_back(GroupoidMap::make_trusted(y, x, assign, homs));
      return;
    }
    for (int t = 0; t < x.size(); ++t)
      for (const auto& h : choices[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) {
        assign[static_cast<std::size_t>(i)] = t;
        homs[static_cast<std::size_t>(i)] = h;
        self(self, i + 1);
      }
  };
  rec(rec, 0);
  return out;
}

}  // namespace glospan
