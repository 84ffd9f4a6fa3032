#pragma once

// Transfer systems on a finite group, indexing systems on its orbit
// category, and choices of norms together with their base-change checks.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "glospan/groupoid.hpp"
#include "glospan/presets.hpp"
#include "glospan/span.hpp"

namespace glospan {

/// Inclusions H ⊆ K of actual subgroups, grouped into orbits under
/// simultaneous conjugation. Orbits are sorted by (class of K, class of H,
/// representative masks).
struct PairCatalog {
  GroupPtr group;
  std::vector<std::pair<int, int>> pairs;  // subgroup indices (sub, sup)
  std::vector<int> orbit_of;               // pair -> orbit
  std::vector<std::vector<int>> orbits;    // orbit -> pairs; first is the representative
  std::map<std::pair<int, int>, int> pair_index;

  int orbit_count() const { return static_cast<int>(orbits.size()); }
  std::pair<int, int> rep(int orbit) const { return pairs[static_cast<std::size_t>(orbits[static_cast<std::size_t>(orbit)].front())]; }
  int orbit(int sub, int sup) const { return orbit_of[static_cast<std::size_t>(pair_index.at({sub, sup}))]; }
  bool reflexive(int orbit) const { auto p = rep(orbit); return p.first == p.second; }
};

inline PairCatalog pair_catalog(const GroupPtr& g) {
  PairCatalog c;
  c.group = g;
  const auto& lat = g->lattice();
  const int n = static_cast<int>(lat.subgroups.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((lat.subgroups[static_cast<std::size_t>(a)] & ~lat.subgroups[static_cast<std::size_t>(b)]) == 0) {
        c.pair_index.emplace(std::make_pair(a, b), static_cast<int>(c.pairs.size()));
        c.pairs.emplace_back(a, b);
      }
  std::vector<int> raw(c.pairs.size(), -1);
  std::vector<std::vector<int>> groups;
  for (std::size_t p = 0; p < c.pairs.size(); ++p) {
    if (raw[p] >= 0) continue;
    std::set<int> members;
    for (Element x = 0; x < g->order(); ++x) {
      int a = lat.index(conjugate_mask(*g, lat.subgroups[static_cast<std::size_t>(c.pairs[p].first)], x));
      int b = lat.index(conjugate_mask(*g, lat.subgroups[static_cast<std::size_t>(c.pairs[p].second)], x));
      members.insert(c.pair_index.at({a, b}));
    }
    for (int m : members) raw[static_cast<std::size_t>(m)] = static_cast<int>(groups.size());
    groups.emplace_back(members.begin(), members.end());
  }
  // representative: pair whose members are the class representatives when possible
  for (auto& members : groups) {
    std::sort(members.begin(), members.end(), [&](int x, int y) {
      auto key = [&](int p) {
        auto [a, b] = c.pairs[static_cast<std::size_t>(p)];
        bool b_rep = lat.subgroups[static_cast<std::size_t>(b)] == lat.rep(lat.class_of[static_cast<std::size_t>(b)]);
        return std::make_tuple(!b_rep, lat.class_of[static_cast<std::size_t>(b)], lat.class_of[static_cast<std::size_t>(a)], b, a);
      };
      return key(x) < key(y);
    });
  }
  std::vector<int> order(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  auto key = [&](int o) {
    auto [a, b] = c.pairs[static_cast<std::size_t>(groups[static_cast<std::size_t>(o)].front())];
    return std::make_tuple(lat.class_of[static_cast<std::size_t>(b)], lat.class_of[static_cast<std::size_t>(a)], b, a);
  };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
  c.orbit_of.assign(c.pairs.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    c.orbits.push_back(groups[static_cast<std::size_t>(order[i])]);
    for (int m : c.orbits.back()) c.orbit_of[static_cast<std::size_t>(m)] = static_cast<int>(i);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Closure engine shared by the two enumerators

namespace detail {

/// Implication rules over n atoms: `always` atoms, unary o -> set, binary
/// (o1, o2) -> set. Closed sets are enumerated breadth-first from the
/// closure of the empty set by adding one atom at a time.
struct ClosureRules {
  int n = 0;
  std::vector<int> always;
  std::vector<std::vector<int>> unary;
  std::vector<std::vector<std::vector<int>>> binary;

  /// Sparse form of `binary`, filled by finalize().
  std::vector<std::vector<int>> as_left, as_right;

  void finalize() {
    as_left.assign(static_cast<std::size_t>(n), {});
    as_right.assign(static_cast<std::size_t>(n), {});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& cell = binary[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (cell.empty()) continue;
        as_left[static_cast<std::size_t>(a)].push_back(b);
        as_right[static_cast<std::size_t>(b)].push_back(a);
      }
  }

  /// Closure of `in`; when `in` is already closed except for `fresh`, only
  /// consequences of those atoms are followed.
  std::vector<char> close(std::vector<char> in, std::vector<int> fresh) const {
    std::vector<int> work;
    auto add = [&](int a) {
      if (!in[static_cast<std::size_t>(a)]) {
        in[static_cast<std::size_t>(a)] = 1;
        work.push_back(a);
      }
    };
    for (int a : fresh) {
      in[static_cast<std::size_t>(a)] = 0;
      add(a);
    }
    while (!work.empty()) {
      int o = work.back();
      work.pop_back();
      for (int a : unary[static_cast<std::size_t>(o)]) add(a);
      for (int p : as_left[static_cast<std::size_t>(o)])
        if (in[static_cast<std::size_t>(p)])
          for (int a : binary[static_cast<std::size_t>(o)][static_cast<std::size_t>(p)]) add(a);
      for (int p : as_right[static_cast<std::size_t>(o)])
        if (in[static_cast<std::size_t>(p)])
          for (int a : binary[static_cast<std::size_t>(p)][static_cast<std::size_t>(o)]) add(a);
    }
    return in;
  }

  std::vector<char> close(const std::vector<char>& in) const {
    std::vector<int> fresh(always);
    for (int i = 0; i < n; ++i)
      if (in[static_cast<std::size_t>(i)]) fresh.push_back(i);
    return close(in, std::move(fresh));
  }

  std::vector<std::vector<char>> enumerate() const {
    std::set<std::vector<char>> seen;
    std::vector<std::vector<char>> queue{close(std::vector<char>(static_cast<std::size_t>(n), 0))};
    seen.insert(queue.front());
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int a = 0; a < n; ++a) {
        if (queue[i][static_cast<std::size_t>(a)]) continue;
        auto next = close(queue[i], {a});
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    auto count = [](const std::vector<char>& v) { return std::count(v.begin(), v.end(), 1); };
    std::sort(queue.begin(), queue.end(), [&](const auto& x, const auto& y) {
      auto cx = count(x), cy = count(y);
      if (cx != cy) return cx < cy;
      return x > y;
    });
    return queue;
  }
};

inline void dedupe(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Transfer systems

/// A refinement of the inclusion order on subgroups that is reflexive,
/// transitive, closed under conjugation and under restriction
/// (H ≤_T K and L ⊆ K imply H ∩ L ≤_T L). Stored on orbits of pairs.
class TransferSystem {
 public:
  /// Validates the relation; members are pair-orbit indices of the catalog.
  static TransferSystem make(std::shared_ptr<const PairCatalog> catalog, std::vector<int> orbits) {
    detail::dedupe(orbits);
    std::vector<char> in(static_cast<std::size_t>(catalog->orbit_count()), 0);
    for (int o : orbits) {
      if (o < 0 || o >= catalog->orbit_count()) throw Error(ErrorKind::InvalidTransferSystem, "pair index out of range");
      in[static_cast<std::size_t>(o)] = 1;
    }
    if (rules(*catalog).close(in) != in) throw Error(ErrorKind::InvalidTransferSystem, "relation violates the closure axioms");
    return TransferSystem(std::move(catalog), std::move(in));
  }

  /// From pairs of subgroup masks (sub, sup); conjugates are added implicitly.
  static TransferSystem from_pairs(const GroupPtr& g, const std::vector<std::pair<ElementMask, ElementMask>>& pairs) {
    auto catalog = std::make_shared<const PairCatalog>(pair_catalog(g));
    const auto& lat = g->lattice();
    std::vector<int> orbits;
    for (int o = 0; o < catalog->orbit_count(); ++o)
      if (catalog->reflexive(o)) orbits.push_back(o);
    for (auto [h, k] : pairs) {
      int a = lat.index(h), b = lat.index(k);
      auto it = catalog->pair_index.find({a, b});
      if (it == catalog->pair_index.end())
        throw Error(ErrorKind::InvalidTransferSystem, "pair is not a subgroup inclusion");
      orbits.push_back(catalog->orbit_of[static_cast<std::size_t>(it->second)]);
    }
    return make(std::move(catalog), std::move(orbits));
  }

  const GroupPtr& group() const { return catalog_->group; }
  const PairCatalog& catalog() const { return *catalog_; }
  std::shared_ptr<const PairCatalog> catalog_ptr() const { return catalog_; }
  const std::vector<char>& members() const { return in_; }
  bool contains_orbit(int o) const { return in_[static_cast<std::size_t>(o)] != 0; }

  /// Non-reflexive pair orbits, as representative masks (sub, sup).
  std::vector<std::pair<ElementMask, ElementMask>> pairs() const {
    const auto& lat = group()->lattice();
    std::vector<std::pair<ElementMask, ElementMask>> out;
    for (int o = 0; o < catalog_->orbit_count(); ++o)
      if (in_[static_cast<std::size_t>(o)] && !catalog_->reflexive(o)) {
        auto [a, b] = catalog_->rep(o);
        out.emplace_back(lat.subgroups[static_cast<std::size_t>(a)], lat.subgroups[static_cast<std::size_t>(b)]);
      }
    return out;
  }

  /// H ≤_T K for actual subgroups.
  bool relates(ElementMask h, ElementMask k) const {
    const auto& lat = group()->lattice();
    auto it = catalog_->pair_index.find({lat.index(h), lat.index(k)});
    return it != catalog_->pair_index.end() && in_[static_cast<std::size_t>(catalog_->orbit_of[static_cast<std::size_t>(it->second)])];
  }

  friend bool operator==(const TransferSystem& a, const TransferSystem& b) {
    return a.group()->same_table(*b.group()) && a.in_ == b.in_;
  }

  static detail::ClosureRules rules(const PairCatalog& c) {
    const auto& g = *c.group;
    const auto& lat = g.lattice();
    detail::ClosureRules r;
    r.n = c.orbit_count();
    r.unary.resize(static_cast<std::size_t>(r.n));
    r.binary.assign(static_cast<std::size_t>(r.n), std::vector<std::vector<int>>(static_cast<std::size_t>(r.n)));
    for (int o = 0; o < r.n; ++o)
      if (c.reflexive(o)) r.always.push_back(o);
    const int subgroups = static_cast<int>(lat.subgroups.size());
    // pairs grouped by their smaller member, for transitivity
    std::vector<std::vector<int>> by_sub(static_cast<std::size_t>(subgroups));
    for (std::size_t p = 0; p < c.pairs.size(); ++p) by_sub[static_cast<std::size_t>(c.pairs[p].first)].push_back(static_cast<int>(p));
    for (std::size_t p = 0; p < c.pairs.size(); ++p) {
      auto [a, b] = c.pairs[p];
      const int o = c.orbit_of[p];
      const ElementMask h = lat.subgroups[static_cast<std::size_t>(a)], k = lat.subgroups[static_cast<std::size_t>(b)];
      for (int l = 0; l < subgroups; ++l) {
        const ElementMask lm = lat.subgroups[static_cast<std::size_t>(l)];
        if ((lm & ~k) != 0) continue;
        r.unary[static_cast<std::size_t>(o)].push_back(c.orbit(lat.index(h & lm), l));
      }
      for (int q : by_sub[static_cast<std::size_t>(b)]) {
        auto [b2, d] = c.pairs[static_cast<std::size_t>(q)];
        (void)b2;
        r.binary[static_cast<std::size_t>(o)][static_cast<std::size_t>(c.orbit_of[static_cast<std::size_t>(q)])].push_back(c.orbit(a, d));
      }
    }
    for (auto& u : r.unary) detail::dedupe(u);
    for (auto& row : r.binary)
      for (auto& cell : row) detail::dedupe(cell);
    r.finalize();
    return r;
  }

 private:
  TransferSystem(std::shared_ptr<const PairCatalog> c, std::vector<char> in) : catalog_(std::move(c)), in_(std::move(in)) {}

  std::shared_ptr<const PairCatalog> catalog_;
  std::vector<char> in_;
};

inline std::vector<TransferSystem> enumerate_transfer_systems(const GroupPtr& g, int order_bound = kDefaultOrderBound) {
  if (g->order() > order_bound) throw Error(ErrorKind::OrderBoundExceeded, g->label() + " exceeds the order bound");
  auto catalog = std::make_shared<const PairCatalog>(pair_catalog(g));
  std::vector<TransferSystem> out;
  for (auto& set : TransferSystem::rules(*catalog).enumerate()) {
    std::vector<int> members;
    for (int o = 0; o < catalog->orbit_count(); ++o)
      if (set[static_cast<std::size_t>(o)]) members.push_back(o);
    out.push_back(TransferSystem::make(catalog, std::move(members)));
  }
  return out;
}

/// The transfer system induced on a subgroup along an embedding K -> G.
inline TransferSystem restrict_transfer_system(const TransferSystem& t, const GroupHom& embedding) {
  const GroupPtr& k = embedding.source;
  std::vector<std::pair<ElementMask, ElementMask>> pairs;
  const auto& lat = k->lattice();
  auto push = [&](ElementMask m) {
    ElementMask out = 0;
    for (Element x : mask_elements(m)) out |= bit(embedding(x));
    return out;
  };
  for (ElementMask a : lat.subgroups)
    for (ElementMask b : lat.subgroups)
      if (a != b && (a & ~b) == 0 && t.relates(push(a), push(b))) pairs.emplace_back(a, b);
  return TransferSystem::from_pairs(k, pairs);
}

/// Per-group transfer systems are compatible when each restricts along every
/// embedding between the given groups to the system given for the subgroup.
inline std::optional<std::string> check_global_compatibility(const std::vector<TransferSystem>& systems) {
  for (const auto& big : systems)
    for (const auto& small : systems) {
      for (const auto& h : homs_up_to_conjugacy(small.group(), big.group())) {
        if (!h.is_injective()) continue;
        if (!(restrict_transfer_system(big, h) == small))
          return "restriction from " + big.group()->label() + " to " + small.group()->label() + " disagrees";
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Indexing systems

/// Orbit of a morphism G/H_i -> G/H_j under automorphisms of source and target.
struct MorphismClass {
  int source = 0;
  int target = 0;
  Element rep = 0;  // minimal coset representative in the orbit
  friend bool operator==(const MorphismClass&, const MorphismClass&) = default;
};

/// Morphism classes of the orbit category of a connected groupoid BG.
struct MorphismCatalog {
  std::shared_ptr<const OrbitCategory> orbits;
  std::vector<MorphismClass> classes;
  std::map<std::tuple<int, int, Element>, int> class_of;  // (source, target, coset rep) -> class

  int size() const { return static_cast<int>(classes.size()); }
  int classify(int i, int j, Element x) const { return class_of.at({i, j, orbits->coset_rep(j, x)}); }
  std::vector<Element> members(int c) const {
    std::vector<Element> out;
    for (const auto& [key, v] : class_of)
      if (v == c) out.push_back(std::get<2>(key));
    return out;
  }
};

inline MorphismCatalog morphism_catalog(const FiniteGroupoid& base) {
  if (!base.connected()) throw Error(ErrorKind::GroupMismatch, "indexing systems are built over a connected groupoid");
  MorphismCatalog c;
  c.orbits = std::make_shared<const OrbitCategory>(base);
  const OrbitCategory& oc = *c.orbits;
  for (int j = 0; j < oc.size(); ++j)
    for (int i = 0; i < oc.size(); ++i) {
      for (Element x : oc.morphisms(i, j)) {
        if (c.class_of.count({i, j, x})) continue;
        const int id = c.size();
        c.classes.push_back({i, j, x});
        for (Element u : oc.core(i).coset_reps)
          for (Element v : oc.core(j).coset_reps) {
            // v ∘ x ∘ u
            Element y = oc.compose(j, oc.compose(j, u, x, 0), v, 0);
            c.class_of.emplace(std::make_tuple(i, j, y), id);
          }
      }
    }
  return c;
}

namespace detail {

// The functor BH_i -> BH_j of a morphism with coset representative x.
inline GroupoidMap orbit_morphism_map(const OrbitCategory& oc, int i, int j, Element x) {
  const FiniteGroup& g = *oc.base().component(0);
  const auto& si = oc.object(i).embedded;
  const auto& sj = oc.object(j).embedded;
  auto pos = inverse_on_image(sj.inclusion);
  std::vector<Element> m(static_cast<std::size_t>(si.group->order()));
  const Element x_inv = g.inv(x);
  for (Element e = 0; e < si.group->order(); ++e) m[static_cast<std::size_t>(e)] = pos[static_cast<std::size_t>(g.conj(x_inv, si.inclusion(e)))];
  return GroupoidMap::make_trusted(FiniteGroupoid::of(si.group), FiniteGroupoid::of(sj.group), {0},
                                   {GroupHom{si.group, sj.group, std::move(m)}});
}

// Classes of the components of the pullback of a: i -> j along c: k -> j, as morphisms into k.
inline std::vector<int> base_change_classes(const MorphismCatalog& cat, int i, int j, Element a, int k, Element c) {
  const OrbitCategory& oc = *cat.orbits;
  const FiniteGroup& g = *oc.base().component(0);
  auto pb = homotopy_pullback(orbit_morphism_map(oc, i, j, a), orbit_morphism_map(oc, k, j, c));
  std::vector<int> out;
  const auto& incl = oc.object(k).embedded.inclusion;
  for (int t = 0; t < pb.apex.size(); ++t) {
    ElementMask s = 0;
    for (Element e : mask_elements(pb.to_right.hom(t).image())) s |= bit(incl(e));
    auto [o, d] = oc.classify(0, s);
    (void)g;
    out.push_back(cat.classify(o, k, d));
  }
  return out;
}

}  // namespace detail

/// A wide subcategory of the orbit category of BG, closed under composition
/// and base change, given by its admitted morphism classes.
class IndexingSystem {
 public:
  static IndexingSystem make(std::shared_ptr<const MorphismCatalog> catalog, std::vector<int> classes) {
    detail::dedupe(classes);
    std::vector<char> in(static_cast<std::size_t>(catalog->size()), 0);
    for (int c : classes) {
      if (c < 0 || c >= catalog->size()) throw Error(ErrorKind::InvalidIndexingSystem, "morphism class out of range");
      in[static_cast<std::size_t>(c)] = 1;
    }
    if (rules(*catalog).close(in) != in)
      throw Error(ErrorKind::InvalidIndexingSystem, "not closed under isomorphisms, composition and base change");
    return IndexingSystem(std::move(catalog), std::move(in));
  }

  const FiniteGroupoid& base() const { return catalog_->orbits->base(); }
  const OrbitCategory& orbit_category() const { return *catalog_->orbits; }
  const MorphismCatalog& catalog() const { return *catalog_; }
  const std::vector<char>& members() const { return in_; }
  bool contains_class(int c) const { return in_[static_cast<std::size_t>(c)] != 0; }
  bool admits(int i, int j, Element x) const { return contains_class(catalog_->classify(i, j, x)); }

  /// Admitted morphism classes.
  std::vector<MorphismClass> transfers() const {
    std::vector<MorphismClass> out;
    for (int c = 0; c < catalog_->size(); ++c)
      if (in_[static_cast<std::size_t>(c)]) out.push_back(catalog_->classes[static_cast<std::size_t>(c)]);
    return out;
  }

  static detail::ClosureRules rules(const MorphismCatalog& cat) {
    const OrbitCategory& oc = *cat.orbits;
    detail::ClosureRules r;
    r.n = cat.size();
    r.unary.resize(static_cast<std::size_t>(r.n));
    r.binary.assign(static_cast<std::size_t>(r.n), std::vector<std::vector<int>>(static_cast<std::size_t>(r.n)));
    std::vector<std::vector<Element>> members(static_cast<std::size_t>(r.n));
    for (const auto& [key, v] : cat.class_of) members[static_cast<std::size_t>(v)].push_back(std::get<2>(key));
    for (int c = 0; c < r.n; ++c) {
      const auto& mc = cat.classes[static_cast<std::size_t>(c)];
      if (mc.source == mc.target) r.always.push_back(c);
      // composition with every class out of the target
      for (int d = 0; d < r.n; ++d) {
        const auto& md = cat.classes[static_cast<std::size_t>(d)];
        if (md.source != mc.target) continue;
        auto& cell = r.binary[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
        for (Element b : members[static_cast<std::size_t>(d)])
          cell.push_back(cat.classify(mc.source, md.target, oc.compose(md.target, mc.rep, b, 0)));
        detail::dedupe(cell);
      }
      // base change along every morphism into the target
      for (int k = 0; k < oc.size(); ++k)
        for (Element x : oc.morphisms(k, mc.target))
          for (int e : detail::base_change_classes(cat, mc.source, mc.target, mc.rep, k, x))
            r.unary[static_cast<std::size_t>(c)].push_back(e);
      detail::dedupe(r.unary[static_cast<std::size_t>(c)]);
    }
    r.finalize();
    return r;
  }

 private:
  IndexingSystem(std::shared_ptr<const MorphismCatalog> c, std::vector<char> in) : catalog_(std::move(c)), in_(std::move(in)) {}

  std::shared_ptr<const MorphismCatalog> catalog_;
  std::vector<char> in_;
};

inline std::vector<IndexingSystem> indexing_systems(const GroupPtr& g, int order_bound = kDefaultOrderBound) {
  if (g->order() > order_bound) throw Error(ErrorKind::OrderBoundExceeded, g->label() + " exceeds the order bound");
  auto catalog = std::make_shared<const MorphismCatalog>(morphism_catalog(FiniteGroupoid::of(g)));
  std::vector<IndexingSystem> out;
  for (auto& set : IndexingSystem::rules(*catalog).enumerate()) {
    std::vector<int> members;
    for (int c = 0; c < catalog->size(); ++c)
      if (set[static_cast<std::size_t>(c)]) members.push_back(c);
    out.push_back(IndexingSystem::make(catalog, std::move(members)));
  }
  return out;
}

/// The transfer system with the same admitted inclusions: the morphism
/// G/H -> G/K with representative x corresponds to the pair H ⊆ xKx^-1.
inline TransferSystem to_transfer_system(const IndexingSystem& ix) {
  const OrbitCategory& oc = ix.orbit_category();
  const GroupPtr& g = oc.base().component(0);
  std::vector<std::pair<ElementMask, ElementMask>> pairs;
  for (const auto& mc : ix.transfers())
    pairs.emplace_back(oc.object(mc.source).subgroup, conjugate_mask(*g, oc.object(mc.target).subgroup, mc.rep));
  return TransferSystem::from_pairs(g, pairs);
}

/// bijection[i] = index of the transfer system matching indexing system i;
/// throws when the lists do not correspond one to one.
inline std::vector<int> indexing_transfer_bijection(const std::vector<IndexingSystem>& ix,
                                                    const std::vector<TransferSystem>& ts) {
  if (ix.size() != ts.size()) throw Error(ErrorKind::InvalidIndexingSystem, "enumerations differ in size");
  std::vector<int> out;
  std::vector<char> hit(ts.size(), 0);
  for (const auto& i : ix) {
    auto t = to_transfer_system(i);
    auto it = std::find(ts.begin(), ts.end(), t);
    if (it == ts.end() || hit[static_cast<std::size_t>(it - ts.begin())])
      throw Error(ErrorKind::InvalidIndexingSystem, "no unique matching transfer system");
    hit[static_cast<std::size_t>(it - ts.begin())] = 1;
    out.push_back(static_cast<int>(it - ts.begin()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Choices of norms

class NormChoice {
 public:
  enum class Kind { maximal, minimal, transfer, custom };

  /// All faithful maps.
  static NormChoice maximal() { return NormChoice(Kind::maximal, "maximal"); }
  /// Equivalences only.
  static NormChoice minimal() { return NormChoice(Kind::minimal, "minimal"); }
  /// Maps over BG admitted when the image pair of subgroups of G is in T.
  static NormChoice from_transfer_system(TransferSystem t) {
    NormChoice n(Kind::transfer, "transfer");
    n.transfer_ = std::move(t);
    return n;
  }
  static NormChoice custom(std::string name, LegClass::Predicate p) {
    NormChoice n(Kind::custom, std::move(name));
    n.predicate_ = std::move(p);
    return n;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::optional<TransferSystem>& transfer_system() const { return transfer_; }

  /// Membership of a connected map. For a transfer-generated choice the
  /// target is placed over BG by every embedding into G, all of which must
  /// admit the map.
  bool admits(const GroupoidMap& f) const {
    for (const auto& h : f.homs())
      if (!h.is_injective()) return false;
    switch (kind_) {
      case Kind::maximal: return true;
      case Kind::minimal: return is_equivalence(f);
      case Kind::custom: return predicate_(f);
      case Kind::transfer: {
        const GroupHom& h = f.hom(0);
        const GroupPtr& g = transfer_->group();
        bool any = false;
        for (const auto& e : homs_up_to_conjugacy(h.target, g)) {
          if (!e.is_injective()) continue;
          any = true;
          if (!admits_over(compose(e, h), e)) return false;
        }
        return any;
      }
    }
    return false;
  }

  /// Membership of a map over BG: source and target embedded into G.
  bool admits_over(const GroupHom& source_embedding, const GroupHom& target_embedding) const {
    if (kind_ != Kind::transfer) throw Error(ErrorKind::GroupMismatch, "choice is not generated by a transfer system");
    return transfer_->relates(source_embedding.image(), target_embedding.image());
  }

  LegClass leg_class() const {
    if (kind_ == Kind::maximal) return LegClass::faithful();
    NormChoice copy = *this;
    return LegClass::custom(name_, [copy](const GroupoidMap& f) { return copy.admits(f); }, true);
  }

 private:
  NormChoice(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::optional<TransferSystem> transfer_;
  LegClass::Predicate predicate_;
};

/// Global choices: every admitted map between library groups of order <=
/// bound is pulled back along every map. Transfer-generated choices: every
/// admitted map over BG is pulled back along every map over BG, and each
/// component is tested with its induced embedding.
inline ClosureReport verify_norm_choice(const NormChoice& n, int bound) {
  if (n.kind() != NormChoice::Kind::transfer) return check_base_change_closed(n.leg_class(), LegClass::all(), bound);

  ClosureReport report;
  const TransferSystem& t = *n.transfer_system();
  const GroupPtr& g = t.group();
  OrbitCategory oc(FiniteGroupoid::of(g));
  const auto& lat = g->lattice();
  for (int j = 0; j < oc.size(); ++j) {
    const auto& target = oc.object(j);
    if (target.embedded.group->order() > bound) continue;
    for (std::size_t s = 0; s < lat.subgroups.size(); ++s) {
      const ElementMask h = lat.subgroups[s];
      if ((h & ~target.subgroup) != 0 || !t.relates(h, target.subgroup)) continue;
      // admitted map BH -> BK over BG
      auto sub = subgroup_as_group(g, h);
      auto pos = detail::inverse_on_image(target.embedded.inclusion);
      std::vector<Element> m;
      for (Element e : sub.inclusion.map) m.push_back(pos[static_cast<std::size_t>(e)]);
      auto f = GroupoidMap::make_trusted(FiniteGroupoid::of(sub.group), FiniteGroupoid::of(target.embedded.group), {0},
                                         {GroupHom{sub.group, target.embedded.group, std::move(m)}});
      for (int k = 0; k < oc.size(); ++k)
        for (Element x : oc.morphisms(k, j)) {
          ++report.squares;
          auto along = detail::orbit_morphism_map(oc, k, j, x);
          auto pb = homotopy_pullback(f, along);
          const auto& incl = oc.object(k).embedded.inclusion;
          for (int c = 0; c < pb.apex.size(); ++c) {
            ElementMask img = 0;
            for (Element e : mask_elements(pb.to_right.hom(c).image())) img |= bit(incl(e));
            if (!t.relates(img, oc.object(k).subgroup)) {
              report.closed = false;
              report.counterexample.emplace(f, along, pb.to_right);
              return report;
            }
          }
        }
    }
  }
  return report;
}

}  // namespace glospan
