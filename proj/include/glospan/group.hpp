#pragma once

// Finite groups given by multiplication tables, their subgroup lattices,
// homomorphisms up to conjugacy, Weyl groups and double cosets.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glospan/error.hpp"

namespace glospan {

using Element = int;
/// Bit i set iff element i belongs to the set.
using ElementMask = std::uint64_t;

inline constexpr int kDefaultOrderBound = 32;
/// Subgroup machinery stores element sets as 64-bit masks.
inline constexpr int kMaxSubgroupOrder = 64;
/// Upper bound on raw candidate images tried by the homomorphism search.
inline constexpr std::uint64_t kDefaultSearchLimit = 4'000'000;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline std::vector<Element> mask_elements(ElementMask mask) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

inline int mask_size(ElementMask mask) { return std::popcount(mask); }

inline ElementMask bit(Element x) { return ElementMask{1} << x; }

/// Lexicographic comparison of the sorted element lists of two sets.
inline bool mask_lex_less(ElementMask a, ElementMask b) {
  while (a != 0 && b != 0) {
    int x = std::countr_zero(a);
    int y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

struct SubgroupLattice {
  /// All subgroups; members of a class are contiguous, classes in canonical order.
  std::vector<ElementMask> subgroups;
  std::vector<int> class_of;
  /// class -> member subgroup indices; the first member is the representative.
  std::vector<std::vector<int>> classes;
  /// to_rep[i] = c with c S_i c^-1 = representative of S_i's class.
  std::vector<Element> to_rep;
  std::unordered_map<ElementMask, int> index_of;

  int class_count() const { return static_cast<int>(classes.size()); }
  ElementMask rep(int cls) const { return subgroups[static_cast<std::size_t>(classes[static_cast<std::size_t>(cls)].front())]; }
  int index(ElementMask mask) const {
    auto it = index_of.find(mask);
    if (it == index_of.end()) throw Error(ErrorKind::NotASubgroup, "element set is not a subgroup");
    return it->second;
  }
  int class_of_mask(ElementMask mask) const { return class_of[static_cast<std::size_t>(index(mask))]; }
};

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
  struct Private {};

 public:
  FiniteGroup(Private, int order, std::vector<Element> table, std::string label)
      : order_(order), table_(std::move(table)), label_(std::move(label)) {
    identity_ = 0;
    for (Element e = 0; e < order_; ++e) {
      bool is_identity = true;
      for (Element x = 0; x < order_ && is_identity; ++x) is_identity = mul(e, x) == x;
      if (is_identity) {
        identity_ = e;
        break;
      }
    }
    inverse_.assign(static_cast<std::size_t>(order_), 0);
    for (Element x = 0; x < order_; ++x)
      for (Element y = 0; y < order_; ++y)
        if (mul(x, y) == identity_) inverse_[static_cast<std::size_t>(x)] = y;
  }

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  /// Validates the group axioms exhaustively.
  static GroupPtr from_table(const std::vector<std::vector<Element>>& rows, std::string label,
                             int order_bound = kDefaultOrderBound) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw Error(ErrorKind::TableNotAGroup, "empty table");
    if (n > order_bound)
      throw Error(ErrorKind::OrderBoundExceeded,
                  "order " + std::to_string(n) + " exceeds bound " + std::to_string(order_bound));
    std::vector<Element> flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::TableNotAGroup, "table is not square");
      for (Element v : row) {
        if (v < 0 || v >= n) throw Error(ErrorKind::TableNotAGroup, "entry out of range");
        flat.push_back(v);
      }
    }
    auto at = [&](Element a, Element b) { return flat[static_cast<std::size_t>(a * n + b)]; };
    std::optional<Element> identity;
    for (Element e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
      if (ok) identity = e;
    }
    if (!identity) throw Error(ErrorKind::TableNotAGroup, "no two-sided identity");
    for (Element x = 0; x < n; ++x) {
      bool has_inverse = false;
      for (Element y = 0; y < n && !has_inverse; ++y) has_inverse = at(x, y) == *identity && at(y, x) == *identity;
      if (!has_inverse) throw Error(ErrorKind::TableNotAGroup, "element " + std::to_string(x) + " has no inverse");
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (at(at(a, b), c) != at(a, at(b, c)))
            throw Error(ErrorKind::TableNotAGroup, "associativity fails at (" + std::to_string(a) + "," +
                                                       std::to_string(b) + "," + std::to_string(c) + ")");
    return std::make_shared<const FiniteGroup>(Private{}, n, std::move(flat), std::move(label));
  }

  /// For tables produced by constructions that are groups by design.
  static GroupPtr from_trusted(int order, std::vector<Element> flat, std::string label) {
    return std::make_shared<const FiniteGroup>(Private{}, order, std::move(flat), std::move(label));
  }

  int order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  const std::string& label() const noexcept { return label_; }

  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
  Element inv(Element a) const { return inverse_[static_cast<std::size_t>(a)]; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }

  int element_order(Element x) const {
    int k = 1;
    for (Element y = x; y != identity_; y = mul(y, x)) ++k;
    return k;
  }

  ElementMask all_mask() const {
    return order_ == 64 ? ~ElementMask{0} : (ElementMask{1} << order_) - 1;
  }

  bool same_table(const FiniteGroup& other) const { return order_ == other.order_ && table_ == other.table_; }

  std::vector<std::vector<Element>> rows() const {
    std::vector<std::vector<Element>> out(static_cast<std::size_t>(order_));
    for (Element a = 0; a < order_; ++a)
      out[static_cast<std::size_t>(a)].assign(table_.begin() + a * order_, table_.begin() + (a + 1) * order_);
    return out;
  }

  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Subgroup lattice, computed once on first use.
  const SubgroupLattice& lattice() const;

 private:
  int order_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::string label_;
  mutable std::once_flag lattice_once_;
  mutable std::unique_ptr<SubgroupLattice> lattice_;
};

// ---------------------------------------------------------------------------
// Element sets

inline ElementMask generate(const FiniteGroup& g, std::span<const Element> gens) {
  ElementMask result = bit(g.identity());
  std::vector<Element> frontier{g.identity()};
  while (!frontier.empty()) {
    Element x = frontier.back();
    frontier.pop_back();
    for (Element s : gens) {
      Element y = g.mul(x, s);
      if ((result & bit(y)) == 0) {
        result |= bit(y);
        frontier.push_back(y);
      }
    }
  }
  return result;
}

inline ElementMask generate_mask(const FiniteGroup& g, ElementMask gens) {
  auto list = mask_elements(gens);
  return generate(g, list);
}

inline bool is_subgroup_mask(const FiniteGroup& g, ElementMask mask) {
  if ((mask & bit(g.identity())) == 0) return false;
  for (Element a : mask_elements(mask)) {
    if ((mask & bit(g.inv(a))) == 0) return false;
    for (Element b : mask_elements(mask))
      if ((mask & bit(g.mul(a, b))) == 0) return false;
  }
  return true;
}

/// g S g^-1.
inline ElementMask conjugate_mask(const FiniteGroup& g, ElementMask mask, Element by) {
  ElementMask out = 0;
  for (Element x : mask_elements(mask)) out |= bit(g.conj(by, x));
  return out;
}

inline ElementMask normalizer_mask(const FiniteGroup& g, ElementMask mask) {
  ElementMask out = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (conjugate_mask(g, mask, x) == mask) out |= bit(x);
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup lattice

inline std::unique_ptr<SubgroupLattice> compute_lattice(const FiniteGroup& g) {
  if (g.order() > kMaxSubgroupOrder)
    throw Error(ErrorKind::OrderBoundExceeded, "subgroup enumeration needs order <= 64");
  std::set<ElementMask> found;
  std::vector<ElementMask> queue;
  std::vector<ElementMask> cyclic;
  for (Element x = 0; x < g.order(); ++x) {
    Element gen[] = {x};
    ElementMask c = generate(g, gen);
    cyclic.push_back(c);
    if (found.insert(c).second) queue.push_back(c);
  }
  // Every subgroup is reached by joining cyclic subgroups one at a time.
  for (std::size_t i = 0; i < queue.size(); ++i) {
    ElementMask s = queue[i];
    for (Element x = 0; x < g.order(); ++x) {
      if ((s & bit(x)) != 0) continue;
      ElementMask joined = generate_mask(g, s | bit(x));
      if (found.insert(joined).second) queue.push_back(joined);
    }
  }

  struct Entry {
    ElementMask mask;
    ElementMask canon;
    Element to_canon;
  };
  std::vector<Entry> entries;
  for (ElementMask s : found) {
    ElementMask best = s;
    Element best_g = g.identity();
    for (Element c = 0; c < g.order(); ++c) {
      ElementMask t = conjugate_mask(g, s, c);
      if (mask_lex_less(t, best)) {
        best = t;
        best_g = c;
      }
    }
    entries.push_back({s, best, best_g});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    int oa = mask_size(a.canon), ob = mask_size(b.canon);
    if (oa != ob) return oa < ob;
    if (a.canon != b.canon) return mask_lex_less(a.canon, b.canon);
    if (a.mask == a.canon && b.mask != b.canon) return true;
    if (b.mask == b.canon && a.mask != a.canon) return false;
    return mask_lex_less(a.mask, b.mask);
  });
  auto lat = std::make_unique<SubgroupLattice>();
  for (const auto& e : entries) {
    int idx = static_cast<int>(lat->subgroups.size());
    if (lat->classes.empty() || lat->rep(lat->class_count() - 1) != e.canon) lat->classes.emplace_back();
    lat->classes.back().push_back(idx);
    lat->subgroups.push_back(e.mask);
    lat->class_of.push_back(lat->class_count() - 1);
    lat->to_rep.push_back(e.to_canon);
    lat->index_of.emplace(e.mask, idx);
  }
  return lat;
}

inline const SubgroupLattice& FiniteGroup::lattice() const {
  std::call_once(lattice_once_, [this] { lattice_ = compute_lattice(*this); });
  return *lattice_;
}

struct Subgroup {
  GroupPtr parent;
  ElementMask mask = 0;

  std::vector<Element> elements() const { return mask_elements(mask); }
  int order() const { return mask_size(mask); }
  bool contains(Element x) const { return (mask & bit(x)) != 0; }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.parent == b.parent && a.mask == b.mask; }
};

inline Subgroup make_subgroup(const GroupPtr& g, std::span<const Element> elements) {
  ElementMask mask = 0;
  for (Element x : elements) {
    if (x < 0 || x >= g->order()) throw Error(ErrorKind::NotASubgroup, "element index out of range");
    mask |= bit(x);
  }
  if (!is_subgroup_mask(*g, mask)) throw Error(ErrorKind::NotASubgroup, "element set is not closed");
  return {g, mask};
}

inline Subgroup whole_group(const GroupPtr& g) { return {g, g->all_mask()}; }
inline Subgroup trivial_subgroup(const GroupPtr& g) { return {g, bit(g->identity())}; }

inline void require_subgroup(const FiniteGroup& g, ElementMask mask) {
  if (!is_subgroup_mask(g, mask)) throw Error(ErrorKind::NotASubgroup, "not a subgroup of " + g.label());
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[static_cast<std::size_t>(x)]; }

  ElementMask image() const {
    ElementMask out = 0;
    for (Element y : map) out |= bit(y);
    return out;
  }
  bool is_injective() const {
    std::vector<char> seen(static_cast<std::size_t>(target->order()), 0);
    for (Element y : map) {
      if (seen[static_cast<std::size_t>(y)]) return false;
      seen[static_cast<std::size_t>(y)] = 1;
    }
    return true;
  }
  bool is_surjective() const { return mask_size(image()) == target->order(); }
  bool is_isomorphism() const { return source->order() == target->order() && is_injective(); }

  bool is_homomorphism() const {
    if (static_cast<int>(map.size()) != source->order()) return false;
    for (Element a = 0; a < source->order(); ++a)
      for (Element b = 0; b < source->order(); ++b)
        if ((*this)(source->mul(a, b)) != target->mul((*this)(a), (*this)(b))) return false;
    return true;
  }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.source->same_table(*b.source) && a.target->same_table(*b.target) && a.map == b.map;
  }
};

inline GroupHom identity_hom(const GroupPtr& g) {
  std::vector<Element> m(static_cast<std::size_t>(g->order()));
  std::iota(m.begin(), m.end(), 0);
  return {g, g, std::move(m)};
}

/// outer ∘ inner.
inline GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  std::vector<Element> m(inner.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = outer(inner.map[i]);
  return {inner.source, outer.target, std::move(m)};
}

inline GroupHom inverse_iso(const GroupHom& f) {
  std::vector<Element> m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[static_cast<std::size_t>(f.map[i])] = static_cast<Element>(i);
  return {f.target, f.source, std::move(m)};
}

/// Post-composition with conjugation by g.
inline GroupHom conjugate_hom(const GroupHom& f, Element g) {
  GroupHom out = f;
  for (auto& y : out.map) y = f.target->conj(g, y);
  return out;
}

/// Lexicographically minimal image tuple over post-conjugation; witness c with result = c f c^-1.
inline std::pair<std::vector<Element>, Element> canonical_image_tuple(const FiniteGroup& target,
                                                                      const std::vector<Element>& map) {
  std::vector<Element> best = map;
  Element best_c = target.identity();
  std::vector<Element> cand(map.size());
  for (Element c = 0; c < target.order(); ++c) {
    for (std::size_t i = 0; i < map.size(); ++i) cand[i] = target.conj(c, map[i]);
    if (cand < best) {
      best = cand;
      best_c = c;
    }
  }
  return {best, best_c};
}

inline GroupHom canonical_hom(const GroupHom& f) {
  return {f.source, f.target, canonical_image_tuple(*f.target, f.map).first};
}

inline bool conjugate_homs(const GroupHom& a, const GroupHom& b) {
  return canonical_image_tuple(*a.target, a.map).first == canonical_image_tuple(*b.target, b.map).first;
}

/// Deterministic small generating set: elements of largest order first.
inline std::vector<Element> generators(const FiniteGroup& g) {
  std::vector<Element> order(static_cast<std::size_t>(g.order()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> ords(order.size());
  for (Element x = 0; x < g.order(); ++x) ords[static_cast<std::size_t>(x)] = g.element_order(x);
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return ords[static_cast<std::size_t>(a)] > ords[static_cast<std::size_t>(b)]; });
  std::vector<Element> gens;
  ElementMask span = bit(g.identity());
  for (Element x : order) {
    if ((span & bit(x)) != 0) continue;
    gens.push_back(x);
    span = generate(g, gens);
    if (span == g.all_mask()) break;
  }
  return gens;
}

/// Spanning tree of the Cayley graph of a group with respect to a generating set.
struct CayleyTree {
  std::vector<Element> gens;
  std::vector<Element> bfs_order;            // starts at identity
  std::vector<std::pair<Element, int>> parent;  // x = parent.first * gens[parent.second]
};

inline CayleyTree cayley_tree(const FiniteGroup& g, std::vector<Element> gens) {
  CayleyTree t;
  t.gens = std::move(gens);
  t.parent.assign(static_cast<std::size_t>(g.order()), {-1, -1});
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  t.bfs_order.push_back(g.identity());
  seen[static_cast<std::size_t>(g.identity())] = 1;
  for (std::size_t i = 0; i < t.bfs_order.size(); ++i) {
    Element x = t.bfs_order[i];
    for (int s = 0; s < static_cast<int>(t.gens.size()); ++s) {
      Element y = g.mul(x, t.gens[static_cast<std::size_t>(s)]);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        t.parent[static_cast<std::size_t>(y)] = {x, s};
        t.bfs_order.push_back(y);
      }
    }
  }
  return t;
}

/// Extends generator images to a homomorphism if one exists.
inline std::optional<std::vector<Element>> extend_hom(const FiniteGroup& source, const FiniteGroup& target,
                                                      const CayleyTree& tree, std::span<const Element> images) {
  std::vector<Element> phi(static_cast<std::size_t>(source.order()), -1);
  phi[static_cast<std::size_t>(source.identity())] = target.identity();
  for (std::size_t i = 1; i < tree.bfs_order.size(); ++i) {
    Element x = tree.bfs_order[i];
    auto [p, s] = tree.parent[static_cast<std::size_t>(x)];
    phi[static_cast<std::size_t>(x)] = target.mul(phi[static_cast<std::size_t>(p)], images[static_cast<std::size_t>(s)]);
  }
  if (static_cast<int>(tree.bfs_order.size()) != source.order()) return std::nullopt;
  // Consistency on every Cayley edge makes phi multiplicative.
  for (Element x = 0; x < source.order(); ++x)
    for (std::size_t s = 0; s < tree.gens.size(); ++s)
      if (phi[static_cast<std::size_t>(source.mul(x, tree.gens[s]))] !=
          target.mul(phi[static_cast<std::size_t>(x)], images[s]))
        return std::nullopt;
  return phi;
}

/// Every homomorphism source -> target, as image arrays in lexicographic order.
inline std::vector<GroupHom> all_homs(const GroupPtr& source, const GroupPtr& target,
                                      std::uint64_t search_limit = kDefaultSearchLimit) {
  CayleyTree tree = cayley_tree(*source, generators(*source));
  std::vector<std::vector<Element>> choices;
  std::uint64_t total = 1;
  for (Element s : tree.gens) {
    int os = source->element_order(s);
    std::vector<Element> c;
    for (Element y = 0; y < target->order(); ++y)
      if (os % target->element_order(y) == 0) c.push_back(y);
    total *= c.size();
    if (total > search_limit)
      throw Error(ErrorKind::OrderBoundExceeded, "homomorphism search " + source->label() + " -> " +
                                                     target->label() + " exceeds the search limit");
    choices.push_back(std::move(c));
  }
  std::vector<GroupHom> out;
  std::vector<Element> images(tree.gens.size());
  std::vector<std::size_t> idx(tree.gens.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < idx.size(); ++i) images[i] = choices[i][idx[i]];
    if (auto phi = extend_hom(*source, *target, tree, images)) out.push_back({source, target, std::move(*phi)});
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const GroupHom& a, const GroupHom& b) { return a.map < b.map; });
  return out;
}

/// One canonical representative per post-conjugation class, sorted by image tuple.
inline std::vector<GroupHom> homs_up_to_conjugacy(const GroupPtr& source, const GroupPtr& target,
                                                  std::uint64_t search_limit = kDefaultSearchLimit) {
  std::set<std::vector<Element>> canon;
  for (const auto& f : all_homs(source, target, search_limit))
    canon.insert(canonical_image_tuple(*target, f.map).first);
  std::vector<GroupHom> out;
  for (const auto& m : canon) out.push_back({source, target, m});
  return out;
}

inline std::vector<GroupHom> all_isomorphisms(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return {};
  std::vector<GroupHom> out;
  for (auto& f : all_homs(a, b))
    if (f.is_injective()) out.push_back(std::move(f));
  return out;
}

inline std::optional<GroupHom> find_isomorphism(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order() || a->is_abelian() != b->is_abelian()) return std::nullopt;
  std::map<int, int> ha, hb;
  for (Element x = 0; x < a->order(); ++x) ++ha[a->element_order(x)];
  for (Element x = 0; x < b->order(); ++x) ++hb[b->element_order(x)];
  if (ha != hb) return std::nullopt;
  CayleyTree tree = cayley_tree(*a, generators(*a));
  std::vector<std::vector<Element>> choices;
  for (Element s : tree.gens) {
    std::vector<Element> c;
    for (Element y = 0; y < b->order(); ++y)
      if (b->element_order(y) == a->element_order(s)) c.push_back(y);
    choices.push_back(std::move(c));
  }
  std::vector<Element> images(tree.gens.size());
  std::vector<std::size_t> idx(tree.gens.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < idx.size(); ++i) images[i] = choices[i][idx[i]];
    if (auto phi = extend_hom(*a, *b, tree, images)) {
      GroupHom f{a, b, std::move(*phi)};
      if (f.is_injective()) return f;
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Subgroups as groups, Weyl groups, double cosets

struct EmbeddedSubgroup {
  GroupPtr group;
  GroupHom inclusion;  // group -> parent
};

/// The subgroup as a FiniteGroup on its sorted elements.
inline EmbeddedSubgroup subgroup_as_group(const GroupPtr& parent, ElementMask mask, std::string label = {}) {
  auto elems = mask_elements(mask);
  std::vector<int> pos(static_cast<std::size_t>(parent->order()), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<Element> flat(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = pos[static_cast<std::size_t>(parent->mul(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]))];
      if (p < 0) throw Error(ErrorKind::NotASubgroup, "element set is not closed");
      flat[static_cast<std::size_t>(i * n + j)] = p;
    }
  if (label.empty()) label = "sub(" + parent->label() + "," + std::to_string(n) + ")";
  auto g = FiniteGroup::from_trusted(n, std::move(flat), std::move(label));
  return {g, GroupHom{g, parent, elems}};
}

struct WeylGroup {
  GroupPtr group;                    // N_G(H)/H
  ElementMask normalizer = 0;
  std::vector<int> quotient;         // element of G -> index in group, -1 outside N_G(H)
  std::vector<Element> coset_reps;   // minimal element of each coset, in index order
};

inline WeylGroup weyl_group(const GroupPtr& g, ElementMask h) {
  require_subgroup(*g, h);
  WeylGroup w;
  w.normalizer = normalizer_mask(*g, h);
  w.quotient.assign(static_cast<std::size_t>(g->order()), -1);
  for (Element n : mask_elements(w.normalizer)) {
    if (w.quotient[static_cast<std::size_t>(n)] >= 0) continue;
    int idx = static_cast<int>(w.coset_reps.size());
    w.coset_reps.push_back(n);
    for (Element x : mask_elements(h)) w.quotient[static_cast<std::size_t>(g->mul(n, x))] = idx;
  }
  const int m = static_cast<int>(w.coset_reps.size());
  std::vector<Element> flat(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      flat[static_cast<std::size_t>(i * m + j)] =
          w.quotient[static_cast<std::size_t>(g->mul(w.coset_reps[static_cast<std::size_t>(i)], w.coset_reps[static_cast<std::size_t>(j)]))];
  w.group = FiniteGroup::from_trusted(m, std::move(flat), "W(" + g->label() + ")");
  return w;
}

/// H\G/K as a partition of G; classes sorted by their minimal element.
inline std::vector<std::vector<Element>> double_cosets(const FiniteGroup& g, ElementMask h, ElementMask k) {
  require_subgroup(g, h);
  require_subgroup(g, k);
  std::vector<int> cls(static_cast<std::size_t>(g.order()), -1);
  std::vector<std::vector<Element>> out;
  auto hs = mask_elements(h), ks = mask_elements(k);
  for (Element x = 0; x < g.order(); ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    int id = static_cast<int>(out.size());
    ElementMask members = 0;
    for (Element a : hs)
      for (Element b : ks) members |= bit(g.mul(g.mul(a, x), b));
    for (Element y : mask_elements(members)) cls[static_cast<std::size_t>(y)] = id;
    out.push_back(mask_elements(members));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

struct AutomorphismData {
  GroupPtr aut;                             // composition (a*b)(x) = a(b(x))
  std::vector<std::vector<Element>> maps;   // element of aut -> automorphism; index 0 is the identity
  std::vector<int> outer_class;             // element of aut -> index of its class in Out(G)
  int outer_count = 0;
  ElementMask inner = 0;                    // only meaningful when |Aut| <= 64
  std::vector<int> inner_elements;
};

inline AutomorphismData automorphisms(const GroupPtr& g, int aut_order_bound = 4096) {
  AutomorphismData d;
  for (auto& f : all_isomorphisms(g, g)) d.maps.push_back(std::move(f.map));
  const int n = static_cast<int>(d.maps.size());
  if (n > aut_order_bound)
    throw Error(ErrorKind::OrderBoundExceeded, "automorphism group of " + g->label() + " exceeds bound");
  std::map<std::vector<Element>, int> index;
  for (int i = 0; i < n; ++i) index.emplace(d.maps[static_cast<std::size_t>(i)], i);
  std::vector<Element> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<Element> tmp(static_cast<std::size_t>(g->order()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (Element x = 0; x < g->order(); ++x)
        tmp[static_cast<std::size_t>(x)] = d.maps[static_cast<std::size_t>(a)][static_cast<std::size_t>(d.maps[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      flat[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] = index.at(tmp);
    }
  d.aut = FiniteGroup::from_trusted(n, std::move(flat), "Aut(" + g->label() + ")");
  std::set<int> inner;
  for (Element c = 0; c < g->order(); ++c) {
    for (Element x = 0; x < g->order(); ++x) tmp[static_cast<std::size_t>(x)] = g->conj(c, x);
    inner.insert(index.at(tmp));
  }
  d.inner_elements.assign(inner.begin(), inner.end());
  if (n <= 64)
    for (int i : inner) d.inner |= bit(i);
  d.outer_class.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (d.outer_class[static_cast<std::size_t>(a)] >= 0) continue;
    for (int i : inner) d.outer_class[static_cast<std::size_t>(d.aut->mul(a, i))] = d.outer_count;
    ++d.outer_count;
  }
  return d;
}

}  // namespace glospan
