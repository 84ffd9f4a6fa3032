#pragma once

// Functors on the core of an orbit category: a commutative algebra per
// orbit with a Weyl-group action, and the restriction and norm operations
// along maps of groupoids.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glospan/algebra.hpp"
#include "glospan/groupoid.hpp"
#include "glospan/marks.hpp"
#include "glospan/span.hpp"

namespace glospan {

/// Index in core(i).group of the automorphism of orbit i given by n ∈ N(H_i).
/// The core element n acts on BH_i over BG through h -> n h n^-1.
inline int core_element(const OrbitCategory& oc, int i, Element n) {
  const auto& reps = oc.core(i).coset_reps;
  auto it = std::find(reps.begin(), reps.end(), oc.coset_rep(i, n));
  if (it == reps.end()) throw Error(ErrorKind::NotASubgroup, "element does not normalize the orbit subgroup");
  return static_cast<int>(it - reps.begin());
}

struct OrbFunctor {
  std::shared_ptr<const OrbitCategory> orbits;
  std::vector<AlgebraPtr> values;
  /// actions[i][e]: left action of core element e of orbit i
  std::vector<std::vector<AlgebraMap>> actions;

  const FiniteGroupoid& base() const { return orbits->base(); }
  int size() const { return static_cast<int>(values.size()); }
  const AlgebraPtr& value(int i) const { return values[static_cast<std::size_t>(i)]; }
  const AlgebraMap& action(int i, int e) const { return actions[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]; }
};

/// First failure of: values are algebras, actions are algebra maps, group law.
inline std::optional<std::string> check_actions(const OrbFunctor& e) {
  for (int i = 0; i < e.size(); ++i) {
    if (auto d = e.value(i)->defect()) return "orbit " + std::to_string(i) + ": " + *d;
    const auto& core = *e.orbits->core(i).group;
    if (static_cast<int>(e.actions[static_cast<std::size_t>(i)].size()) != core.order())
      return "orbit " + std::to_string(i) + ": wrong number of action maps";
    for (int a = 0; a < core.order(); ++a) {
      const auto& m = e.action(i, a);
      if (!same_algebra(m.source, e.value(i)) || !same_algebra(m.target, e.value(i)))
        return "orbit " + std::to_string(i) + ": action on the wrong algebra";
      if (auto d = m.defect()) return "orbit " + std::to_string(i) + " action " + std::to_string(a) + ": " + *d;
    }
    if (!(e.action(i, 0) == AlgebraMap::identity(e.value(i)))) return "orbit " + std::to_string(i) + ": identity acts nontrivially";
    for (int a = 0; a < core.order(); ++a)
      for (int b = 0; b < core.order(); ++b)
        if (!(compose(e.action(i, a), e.action(i, b)) == e.action(i, core.mul(a, b))))
          return "orbit " + std::to_string(i) + ": group law fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return std::nullopt;
}

inline OrbFunctor constant_functor(const FiniteGroupoid& x, const AlgebraPtr& a) {
  OrbFunctor e;
  e.orbits = std::make_shared<const OrbitCategory>(x);
  for (int i = 0; i < e.orbits->size(); ++i) {
    e.values.push_back(a);
    e.actions.emplace_back(static_cast<std::size_t>(e.orbits->core(i).group->order()), AlgebraMap::identity(a));
  }
  return e;
}

/// H -> A(H) ⊗ Q with N(H) acting by conjugation of orbit types.
inline OrbFunctor burnside_functor(const GroupPtr& g) {
  OrbFunctor e;
  e.orbits = std::make_shared<const OrbitCategory>(FiniteGroupoid::of(g));
  const OrbitCategory& oc = *e.orbits;
  for (int i = 0; i < oc.size(); ++i) {
    const auto& emb = oc.object(i).embedded;
    const GroupPtr& h = emb.group;
    auto a = burnside_algebra(h);
    auto pos = detail::inverse_on_image(emb.inclusion);
    const auto& lat = h->lattice();
    std::vector<AlgebraMap> acts;
    for (Element n : oc.core(i).coset_reps) {
      std::vector<Element> perm(static_cast<std::size_t>(h->order()));
      for (Element x = 0; x < h->order(); ++x) perm[static_cast<std::size_t>(x)] = pos[static_cast<std::size_t>(g->conj(n, emb.inclusion(x)))];
      AlgebraMap m{a, a, {}};
      for (int c = 0; c < lat.class_count(); ++c) {
        ElementMask img = 0;
        for (Element x : mask_elements(lat.rep(c))) img |= bit(perm[static_cast<std::size_t>(x)]);
        m.columns.push_back(basis_vector(lat.class_of_mask(img)));
      }
      acts.push_back(std::move(m));
    }
    e.values.push_back(std::move(a));
    e.actions.push_back(std::move(acts));
  }
  return e;
}

/// Pointwise tensor product over the same base.
inline OrbFunctor tensor_functors(const OrbFunctor& a, const OrbFunctor& b) {
  if (!(a.base() == b.base())) throw Error(ErrorKind::GroupMismatch, "functors live over different groupoids");
  OrbFunctor e;
  e.orbits = a.orbits;
  for (int i = 0; i < a.size(); ++i) {
    auto v = tensor({a.value(i), b.value(i)});
    std::vector<AlgebraMap> acts;
    for (std::size_t k = 0; k < a.actions[static_cast<std::size_t>(i)].size(); ++k)
      acts.push_back(tensor_maps(v, v, {a.action(i, static_cast<int>(k)), b.action(i, static_cast<int>(k))}, {0, 1}));
    e.values.push_back(std::move(v));
    e.actions.push_back(std::move(acts));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Restriction

/// For f: Y -> X, the orbit of X under each orbit of Y (its faithful part)
/// and the induced map of core groups.
struct RestrictionPlan {
  std::vector<int> object;
  std::vector<std::vector<int>> weyl;
};

inline RestrictionPlan restriction_plan(const GroupoidMap& f, const OrbitCategory& oy, const OrbitCategory& ox) {
  RestrictionPlan plan;
  for (int o = 0; o < oy.size(); ++o) {
    const auto& obj = oy.object(o);
    const GroupHom& phi = f.hom(obj.component);
    const int t = f.assigned(obj.component);
    const FiniteGroup& k = *ox.base().component(t);
    ElementMask img = 0;
    for (Element x : mask_elements(obj.subgroup)) img |= bit(phi(x));
    auto [target, d] = ox.classify(t, img);
    plan.object.push_back(target);
    std::vector<int> w;
    for (Element n : oy.core(o).coset_reps) w.push_back(core_element(ox, target, k.conj(d, phi(n))));
    plan.weyl.push_back(std::move(w));
  }
  return plan;
}

/// (f*E)(M) = E(f_! M).
inline OrbFunctor restrict_along(const GroupoidMap& f, const OrbFunctor& e) {
  if (!(f.target() == e.base())) throw Error(ErrorKind::GroupMismatch, "map does not land in the functor's base");
  OrbFunctor out;
  out.orbits = std::make_shared<const OrbitCategory>(f.source());
  auto plan = restriction_plan(f, *out.orbits, *e.orbits);
  for (int o = 0; o < out.orbits->size(); ++o) {
    const int t = plan.object[static_cast<std::size_t>(o)];
    out.values.push_back(e.value(t));
    std::vector<AlgebraMap> acts;
    for (int w : plan.weyl[static_cast<std::size_t>(o)]) acts.push_back(e.action(t, w));
    out.actions.push_back(std::move(acts));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Norms

/// For f: Y -> X, per orbit M of X: the orbits of Y under the components of
/// Y x_X M in pullback order, and per core element of M the permutation of
/// components with the core element of Y acting on each slot.
struct NormPlan {
  std::vector<std::vector<int>> slots;
  struct Move {
    int to = 0;
    int core = 0;
  };
  std::vector<std::vector<std::vector<Move>>> weyl;
};

inline GroupoidMap orbit_inclusion(const OrbitCategory& ox, int m) {
  const auto& obj = ox.object(m);
  return GroupoidMap::make_trusted(FiniteGroupoid::of(obj.embedded.group), ox.base(), {obj.component}, {obj.embedded.inclusion});
}

inline NormPlan norm_plan(const GroupoidMap& f, const OrbitCategory& oy, const OrbitCategory& ox) {
  NormPlan plan;
  for (int m = 0; m < ox.size(); ++m) {
    const auto& obj = ox.object(m);
    const FiniteGroup& g = *ox.base().component(obj.component);
    auto pb = homotopy_pullback(f, orbit_inclusion(ox, m));
    const int n = pb.apex.size();
    std::vector<int> slots;
    std::vector<Element> conj;
    for (int s = 0; s < n; ++s) {
      auto [o, c] = oy.classify(pb.to_left.component_map(s));
      slots.push_back(o);
      conj.push_back(c);
    }
    std::vector<std::vector<NormPlan::Move>> moves;
    for (Element nn : ox.core(m).coset_reps) {
      std::vector<NormPlan::Move> mv(static_cast<std::size_t>(n));
      const Element n_inv = g.inv(nn);
      for (int s = 0; s < n; ++s) {
        const int a_comp = pb.info[static_cast<std::size_t>(s)].left;
        const GroupHom& alpha = f.hom(a_comp);
        const FiniteGroup& a = *alpha.source;
        const Element target = g.mul(pb.info[static_cast<std::size_t>(s)].rep, n_inv);
        bool found = false;
        for (int t = 0; t < n && !found; ++t) {
          if (pb.info[static_cast<std::size_t>(t)].left != a_comp) continue;
          const Element xt_inv = g.inv(pb.info[static_cast<std::size_t>(t)].rep);
          for (Element y = 0; y < a.order() && !found; ++y) {
            Element h = g.mul(g.mul(xt_inv, g.inv(alpha(y))), target);
            if (!(obj.subgroup & bit(h))) continue;
            // target = alpha(y) x_t h: the slot s goes to t, acted on by c_t y^-1 c_s^-1
            Element w = a.mul(a.mul(conj[static_cast<std::size_t>(t)], a.inv(y)), a.inv(conj[static_cast<std::size_t>(s)]));
            mv[static_cast<std::size_t>(s)] = {t, core_element(oy, slots[static_cast<std::size_t>(s)], w)};
            found = true;
          }
        }
        if (!found) throw Error(ErrorKind::GroupMismatch, "Weyl element does not permute pullback components");
      }
      moves.push_back(std::move(mv));
    }
    plan.slots.push_back(std::move(slots));
    plan.weyl.push_back(std::move(moves));
  }
  return plan;
}

/// (f_⊗E)(M) = ⊗ of E over the components of Y x_X M.
inline OrbFunctor norm_along(const GroupoidMap& f, const OrbFunctor& e, const LegClass& norms = LegClass::faithful()) {
  if (!(f.source() == e.base())) throw Error(ErrorKind::GroupMismatch, "map does not start at the functor's base");
  if (!norms.contains(f)) throw Error(ErrorKind::ClassViolation, "map is not in the norm class " + norms.name());
  OrbFunctor out;
  out.orbits = std::make_shared<const OrbitCategory>(f.target());
  auto plan = norm_plan(f, *e.orbits, *out.orbits);
  for (int m = 0; m < out.orbits->size(); ++m) {
    const auto& slots = plan.slots[static_cast<std::size_t>(m)];
    std::vector<AlgebraPtr> factors;
    for (int o : slots) factors.push_back(e.value(o));
    auto v = tensor(factors);
    std::vector<AlgebraMap> acts;
    for (const auto& mv : plan.weyl[static_cast<std::size_t>(m)]) {
      std::vector<AlgebraMap> maps;
      std::vector<int> slot_of;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        maps.push_back(e.action(slots[s], mv[s].core));
        slot_of.push_back(mv[s].to);
      }
      acts.push_back(tensor_maps(v, v, maps, slot_of));
    }
    out.values.push_back(std::move(v));
    out.actions.push_back(std::move(acts));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Base change

struct BaseChangeReport {
  bool ok = true;
  long long checked = 0;
  std::vector<std::string> failures;
};

namespace detail {

inline std::string multiset_string(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

inline bool same_multiset(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace detail

/// (g∘f)_⊗ against g_⊗ f_⊗ on orbit data: the orbits of Y feeding each orbit
/// of X agree as multisets.
inline BaseChangeReport check_composite_norm(const GroupoidMap& f, const GroupoidMap& g, const OrbitCategory& oy, const OrbitCategory& om,
                                             const OrbitCategory& ox) {
  BaseChangeReport r;
  auto direct = norm_plan(compose(g, f), oy, ox);
  auto first = norm_plan(f, oy, om);
  auto second = norm_plan(g, om, ox);
  for (int m = 0; m < ox.size(); ++m) {
    ++r.checked;
    std::vector<int> staged;
    for (int t : second.slots[static_cast<std::size_t>(m)])
      for (int o : first.slots[static_cast<std::size_t>(t)]) staged.push_back(o);
    if (!detail::same_multiset(staged, direct.slots[static_cast<std::size_t>(m)])) {
      r.ok = false;
      r.failures.push_back("orbit " + std::to_string(m) + ": composite " + detail::multiset_string(direct.slots[static_cast<std::size_t>(m)]) +
                           " vs staged " + detail::multiset_string(staged));
    }
  }
  return r;
}

/// Same, and the two algebras (g∘f)_⊗E and g_⊗ f_⊗E have equal dimension.
inline BaseChangeReport check_composite_norm(const GroupoidMap& f, const GroupoidMap& g, const OrbFunctor& e) {
  auto r = check_composite_norm(f, g, OrbitCategory(f.source()), OrbitCategory(f.target()), OrbitCategory(g.target()));
  auto lhs = norm_along(compose(g, f), e);
  auto rhs = norm_along(g, norm_along(f, e));
  for (int m = 0; m < lhs.size(); ++m)
    if (lhs.value(m)->dim != rhs.value(m)->dim) {
      r.ok = false;
      r.failures.push_back("orbit " + std::to_string(m) + ": dimensions differ");
    }
  return r;
}

/// (g∘f)* against f* g*. The orbit categories are those of f.source(),
/// f.target() and g.target().
inline BaseChangeReport check_composite_restriction(const GroupoidMap& f, const GroupoidMap& g, const OrbitCategory& oy,
                                                    const OrbitCategory& om, const OrbitCategory& ox) {
  BaseChangeReport r;
  auto direct = restriction_plan(compose(g, f), oy, ox);
  auto first = restriction_plan(f, oy, om);
  auto second = restriction_plan(g, om, ox);
  for (int o = 0; o < oy.size(); ++o) {
    ++r.checked;
    const int mid = first.object[static_cast<std::size_t>(o)];
    const int t = direct.object[static_cast<std::size_t>(o)];
    bool same = second.object[static_cast<std::size_t>(mid)] == t;
    if (same) {
      // the two restrictions agree up to one core element of the target orbit
      const auto& w = direct.weyl[static_cast<std::size_t>(o)];
      const FiniteGroup& core = *ox.core(t).group;
      same = false;
      for (Element c = 0; c < core.order() && !same; ++c) {
        same = true;
        for (std::size_t e = 0; same && e < w.size(); ++e)
          same = second.weyl[static_cast<std::size_t>(mid)][static_cast<std::size_t>(first.weyl[static_cast<std::size_t>(o)][e])] ==
                 core.conj(c, w[e]);
      }
    }
    if (!same) {
      r.ok = false;
      r.failures.push_back("orbit " + std::to_string(o) + ": restriction does not compose");
    }
  }
  return r;
}

inline BaseChangeReport check_composite_restriction(const GroupoidMap& f, const GroupoidMap& g) {
  return check_composite_restriction(f, g, OrbitCategory(f.source()), OrbitCategory(f.target()), OrbitCategory(g.target()));
}

/// For the pullback square of f: Y -> X along q: X' -> X with p: Y' -> Y and
/// f': Y' -> X', compares q* f_⊗ and f'_⊗ p* orbitwise.
/// Same, with the orbit categories of f.source(), f.target() and q.source()
/// and the plans of f and q supplied by the caller.
inline BaseChangeReport check_beck_chevalley(const GroupoidMap& f, const GroupoidMap& q, const OrbitCategory& oy, const OrbitCategory& oq,
                                             const NormPlan& norm_f, const RestrictionPlan& res_q) {
  BaseChangeReport r;
  auto pb = homotopy_pullback(f, q);
  OrbitCategory op(pb.apex);
  auto norm_fp = norm_plan(pb.to_right, op, oq);
  auto res_p = restriction_plan(pb.to_left, op, oy);
  for (int m = 0; m < oq.size(); ++m) {
    ++r.checked;
    const auto& lhs = norm_f.slots[static_cast<std::size_t>(res_q.object[static_cast<std::size_t>(m)])];
    std::vector<int> rhs;
    for (int t : norm_fp.slots[static_cast<std::size_t>(m)]) rhs.push_back(res_p.object[static_cast<std::size_t>(t)]);
    if (!detail::same_multiset(lhs, rhs)) {
      r.ok = false;
      r.failures.push_back("orbit " + std::to_string(m) + ": q*f_ " + detail::multiset_string(lhs) + " vs f'_p* " +
                           detail::multiset_string(rhs));
    }
  }
  return r;
}

inline BaseChangeReport check_beck_chevalley(const GroupoidMap& f, const GroupoidMap& q) {
  OrbitCategory oy(f.source()), ox(f.target()), oq(q.source());
  return check_beck_chevalley(f, q, oy, oq, norm_plan(f, oy, ox), restriction_plan(q, oq, ox));
}

/// Composite check when g follows f, square check when g shares f's target.
inline BaseChangeReport check_base_change(const GroupoidMap& f, const GroupoidMap& g, const OrbFunctor& e) {
  BaseChangeReport r;
  auto merge = [&](const BaseChangeReport& x) {
    r.ok = r.ok && x.ok;
    r.checked += x.checked;
    r.failures.insert(r.failures.end(), x.failures.begin(), x.failures.end());
  };
  if (g.source() == f.target()) merge(check_composite_norm(f, g, e));
  if (g.target() == f.target()) merge(check_beck_chevalley(f, g));
  return r;
}

}  // namespace glospan
