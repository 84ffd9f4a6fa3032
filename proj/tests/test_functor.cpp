#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>

#include "glospan/glospan.hpp"
#include "oracle.hpp"

using namespace glospan;

namespace {

GroupHom involution_inclusion(const GroupPtr& g) {
  auto c2 = make_group("C2");
  for (Element x = 0; x < g->order(); ++x)
    if (g->element_order(x) == 2) return {c2, g, {g->identity(), x}};
  throw std::logic_error("no involution");
}

std::vector<GroupoidMap> connected_maps(int max_order, bool faithful_only) {
  std::vector<GroupoidMap> out;
  auto groups = preset_library(max_order);
  for (const auto& s : groups)
    for (const auto& t : groups)
      for (const auto& h : homs_up_to_conjugacy(s, t))
        if (!faithful_only || h.is_injective()) out.push_back(GroupoidMap::from_hom(h));
  return out;
}

// one orbit category per group
class OrbitCache {
 public:
  const OrbitCategory& at(const FiniteGroupoid& x) {
    const FiniteGroup* key = x.component(0).get();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, std::make_unique<OrbitCategory>(x)).first;
    return *it->second;
  }

 private:
  std::map<const FiniteGroup*, std::unique_ptr<OrbitCategory>> cache_;
};

// x -> c x on Q[x]/(x^2)
AlgebraMap scaling(const AlgebraPtr& a, Rational c) {
  Matrix m{{1, 0}, {0, c}};
  return from_matrix(a, a, m);
}

std::vector<int> slot_order(int n) {
  std::vector<int> s;
  for (int i = 0; i < n; ++i) {
    s.push_back(i);
    s.push_back(n + i);
  }
  return s;
}

// How often a generating key is used when each side of a relation is evaluated.
struct Usage {
  const SkeletonSpans& spans;
  int count(int x, int y, int k, const std::string& key) const {
    const auto& f = spans.factor(x, y, k);
    return (spans.id(x, f.middle, f.inflation) == key) + (spans.id(f.middle, y, f.norm) == key);
  }
  // true when some relation uses the key a different number of times on its two sides
  bool unbalanced(const std::string& key) const {
    const int n = spans.size();
    for (int x = 0; x < n; ++x)
      if (count(x, x, spans.identity(x), key) != 0) return true;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int k1 = 0; k1 < spans.hom(x, y).size(); ++k1)
            for (int k2 = 0; k2 < spans.hom(y, z).size(); ++k2) {
              const int k = spans.compose_classes(x, y, z, k1, k2);
              if (count(x, y, k1, key) + count(y, z, k2, key) != count(x, z, k, key)) return true;
            }
    return false;
  }
};

std::vector<GroupPtr> skeleton_of(std::initializer_list<const char*> names) {
  std::vector<GroupPtr> out;
  for (const char* n : names) out.push_back(make_group(n));
  return out;
}

}  // namespace

TEST(Algebras, Defects) {
  EXPECT_FALSE(ground_field()->defect().has_value());
  EXPECT_FALSE(split_algebra(3)->defect().has_value());
  EXPECT_FALSE(truncated_polynomial(2, 2)->defect().has_value());
  EXPECT_EQ(truncated_polynomial(2, 2)->dim, 6);
  EXPECT_EQ(truncated_line(2)->dim, 2);
  EXPECT_EQ(tensor({truncated_line(2), truncated_line(3)})->dim, 6);
  EXPECT_FALSE(tensor({truncated_line(2), split_algebra(2)})->defect().has_value());

  auto broken = std::make_shared<QAlgebra>(*truncated_line(2));
  broken->products[1 * 2 + 0] = {{0, Rational(1)}};  // x * 1 = 1
  EXPECT_TRUE(broken->defect().has_value());
  auto a = truncated_line(2);
  EXPECT_FALSE(scaling(a, 3).defect().has_value());
  EXPECT_TRUE(from_matrix(a, a, Matrix{{1, 1}, {0, 1}}).defect().has_value());
  EXPECT_TRUE(from_matrix(a, a, Matrix{{2, 0}, {0, 1}}).defect().has_value());
}

TEST(OrbFunctors, RestrictionAndNormExamples) {
  auto s3 = make_group("S3");
  auto f = GroupoidMap::from_hom(involution_inclusion(s3));
  auto a = truncated_line(2);
  auto e = constant_functor(f.source(), a);
  auto n = norm_along(f, e);
  std::vector<int> dims;
  for (int m = 0; m < n.size(); ++m) dims.push_back(n.value(m)->dim);
  EXPECT_EQ(dims, (std::vector<int>{8, 4, 2, 2}));
  EXPECT_FALSE(check_actions(n).has_value());

  auto r = restrict_along(f, constant_functor(f.target(), a));
  ASSERT_EQ(r.size(), 2);
  EXPECT_EQ(r.value(0)->dim, 2);
  EXPECT_FALSE(check_actions(r).has_value());

  auto collapse = GroupoidMap::from_hom(GroupHom{s3, make_group("C1"), std::vector<Element>(6, 0)});
  EXPECT_THROW(norm_along(collapse, constant_functor(collapse.source(), a)), Error);
  EXPECT_THROW(restrict_along(f, e), Error);
}

TEST(OrbFunctors, BurnsideFunctorActions) {
  for (const auto& g : preset_library(12)) {
    auto e = burnside_functor(g);
    EXPECT_FALSE(check_actions(e).has_value()) << g->label();
  }
}

TEST(OrbFunctors, NormComponentsMatchDoubleCosets) {
  auto a = truncated_line(2);
  for (const auto& f : connected_maps(8, true)) {
    const GroupPtr& x = f.target().component(0);
    OrbitCategory oy(f.source()), ox(f.target());
    auto plan = norm_plan(f, oy, ox);
    auto n = norm_along(f, constant_functor(f.source(), a));
    for (int m = 0; m < ox.size(); ++m) {
      const int comps = static_cast<int>(oracle::double_cosets(*x, mask_elements(f.hom(0).image()),
                                                               mask_elements(ox.object(m).subgroup)).size());
      EXPECT_EQ(static_cast<int>(plan.slots[static_cast<std::size_t>(m)].size()), comps);
      int dim = 1;
      for (int i = 0; i < comps; ++i) dim *= a->dim;
      EXPECT_EQ(n.value(m)->dim, dim);
    }
  }
}

TEST(OrbFunctors, NormActionsAreValid) {
  for (const auto& f : connected_maps(6, true)) {
    auto e = burnside_functor(f.source().component(0));
    EXPECT_FALSE(check_actions(norm_along(f, e)).has_value());
  }
}

TEST(OrbFunctors, CompositeNormsAgree) {
  auto faithful = connected_maps(8, true);
  OrbitCache oc;
  for (const auto& f : faithful)
    for (const auto& g : faithful) {
      if (!(f.target() == g.source())) continue;
      auto r = check_composite_norm(f, g, oc.at(f.source()), oc.at(f.target()), oc.at(g.target()));
      EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(OrbFunctors, CompositeNormAlgebrasAgree) {
  auto a = truncated_line(2);
  auto faithful = connected_maps(6, true);
  for (const auto& f : faithful)
    for (const auto& g : faithful) {
      if (!(f.target() == g.source())) continue;
      auto r = check_composite_norm(f, g, constant_functor(f.source(), a));
      EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(OrbFunctors, CompositeRestrictionsAgree) {
  auto all = connected_maps(8, false);
  OrbitCache oc;
  for (const auto& f : all)
    for (const auto& g : all) {
      if (!(f.target() == g.source())) continue;
      auto r = check_composite_restriction(f, g, oc.at(f.source()), oc.at(f.target()), oc.at(g.target()));
      EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(OrbFunctors, BeckChevalleyOnSmallSquares) {
  auto faithful = connected_maps(6, true);
  auto all = connected_maps(6, false);
  for (const auto& f : faithful)
    for (const auto& q : all) {
      if (!(f.target() == q.target())) continue;
      auto r = check_beck_chevalley(f, q);
      EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
      EXPECT_GT(r.checked, 0);
    }
}

TEST(OrbFunctors, NormIsMonoidal) {
  auto a = truncated_line(2);
  for (const auto& f : connected_maps(6, true)) {
    auto e1 = burnside_functor(f.source().component(0));
    auto e2 = constant_functor(f.source(), a);
    auto lhs = norm_along(f, tensor_functors(e1, e2));
    auto rhs = tensor_functors(norm_along(f, e1), norm_along(f, e2));
    OrbitCategory oy(f.source()), ox(f.target());
    auto plan = norm_plan(f, oy, ox);
    for (int m = 0; m < lhs.size(); ++m) {
      const auto& slots = plan.slots[static_cast<std::size_t>(m)];
      std::vector<AlgebraMap> ids;
      for (int o : slots) {
        ids.push_back(AlgebraMap::identity(e1.value(o)));
        ids.push_back(AlgebraMap::identity(e2.value(o)));
      }
      auto shuffle = tensor_maps(lhs.value(m), rhs.value(m), ids, slot_order(static_cast<int>(slots.size())));
      ASSERT_FALSE(shuffle.defect().has_value()) << f.source().label << " -> " << f.target().label;
      for (std::size_t w = 0; w < lhs.actions[static_cast<std::size_t>(m)].size(); ++w)
        EXPECT_EQ(compose(shuffle, lhs.action(m, static_cast<int>(w))), compose(rhs.action(m, static_cast<int>(w)), shuffle));
    }
  }
}

TEST(SpanDiagrams, FreeFunctorExamples) {
  auto skeleton = skeleton_of({"C1", "C2"});
  auto d = free_functor(make_group("C1"), skeleton);
  EXPECT_EQ(d.values[0]->dim, 3);
  EXPECT_EQ(d.values[1]->dim, 6);
  auto e = free_functor(make_group("C2"), skeleton);
  EXPECT_EQ(e.values[0]->dim, 1);
  EXPECT_THROW(free_functor(make_group("C3"), skeleton), Error);
  EXPECT_TRUE(check_functor(d).ok);
  EXPECT_TRUE(check_functor(e).ok);
}

TEST(SpanDiagrams, ConstantAndFreeDiagramsPass) {
  SkeletonSpans spans(skeleton_of({"C1", "C2", "C3", "C4", "S3"}));
  auto c = check_functor(constant_diagram(spans, truncated_line(2)), spans);
  EXPECT_TRUE(c.ok) << (c.violations.empty() ? "" : c.violations.front());
  EXPECT_GT(c.checked, 0);
  for (const auto& g : spans.skeleton()) {
    auto r = check_functor(free_functor(g, spans), spans);
    EXPECT_TRUE(r.ok) << g->label() << ": " << (r.violations.empty() ? "" : r.violations.front());
  }
}

TEST(SpanDiagrams, StructuralViolations) {
  SkeletonSpans spans(skeleton_of({"C1", "C2"}));
  auto a = truncated_line(2);
  auto d = constant_diagram(spans, a);
  auto missing = d;
  missing.inflations.erase(missing.inflations.begin());
  EXPECT_FALSE(check_functor(missing, spans).ok);

  auto unknown = d;
  unknown.norms.emplace("C1->C7#0", AlgebraMap::identity(a));
  EXPECT_FALSE(check_functor(unknown, spans).ok);

  auto nonunital = d;
  nonunital.norms.begin()->second = from_matrix(a, a, Matrix{{0, 0}, {0, 1}});
  EXPECT_FALSE(check_functor(nonunital, spans).ok);

  auto wrong_values = d;
  wrong_values.values.pop_back();
  EXPECT_FALSE(check_functor(wrong_values, spans).ok);
}

TEST(SpanDiagrams, MutationsAreDetected) {
  SkeletonSpans spans(skeleton_of({"C1", "C2", "C3", "S3"}));
  auto a = truncated_line(2);
  auto base = constant_diagram(spans, a);
  Usage usage{spans};
  std::mt19937 rng(5);
  const std::vector<Rational> scales{2, 3, Rational(1, 2), -2};
  std::vector<std::string> keys;
  for (const auto& [k, m] : base.inflations) keys.push_back(k);
  for (const auto& [k, m] : base.norms)
    if (!base.inflations.count(k)) keys.push_back(k);
  int detectable = 0;
  for (const auto& key : keys) {
    if (!usage.unbalanced(key)) continue;
    ++detectable;
    auto d = base;
    auto sigma = scaling(a, scales[rng() % scales.size()]);
    if (d.inflations.count(key)) d.inflations.at(key) = sigma;
    if (d.norms.count(key)) d.norms.at(key) = sigma;
    EXPECT_FALSE(check_functor(d, spans).ok) << key;
  }
  EXPECT_GT(detectable, 0);
}

TEST(LinearFunctors, Examples) {
  SkeletonSpans spans(skeleton_of({"C1", "C2", "C3", "S3"}));
  EXPECT_TRUE(check_linear_functor(constant_linear_functor(spans, 2), spans).ok);
  auto cf = class_function_functor(spans);
  EXPECT_EQ(cf.dims, (std::vector<int>{1, 2, 3, 3}));
  auto r = check_linear_functor(cf, spans);
  EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations.front());

  // the non-trivial outer automorphism of C3 sent to a scalar of infinite order
  auto broken = constant_linear_functor(spans, 1);
  const int c3 = *spans.find("C3");
  bool changed = false;
  for (int k = 0; k < spans.hom(c3, c3).size(); ++k)
    if (k != spans.identity(c3)) {
      broken.maps.at(spans.id(c3, c3, k)) = Matrix{{2}};
      changed = true;
    }
  ASSERT_TRUE(changed);
  EXPECT_FALSE(check_linear_functor(broken, spans).ok);
}

TEST(IndexedDiagrams, ConstantPassesAndMutationFails) {
  auto c4 = make_group("C4");
  auto systems = indexing_systems(c4);
  auto a = truncated_line(2);
  for (const auto& ix : systems) {
    auto r = check_indexed_functor(c4, ix, constant_indexed_diagram(ix, a));
    EXPECT_TRUE(r.ok);
  }
  // the maximal system admits 1 -> C2 -> C4
  const auto& maximal = *std::max_element(systems.begin(), systems.end(), [](const IndexingSystem& x, const IndexingSystem& y) {
    return std::count(x.members().begin(), x.members().end(), 1) < std::count(y.members().begin(), y.members().end(), 1);
  });
  auto d = constant_indexed_diagram(maximal, a);
  const auto& oc = maximal.orbit_category();
  auto key = std::make_tuple(0, 1, oc.coset_rep(1, c4->identity()));
  ASSERT_TRUE(d.maps.count(key));
  d.maps.at(key) = scaling(a, 3);
  EXPECT_FALSE(check_indexed_functor(c4, maximal, d).ok);
  EXPECT_THROW(check_indexed_functor(make_group("C2"), maximal, d), Error);
}
