#pragma once

// Burnside rings, tables of marks and the rational idempotents of A(G) ⊗ Q.

#include <memory>
#include <string>
#include <vector>

#include "glospan/algebra.hpp"
#include "glospan/group.hpp"
#include "glospan/rational.hpp"

namespace glospan {

/// m[K][H] = |(G/K)^H|: rows are orbit types G/K, columns subgroup classes H,
/// both in the canonical class order of the subgroup lattice.
struct TableOfMarks {
  GroupPtr group;
  std::vector<ElementMask> classes;
  std::vector<std::vector<long long>> m;

  int size() const { return static_cast<int>(classes.size()); }
  long long at(int k, int h) const { return m[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)]; }

  Matrix as_matrix() const {
    Matrix out(m.size(), std::vector<Rational>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j];
    return out;
  }
};

inline TableOfMarks table_of_marks(const GroupPtr& g, int order_bound = kDefaultOrderBound) {
  if (g->order() > order_bound)
    throw Error(ErrorKind::OrderBoundExceeded, g->label() + " exceeds the order bound");
  const auto& lat = g->lattice();
  TableOfMarks t;
  t.group = g;
  for (int c = 0; c < lat.class_count(); ++c) t.classes.push_back(lat.rep(c));
  const std::size_t n = t.classes.size();
  t.m.assign(n, std::vector<long long>(n, 0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t h = 0; h < n; ++h) {
      long long count = 0;
      for (Element x = 0; x < g->order(); ++x)
        if ((t.classes[h] & ~conjugate_mask(*g, t.classes[k], x)) == 0) ++count;
      t.m[k][h] = count / mask_size(t.classes[k]);
    }
  return t;
}

/// Element of A(G) ⊗ Q in the orbit basis [G/H], H over subgroup classes.
struct BurnsideElement {
  GroupPtr group;
  std::vector<Rational> coefficients;

  static BurnsideElement zero(const GroupPtr& g) {
    return {g, std::vector<Rational>(static_cast<std::size_t>(g->lattice().class_count()))};
  }
  static BurnsideElement orbit(const GroupPtr& g, int cls) {
    auto x = zero(g);
    x.coefficients[static_cast<std::size_t>(cls)] = 1;
    return x;
  }
  static BurnsideElement one(const GroupPtr& g) { return orbit(g, g->lattice().class_count() - 1); }

  friend bool operator==(const BurnsideElement& a, const BurnsideElement& b) {
    return a.group->same_table(*b.group) && a.coefficients == b.coefficients;
  }
};

inline void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a != b && !a->same_table(*b)) throw Error(ErrorKind::GroupMismatch, a->label() + " vs " + b->label());
}

inline BurnsideElement operator+(BurnsideElement a, const BurnsideElement& b) {
  require_same_group(a.group, b.group);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) a.coefficients[i] += b.coefficients[i];
  return a;
}

inline BurnsideElement operator*(const Rational& s, BurnsideElement a) {
  for (auto& c : a.coefficients) c *= s;
  return a;
}

/// Marks of x at every subgroup class.
inline std::vector<Rational> marks(const TableOfMarks& t, const BurnsideElement& x) {
  require_same_group(t.group, x.group);
  std::vector<Rational> out(static_cast<std::size_t>(t.size()));
  for (int k = 0; k < t.size(); ++k) {
    const Rational& c = x.coefficients[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    for (int h = 0; h < t.size(); ++h) out[static_cast<std::size_t>(h)] += c * t.at(k, h);
  }
  return out;
}

/// [G/H]·[G/K] = Σ over double cosets HgK of [G/(H ∩ gKg^-1)], as class multiplicities.
inline std::vector<long long> orbit_product(const GroupPtr& g, int h_cls, int k_cls) {
  const auto& lat = g->lattice();
  ElementMask h = lat.rep(h_cls), k = lat.rep(k_cls);
  std::vector<long long> out(static_cast<std::size_t>(lat.class_count()), 0);
  for (const auto& dc : double_cosets(*g, h, k)) {
    ElementMask stab = h & conjugate_mask(*g, k, dc.front());
    ++out[static_cast<std::size_t>(lat.class_of_mask(stab))];
  }
  return out;
}

inline BurnsideElement burnside_product(const BurnsideElement& x, const BurnsideElement& y) {
  require_same_group(x.group, y.group);
  auto out = BurnsideElement::zero(x.group);
  const std::size_t n = x.coefficients.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x.coefficients[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y.coefficients[j] == 0) continue;
      Rational c = x.coefficients[i] * y.coefficients[j];
      auto prod = orbit_product(x.group, static_cast<int>(i), static_cast<int>(j));
      for (std::size_t k = 0; k < n; ++k)
        if (prod[k] != 0) out.coefficients[k] += c * prod[k];
    }
  }
  return out;
}

/// e_H for every subgroup class H, read off the inverse of the marks matrix.
inline std::vector<BurnsideElement> rational_idempotents(const TableOfMarks& t) {
  auto inv = invert(t.as_matrix());
  if (!inv) throw Error(ErrorKind::GroupMismatch, "table of marks is singular");
  std::vector<BurnsideElement> out;
  for (int h = 0; h < t.size(); ++h) out.push_back({t.group, (*inv)[static_cast<std::size_t>(h)]});
  return out;
}

/// A(G) ⊗ Q as a QAlgebra in the orbit basis.
inline AlgebraPtr burnside_algebra(const GroupPtr& g) {
  const int n = g->lattice().class_count();
  auto a = std::make_shared<QAlgebra>();
  a->dim = n;
  a->products.assign(static_cast<std::size_t>(n * n), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto prod = orbit_product(g, i, j);
      SparseVec v;
      for (int k = 0; k < n; ++k)
        if (prod[static_cast<std::size_t>(k)] != 0) v.emplace_back(k, Rational(prod[static_cast<std::size_t>(k)]));
      a->products[static_cast<std::size_t>(i * n + j)] = std::move(v);
    }
  a->unit = basis_vector(n - 1);
  a->label = "A(" + g->label() + ")";
  return a;
}

}  // namespace glospan
