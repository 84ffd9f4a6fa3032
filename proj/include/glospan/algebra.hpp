#pragma once

// Finite-dimensional commutative Q-algebras by structure constants, and
// unital algebra maps between them.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glospan/rational.hpp"

namespace glospan {

struct QAlgebra {
  int dim = 0;
  /// products[i * dim + j] = e_i e_j.
  std::vector<SparseVec> products;
  SparseVec unit;
  /// Optional integer degree per basis vector; no Koszul signs.
  std::optional<std::vector<int>> grading;
  std::string label;

  const SparseVec& product(int i, int j) const { return products[static_cast<std::size_t>(i * dim + j)]; }

  SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) axpy(out, a * b, product(i, j));
    return out;
  }

  /// First violated axiom, or nullopt when this is a commutative unital associative algebra.
  std::optional<std::string> defect() const {
    if (static_cast<int>(products.size()) != dim * dim) return "structure constant table has the wrong size";
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (const auto& [k, v] : product(i, j))
          if (k < 0 || k >= dim) return "structure constant index out of range";
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (product(i, j) != product(j, i))
          return "not commutative at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    for (int i = 0; i < dim; ++i)
      if (multiply(unit, basis_vector(i)) != basis_vector(i)) return "unit fails at e" + std::to_string(i);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          if (multiply(product(i, j), basis_vector(k)) != multiply(basis_vector(i), product(j, k)))
            return "not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
    if (grading) {
      if (static_cast<int>(grading->size()) != dim) return "grading has the wrong size";
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (const auto& [k, v] : product(i, j))
            if ((*grading)[static_cast<std::size_t>(k)] != (*grading)[static_cast<std::size_t>(i)] + (*grading)[static_cast<std::size_t>(j)])
              return "product does not respect the grading";
    }
    return std::nullopt;
  }

  friend bool operator==(const QAlgebra& a, const QAlgebra& b) {
    return a.dim == b.dim && a.products == b.products && a.unit == b.unit && a.grading == b.grading;
  }
};

using AlgebraPtr = std::shared_ptr<const QAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || *a == *b; }

inline AlgebraPtr ground_field() {
  auto a = std::make_shared<QAlgebra>();
  a->dim = 1;
  a->products = {basis_vector(0)};
  a->unit = basis_vector(0);
  a->label = "Q";
  return a;
}

/// Q^n with orthogonal idempotent basis.
inline AlgebraPtr split_algebra(int n) {
  auto a = std::make_shared<QAlgebra>();
  a->dim = n;
  a->products.assign(static_cast<std::size_t>(n * n), {});
  for (int i = 0; i < n; ++i) {
    a->products[static_cast<std::size_t>(i * n + i)] = basis_vector(i);
    a->unit.emplace_back(i, Rational(1));
  }
  a->label = "Q^" + std::to_string(n);
  return a;
}

/// Monomials of total degree <= degree in `variables` variables, graded-lex ordered.
inline std::vector<std::vector<int>> monomials(int variables, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(variables), 0);
  for (int d = 0; d <= degree; ++d) {
    std::vector<std::vector<int>> level;
    auto rec = [&](auto&& self, int v, int left) -> void {
      if (v == variables) {
        if (left == 0) level.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[static_cast<std::size_t>(v)] = k;
        self(self, v + 1, left - k);
      }
      e[static_cast<std::size_t>(v)] = 0;
    };
    rec(rec, 0, d);
    out.insert(out.end(), level.begin(), level.end());
    if (variables == 0) break;
  }
  return out;
}

/// Q[x_1..x_n] modulo monomials of degree > degree, graded by degree.
inline AlgebraPtr truncated_polynomial(int variables, int degree) {
  auto mons = monomials(variables, degree);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index.emplace(mons[i], static_cast<int>(i));
  auto a = std::make_shared<QAlgebra>();
  a->dim = static_cast<int>(mons.size());
  a->products.assign(static_cast<std::size_t>(a->dim * a->dim), {});
  std::vector<int> grading;
  for (int i = 0; i < a->dim; ++i) {
    int deg = 0;
    for (int x : mons[static_cast<std::size_t>(i)]) deg += x;
    grading.push_back(deg);
    for (int j = 0; j < a->dim; ++j) {
      std::vector<int> s(static_cast<std::size_t>(variables));
      for (int v = 0; v < variables; ++v)
        s[static_cast<std::size_t>(v)] = mons[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] + mons[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
      auto it = index.find(s);
      if (it != index.end()) a->products[static_cast<std::size_t>(i * a->dim + j)] = basis_vector(it->second);
    }
  }
  a->unit = basis_vector(0);
  a->grading = std::move(grading);
  a->label = "Q[" + std::to_string(variables) + "]/deg>" + std::to_string(degree);
  return a;
}

/// Q[x]/(x^n).
inline AlgebraPtr truncated_line(int n) { return truncated_polynomial(1, n - 1); }

/// Ordered tensor product; basis is the product basis with factor 0 most significant.
inline AlgebraPtr tensor(const std::vector<AlgebraPtr>& factors) {
  auto a = std::make_shared<QAlgebra>(*ground_field());
  a->label.clear();
  for (const auto& f : factors) {
    auto next = std::make_shared<QAlgebra>();
    next->dim = a->dim * f->dim;
    next->products.assign(static_cast<std::size_t>(next->dim) * static_cast<std::size_t>(next->dim), {});
    for (int i = 0; i < next->dim; ++i)
      for (int j = 0; j < next->dim; ++j)
        next->products[static_cast<std::size_t>(i) * static_cast<std::size_t>(next->dim) + static_cast<std::size_t>(j)] =
            kron({a->product(i / f->dim, j / f->dim), f->product(i % f->dim, j % f->dim)}, {a->dim, f->dim});
    next->unit = kron({a->unit, f->unit}, {a->dim, f->dim});
    if ((a->grading || a->dim == 1) && f->grading) {
      std::vector<int> g(static_cast<std::size_t>(next->dim));
      for (int i = 0; i < next->dim; ++i)
        g[static_cast<std::size_t>(i)] = (a->grading ? (*a->grading)[static_cast<std::size_t>(i / f->dim)] : 0) +
                                         (*f->grading)[static_cast<std::size_t>(i % f->dim)];
      next->grading = std::move(g);
    }
    next->label = a->label.empty() ? f->label : a->label + "(x)" + f->label;
    a = std::move(next);
  }
  if (factors.empty()) a->label = "Q";
  return a;
}

// ---------------------------------------------------------------------------

struct AlgebraMap {
  AlgebraPtr source;
  AlgebraPtr target;
  /// columns[j] = image of e_j.
  std::vector<SparseVec> columns;

  SparseVec apply(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [i, a] : x) axpy(out, a, columns[static_cast<std::size_t>(i)]);
    return out;
  }

  static AlgebraMap identity(const AlgebraPtr& a) {
    AlgebraMap m{a, a, {}};
    for (int i = 0; i < a->dim; ++i) m.columns.push_back(basis_vector(i));
    return m;
  }

  /// First reason this is not a unital ring homomorphism, or nullopt.
  std::optional<std::string> defect() const {
    if (static_cast<int>(columns.size()) != source->dim) return "matrix has the wrong number of columns";
    for (const auto& c : columns)
      for (const auto& [k, v] : c)
        if (k < 0 || k >= target->dim) return "matrix has the wrong number of rows";
    if (apply(source->unit) != target->unit) return "not unital";
    for (int i = 0; i < source->dim; ++i)
      for (int j = i; j < source->dim; ++j)
        if (apply(source->product(i, j)) != target->multiply(columns[static_cast<std::size_t>(i)], columns[static_cast<std::size_t>(j)]))
          return "not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return std::nullopt;
  }

  friend bool operator==(const AlgebraMap& a, const AlgebraMap& b) {
    return same_algebra(a.source, b.source) && same_algebra(a.target, b.target) && a.columns == b.columns;
  }
};

/// outer ∘ inner.
inline AlgebraMap compose(const AlgebraMap& outer, const AlgebraMap& inner) {
  AlgebraMap m{inner.source, outer.target, {}};
  for (const auto& c : inner.columns) m.columns.push_back(outer.apply(c));
  return m;
}

/// Dense matrix with rows indexed by the target basis.
inline Matrix to_matrix(const AlgebraMap& f) {
  Matrix m(static_cast<std::size_t>(f.target->dim), std::vector<Rational>(static_cast<std::size_t>(f.source->dim)));
  for (std::size_t j = 0; j < f.columns.size(); ++j)
    for (const auto& [i, v] : f.columns[j]) m[static_cast<std::size_t>(i)][j] = v;
  return m;
}

inline AlgebraMap from_matrix(AlgebraPtr source, AlgebraPtr target, const Matrix& m) {
  AlgebraMap f{std::move(source), std::move(target), {}};
  for (int j = 0; j < f.source->dim; ++j) {
    SparseVec c;
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      if (j < static_cast<int>(m[static_cast<std::size_t>(i)].size()) && m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
        c.emplace_back(i, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    f.columns.push_back(std::move(c));
  }
  return f;
}

/// Tensor product of maps f_j : A_j -> B_{slot_of[j]}; the output factor at
/// slot s is the target of the map placed there.
inline AlgebraMap tensor_maps(const AlgebraPtr& source, const AlgebraPtr& target, const std::vector<AlgebraMap>& maps,
                              const std::vector<int>& slot_of) {
  const std::size_t m = maps.size();
  std::vector<int> in_dims(m), out_dims(m);
  for (std::size_t j = 0; j < m; ++j) {
    in_dims[j] = maps[j].source->dim;
    out_dims[static_cast<std::size_t>(slot_of[j])] = maps[j].target->dim;
  }
  AlgebraMap f{source, target, {}};
  f.columns.reserve(static_cast<std::size_t>(source->dim));
  std::vector<int> idx(m, 0);
  std::vector<SparseVec> parts(m);
  for (int col = 0; col < source->dim; ++col) {
    int rest = col;
    for (std::size_t j = m; j-- > 0;) {
      idx[j] = rest % in_dims[j];
      rest /= in_dims[j];
    }
    for (std::size_t j = 0; j < m; ++j)
      parts[static_cast<std::size_t>(slot_of[j])] = maps[j].columns[static_cast<std::size_t>(idx[j])];
    f.columns.push_back(kron(parts, out_dims));
  }
  return f;
}

/// Algebra map between truncated polynomial algebras sending x_i to x_{send[i]}.
inline AlgebraMap variable_substitution(const AlgebraPtr& source, int source_vars, const AlgebraPtr& target,
                                        int target_vars, int degree, const std::vector<int>& send) {
  auto src = monomials(source_vars, degree);
  auto dst = monomials(target_vars, degree);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], static_cast<int>(i));
  AlgebraMap f{source, target, {}};
  for (const auto& mono : src) {
    std::vector<int> e(static_cast<std::size_t>(target_vars), 0);
    for (int v = 0; v < source_vars; ++v) e[static_cast<std::size_t>(send[static_cast<std::size_t>(v)])] += mono[static_cast<std::size_t>(v)];
    f.columns.push_back(basis_vector(index.at(e)));
  }
  return f;
}

}  // namespace glospan
