#pragma once

// Contravariant functors on surjections into rational vector spaces: a
// vector space per skeleton group and a matrix per surjection class,
// isomorphisms included.

#include <map>
#include <string>
#include <vector>

#include "glospan/rational.hpp"
#include "glospan/span_diagram.hpp"

namespace glospan {

struct LinearGlobalFunctor {
  std::vector<GroupPtr> skeleton;
  std::vector<int> dims;
  /// keyed by the identifier of the span K <- G = G in Hom(K, G); the matrix
  /// maps F(K) to F(G) (rows indexed by the basis of F(G))
  std::map<std::string, Matrix> maps;
};

/// Conjugacy class of each element, classes numbered by their minimal element.
inline std::vector<int> conjugacy_classes(const FiniteGroup& g) {
  std::vector<int> cls(static_cast<std::size_t>(g.order()), -1);
  int next = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    for (Element y = 0; y < g.order(); ++y) cls[static_cast<std::size_t>(g.conj(y, x))] = next;
    ++next;
  }
  return cls;
}

inline bool is_identity_matrix(const Matrix& m, int n) {
  if (static_cast<int>(m.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[static_cast<std::size_t>(i)].size()) != n) return false;
    for (int j = 0; j < n; ++j)
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != (i == j ? 1 : 0)) return false;
  }
  return true;
}

inline FunctorReport check_linear_functor(const LinearGlobalFunctor& f, const SkeletonSpans& spans) {
  FunctorReport r;
  const int n = spans.size();
  if (static_cast<int>(f.dims.size()) != n) {
    r.violations.push_back("expected " + std::to_string(n) + " dimensions, found " + std::to_string(f.dims.size()));
    detail::sort_report(r);
    return r;
  }
  auto dim = [&](int i) { return f.dims[static_cast<std::size_t>(i)]; };
  for (const auto& [key, m] : f.maps) {
    auto parsed = spans.parse_id(key);
    if (!parsed || !spans.is_inflation(std::get<0>(*parsed), std::get<1>(*parsed), std::get<2>(*parsed))) {
      r.violations.push_back("map " + key + ": not a surjection class");
      continue;
    }
    auto [x, y, k] = *parsed;
    (void)k;
    bool shape = static_cast<int>(m.size()) == dim(y);
    for (const auto& row : m) shape = shape && static_cast<int>(row.size()) == dim(x);
    if (!shape) r.violations.push_back("map " + key + ": matrix has the wrong shape");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int k = 0; k < spans.hom(x, y).size(); ++k)
        if (spans.is_inflation(x, y, k) && !f.maps.count(spans.id(x, y, k))) r.violations.push_back("missing map " + spans.id(x, y, k));
  if (!r.violations.empty()) {
    detail::sort_report(r);
    return r;
  }
  for (int x = 0; x < n; ++x) {
    ++r.checked;
    const int id = spans.identity(x);
    if (!is_identity_matrix(f.maps.at(spans.id(x, x, id)), dim(x)))
      r.violations.push_back("identity " + spans.id(x, x, id) + " is not sent to the identity");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int k1 = 0; k1 < spans.hom(x, y).size(); ++k1) {
          if (!spans.is_inflation(x, y, k1)) continue;
          for (int k2 = 0; k2 < spans.hom(y, z).size(); ++k2) {
            if (!spans.is_inflation(y, z, k2)) continue;
            ++r.checked;
            const int k = spans.compose_classes(x, y, z, k1, k2);
            if (multiply(f.maps.at(spans.id(y, z, k2)), f.maps.at(spans.id(x, y, k1))) != f.maps.at(spans.id(x, z, k)))
              r.violations.push_back("composite of " + spans.id(x, y, k1) + " then " + spans.id(y, z, k2) + " differs from " +
                                     spans.id(x, z, k));
          }
        }
  detail::sort_report(r);
  return r;
}

inline FunctorReport check_linear_functor(const LinearGlobalFunctor& f) {
  SkeletonSpans spans(f.skeleton, LegClass::faithful());
  return check_linear_functor(f, spans);
}

/// Value a vector space of the given dimension, every map the identity.
inline LinearGlobalFunctor constant_linear_functor(const SkeletonSpans& spans, int dim) {
  LinearGlobalFunctor f;
  f.skeleton = spans.skeleton();
  f.dims.assign(static_cast<std::size_t>(spans.size()), dim);
  Matrix id(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
  for (int i = 0; i < dim; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  for (int x = 0; x < spans.size(); ++x)
    for (int y = 0; y < spans.size(); ++y)
      for (int k = 0; k < spans.hom(x, y).size(); ++k)
        if (spans.is_inflation(x, y, k)) f.maps.emplace(spans.id(x, y, k), id);
  return f;
}

/// Rational class functions, pulled back along surjections.
inline LinearGlobalFunctor class_function_functor(const SkeletonSpans& spans) {
  LinearGlobalFunctor f;
  f.skeleton = spans.skeleton();
  std::vector<std::vector<int>> classes;
  for (const auto& g : spans.skeleton()) {
    classes.push_back(conjugacy_classes(*g));
    f.dims.push_back(*std::max_element(classes.back().begin(), classes.back().end()) + 1);
  }
  for (int x = 0; x < spans.size(); ++x)
    for (int y = 0; y < spans.size(); ++y)
      for (int k = 0; k < spans.hom(x, y).size(); ++k) {
        if (!spans.is_inflation(x, y, k)) continue;
        const Span& s = spans.hom(x, y).at(k);
        const GroupHom& back = s.back.hom(0);
        auto pos = detail::inverse_on_image(s.fwd.hom(0));
        const auto& cy = classes[static_cast<std::size_t>(y)];
        const auto& cx = classes[static_cast<std::size_t>(x)];
        Matrix m(static_cast<std::size_t>(f.dims[static_cast<std::size_t>(y)]),
                 std::vector<Rational>(static_cast<std::size_t>(f.dims[static_cast<std::size_t>(x)])));
        for (Element g = 0; g < spans.group(y)->order(); ++g)
          m[static_cast<std::size_t>(cy[static_cast<std::size_t>(g)])]
           [static_cast<std::size_t>(cx[static_cast<std::size_t>(back(pos[static_cast<std::size_t>(g)]))])] = 1;
        f.maps.emplace(spans.id(x, y, k), std::move(m));
      }
  return f;
}

}  // namespace glospan
