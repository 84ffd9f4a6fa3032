#pragma once

// Named groups: C<n>, S<n> (n <= 4), D<2n>, and x-separated products.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glospan/group.hpp"

namespace glospan {

namespace detail {

inline std::vector<Element> cyclic_table(int n) {
  std::vector<Element> t(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
  return t;
}

// Permutations of {0..n-1} in lexicographic order; (x*y)(i) = x(y(i)).
inline std::vector<Element> symmetric_table(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  std::vector<Element> t(static_cast<std::size_t>(m * m));
  std::vector<int> prod(static_cast<std::size_t>(n));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i)
        prod[static_cast<std::size_t>(i)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      t[static_cast<std::size_t>(a * m + b)] =
          static_cast<Element>(std::find(perms.begin(), perms.end(), prod) - perms.begin());
    }
  return t;
}

// r^i -> i, s r^i -> n + i, with s r = r^-1 s.
inline std::vector<Element> dihedral_table(int n) {
  const int m = 2 * n;
  std::vector<Element> t(static_cast<std::size_t>(m * m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int a = x % n, b = y % n;
      bool sx = x >= n, sy = y >= n;
      int r;
      bool s;
      if (!sx && !sy) r = (a + b) % n, s = false;
      else if (!sx && sy) r = ((b - a) % n + n) % n, s = true;
      else if (sx && !sy) r = (a + b) % n, s = true;
      else r = ((b - a) % n + n) % n, s = false;
      t[static_cast<std::size_t>(x * m + y)] = s ? n + r : r;
    }
  return t;
}

inline std::vector<Element> product_table(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Element> t(static_cast<std::size_t>(n * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(x * n + y)] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return t;
}

inline int parse_positive(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 4 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorKind::ParseError, "bad group preset '" + std::string(whole) + "'");
  int v = std::stoi(std::string(digits));
  if (v <= 0) throw Error(ErrorKind::ParseError, "bad group preset '" + std::string(whole) + "'");
  return v;
}

inline GroupPtr make_factor(std::string_view f, int order_bound) {
  if (f.empty()) throw Error(ErrorKind::ParseError, "empty group preset");
  const char kind = f.front();
  const int n = parse_positive(f.substr(1), f);
  auto check = [&](long long order) {
    if (order > order_bound)
      throw Error(ErrorKind::OrderBoundExceeded, std::string(f) + " has order " + std::to_string(order) +
                                                     " beyond bound " + std::to_string(order_bound));
  };
  switch (kind) {
    case 'C':
      check(n);
      return FiniteGroup::from_trusted(n, cyclic_table(n), std::string(f));
    case 'S': {
      if (n > 4) throw Error(ErrorKind::ParseError, "symmetric presets are limited to S1..S4");
      long long order = 1;
      for (int i = 2; i <= n; ++i) order *= i;
      check(order);
      return FiniteGroup::from_trusted(static_cast<int>(order), symmetric_table(n), std::string(f));
    }
    case 'D': {
      if (n % 2 != 0) throw Error(ErrorKind::ParseError, "dihedral presets are named by even order D<2n>");
      check(n);
      return FiniteGroup::from_trusted(n, dihedral_table(n / 2), std::string(f));
    }
    default:
      throw Error(ErrorKind::ParseError, "unknown group preset '" + std::string(f) + "'");
  }
}

}  // namespace detail

/// Parses a preset such as "C4", "S3", "D8" or "C2xC2".
inline GroupPtr make_group(std::string_view spec, int order_bound = kDefaultOrderBound) {
  std::vector<std::string_view> factors;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = spec.find('x', start);
    factors.push_back(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  GroupPtr g = detail::make_factor(factors.front(), order_bound);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    GroupPtr h = detail::make_factor(factors[i], order_bound);
    long long order = static_cast<long long>(g->order()) * h->order();
    if (order > order_bound)
      throw Error(ErrorKind::OrderBoundExceeded,
                  std::string(spec) + " has order " + std::to_string(order) + " beyond bound " + std::to_string(order_bound));
    g = FiniteGroup::from_trusted(static_cast<int>(order), detail::product_table(*g, *h), "");
  }
  if (factors.size() > 1) g = FiniteGroup::from_trusted(g->order(), [&] {
      std::vector<Element> flat;
      for (const auto& row : g->rows()) flat.insert(flat.end(), row.begin(), row.end());
      return flat;
    }(), std::string(spec));
  return g;
}

/// Preset names of pairwise non-isomorphic groups up to the given order.
/// Complete for every isomorphism type expressible with the preset grammar up
/// to order 16; above that only cyclic, dihedral and S4 are listed.
inline std::vector<std::string> preset_library_names(int max_order) {
  std::vector<std::pair<int, std::string>> entries;
  for (int n = 1; n <= max_order; ++n) entries.emplace_back(n, "C" + std::to_string(n));
  if (max_order >= 6) entries.emplace_back(6, "S3");
  for (int m = 8; m <= max_order; m += 2) entries.emplace_back(m, "D" + std::to_string(m));
  if (max_order >= 24) entries.emplace_back(24, "S4");
  const std::pair<int, const char*> products[] = {
      {4, "C2xC2"},   {8, "C2xC4"},   {8, "C2xC2xC2"},       {9, "C3xC3"},      {12, "C2xC6"},
      {16, "C2xC8"},  {16, "C4xC4"},  {16, "C2xC2xC4"},      {16, "C2xC2xC2xC2"}, {16, "C2xD8"},
  };
  for (auto [order, name] : products)
    if (order <= max_order) entries.emplace_back(order, name);
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (auto& e : entries) out.push_back(std::move(e.second));
  return out;
}

inline std::vector<GroupPtr> preset_library(int max_order) {
  std::vector<GroupPtr> out;
  for (const auto& name : preset_library_names(max_order)) out.push_back(make_group(name, std::max(max_order, 1)));
  return out;
}

/// Name of an isomorphic library preset, if any.
inline std::optional<std::string> identify_preset(const GroupPtr& g) {
  if (g->order() > 24) return std::nullopt;
  for (const auto& name : preset_library_names(g->order())) {
    GroupPtr p = make_group(name, g->order());
    if (p->order() == g->order() && find_isomorphism(g, p)) return name;
  }
  return std::nullopt;
}

}  // namespace glospan
