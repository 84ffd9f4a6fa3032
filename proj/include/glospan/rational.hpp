#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glospan/error.hpp"

namespace glospan {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// Accepts "n" or "p/q" with optional sign.
inline Rational parse_rational(std::string_view s) {
  auto parse_int = [&](std::string_view t) {
    if (t.empty()) throw Error(ErrorKind::ParseError, "bad rational '" + std::string(s) + "'");
    std::size_t start = (t.front() == '-' || t.front() == '+') ? 1 : 0;
    if (start == t.size()) throw Error(ErrorKind::ParseError, "bad rational '" + std::string(s) + "'");
    for (std::size_t i = start; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw Error(ErrorKind::ParseError, "bad rational '" + std::string(s) + "'");
    return Integer(std::string(t.front() == '+' ? t.substr(1) : t));
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
  return Rational(parse_int(s.substr(0, slash)), den);
}

/// Sparse vector: (index, nonzero coefficient) pairs sorted by index.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline SparseVec basis_vector(int i) { return {{i, Rational(1)}}; }

inline void axpy(SparseVec& acc, const Rational& a, const SparseVec& x) {
  if (a == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(acc.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < x.size()) {
    if (j == x.size() || (i < acc.size() && acc[i].first < x[j].first)) {
      out.push_back(std::move(acc[i++]));
    } else if (i == acc.size() || x[j].first < acc[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      Rational v = acc[i].second + a * x[j].second;
      if (v != 0) out.emplace_back(acc[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  acc = std::move(out);
}

inline SparseVec scaled(const SparseVec& x, const Rational& a) {
  SparseVec out;
  if (a == 0) return out;
  for (const auto& [i, v] : x) out.emplace_back(i, v * a);
  return out;
}

inline std::vector<Rational> to_dense(const SparseVec& x, int dim) {
  std::vector<Rational> out(static_cast<std::size_t>(dim));
  for (const auto& [i, v] : x) out[static_cast<std::size_t>(i)] = v;
  return out;
}

inline SparseVec from_dense(const std::vector<Rational>& x) {
  SparseVec out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out.emplace_back(static_cast<int>(i), x[i]);
  return out;
}

/// Kronecker product; slot 0 is the most significant index.
inline SparseVec kron(const std::vector<SparseVec>& parts, const std::vector<int>& dims) {
  SparseVec acc{{0, Rational(1)}};
  for (std::size_t s = 0; s < parts.size(); ++s) {
    SparseVec next;
    for (const auto& [i, a] : acc)
      for (const auto& [j, b] : parts[s]) next.emplace_back(i * dims[s] + j, a * b);
    acc = std::move(next);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Dense matrices

using Matrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gauss-Jordan elimination; nullopt when singular.
inline std::optional<Matrix> invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b.front().size(), k = b.size();
  Matrix out(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

}  // namespace glospan
