#include <gtest/gtest.h>

#include <random>

#include "glospan/glospan.hpp"
#include "oracle.hpp"

using namespace glospan;

namespace {

oracle::Set set_of(ElementMask m) { return mask_elements(m); }

BurnsideElement random_element(const GroupPtr& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto x = BurnsideElement::zero(g);
  for (auto& c : x.coefficients) c = Rational(coeff(rng), 1 + (coeff(rng) + 3) % 2);
  return x;
}

std::vector<Rational> pointwise(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

bool only_primes_of(long long n, int order) {
  for (long long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      if (order % p != 0) return false;
      n /= p;
    }
  return n == 1 || order % n == 0;
}

}  // namespace

TEST(TableOfMarks, Examples) {
  auto c1 = table_of_marks(make_group("C1"));
  EXPECT_EQ(c1.m, (std::vector<std::vector<long long>>{{1}}));
  auto c2 = table_of_marks(make_group("C2"));
  EXPECT_EQ(c2.m, (std::vector<std::vector<long long>>{{2, 0}, {1, 1}}));
  auto s3 = table_of_marks(make_group("S3"));
  std::vector<long long> diag;
  for (int i = 0; i < s3.size(); ++i) diag.push_back(s3.at(i, i));
  EXPECT_EQ(diag, (std::vector<long long>{6, 1, 2, 1}));
  EXPECT_EQ(s3.at(1, 0), 3);
  EXPECT_EQ(s3.at(2, 0), 2);
  EXPECT_THROW(table_of_marks(make_group("S4"), 12), Error);
}

TEST(TableOfMarks, AgreesWithFixedPointCounts) {
  for (const auto& g : preset_library(16)) {
    auto t = table_of_marks(g);
    for (int k = 0; k < t.size(); ++k)
      for (int h = 0; h < t.size(); ++h)
        EXPECT_EQ(t.at(k, h), oracle::fixed_cosets(*g, set_of(t.classes[static_cast<std::size_t>(k)]),
                                                   set_of(t.classes[static_cast<std::size_t>(h)])))
            << g->label();
  }
}

TEST(TableOfMarks, TriangularWithWeylDiagonal) {
  for (const auto& g : preset_library(24)) {
    auto t = table_of_marks(g);
    for (int k = 0; k < t.size(); ++k) {
      const auto h = set_of(t.classes[static_cast<std::size_t>(k)]);
      EXPECT_EQ(t.at(k, k), static_cast<long long>(oracle::normalizer(*g, h).size() / h.size())) << g->label();
      for (int j = 0; j < t.size(); ++j) {
        const auto other = set_of(t.classes[static_cast<std::size_t>(j)]);
        if (!oracle::subconjugate(*g, other, h)) {
          EXPECT_EQ(t.at(k, j), 0) << g->label();
        }
      }
    }
  }
}

TEST(TableOfMarks, InverseHasDenominatorsDividingTheOrder) {
  for (const auto& g : preset_library(24)) {
    auto inv = invert(table_of_marks(g).as_matrix());
    ASSERT_TRUE(inv.has_value()) << g->label();
    for (const auto& row : *inv)
      for (const auto& x : row) {
        long long d = boost::multiprecision::denominator(x).convert_to<long long>();
        EXPECT_TRUE(only_primes_of(d, g->order())) << g->label() << " " << to_string(x);
      }
  }
}

TEST(Burnside, MarksExamples) {
  auto c2 = make_group("C2");
  auto t = table_of_marks(c2);
  EXPECT_EQ(marks(t, BurnsideElement::one(c2)), (std::vector<Rational>{1, 1}));
  EXPECT_EQ(marks(t, BurnsideElement::orbit(c2, 0)), (std::vector<Rational>{2, 0}));
  auto free_sq = burnside_product(BurnsideElement::orbit(c2, 0), BurnsideElement::orbit(c2, 0));
  EXPECT_EQ(free_sq.coefficients, (std::vector<Rational>{2, 0}));
  auto s3 = make_group("S3");
  auto c2c2 = orbit_product(s3, 1, 1);
  EXPECT_EQ(c2c2, (std::vector<long long>{1, 1, 0, 0}));
}

TEST(Burnside, IdempotentsOfC2) {
  auto c2 = make_group("C2");
  auto e = rational_idempotents(table_of_marks(c2));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].coefficients, (std::vector<Rational>{Rational(1, 2), 0}));
  EXPECT_EQ(e[1].coefficients, (std::vector<Rational>{Rational(-1, 2), 1}));
}

TEST(Burnside, MarksAreARingHomomorphism) {
  std::mt19937 rng(11);
  for (const auto& g : preset_library(16)) {
    auto t = table_of_marks(g);
    for (int trial = 0; trial < 4; ++trial) {
      auto x = random_element(g, rng), y = random_element(g, rng);
      EXPECT_EQ(marks(t, burnside_product(x, y)), pointwise(marks(t, x), marks(t, y))) << g->label();
      auto sum = x + y;
      auto mx = marks(t, x), my = marks(t, y), ms = marks(t, sum);
      for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_EQ(ms[i], mx[i] + my[i]);
    }
    EXPECT_EQ(marks(t, BurnsideElement::one(g)), std::vector<Rational>(static_cast<std::size_t>(t.size()), Rational(1)));
  }
}

TEST(Burnside, IdempotentsAreCompleteOrthogonalIndicators) {
  for (const auto& g : preset_library(16)) {
    auto t = table_of_marks(g);
    auto e = rational_idempotents(t);
    auto total = BurnsideElement::zero(g);
    for (std::size_t i = 0; i < e.size(); ++i) {
      total = total + e[i];
      auto m = marks(t, e[i]);
      for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m[j], Rational(i == j ? 1 : 0)) << g->label();
      for (std::size_t j = 0; j < e.size(); ++j) {
        auto p = burnside_product(e[i], e[j]);
        EXPECT_EQ(p, i == j ? e[i] : BurnsideElement::zero(g)) << g->label();
      }
    }
    EXPECT_EQ(total, BurnsideElement::one(g)) << g->label();
  }
}

TEST(Burnside, ProductMatchesOrbitDecomposition) {
  for (const auto& g : preset_library(12)) {
    const auto& lat = g->lattice();
    for (int h = 0; h < lat.class_count(); ++h)
      for (int k = 0; k < lat.class_count(); ++k) {
        std::vector<long long> want(static_cast<std::size_t>(lat.class_count()), 0);
        for (const auto& stab : oracle::product_orbit_stabilizers(*g, set_of(lat.rep(h)), set_of(lat.rep(k)))) {
          ElementMask m = 0;
          for (int x : stab) m |= bit(x);
          ++want[static_cast<std::size_t>(lat.class_of_mask(m))];
        }
        EXPECT_EQ(orbit_product(g, h, k), want) << g->label();
      }
  }
}

TEST(Burnside, AlgebraIsCommutativeUnital) {
  for (const auto& g : preset_library(12)) {
    auto a = burnside_algebra(g);
    EXPECT_FALSE(a->defect().has_value()) << g->label() << ": " << a->defect().value_or("");
    for (int i = 0; i < a->dim; ++i)
      for (int j = 0; j < a->dim; ++j) EXPECT_EQ(a->product(i, j), a->product(j, i));
  }
}
