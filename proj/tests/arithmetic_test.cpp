#include "qorder/lattice.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qorder;

namespace {

bool naive_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// gcd of all 4x4 minors of an integer generator matrix: the covolume of its row span.
Integer minor_gcd(const std::vector<Vec4Z>& rows) {
  Integer g = 0;
  const std::size_t n = rows.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          std::array<std::array<Integer, 4>, 4> m{rows[a], rows[b], rows[c], rows[d]};
          g = gcd(g, determinant<4>(m));
        }
  return g;
}

}  // namespace

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(Integer(12), Integer(2)), 2u);
  EXPECT_EQ(valuation(Integer(0), Integer(3)), std::nullopt);
  EXPECT_EQ(valuation(Integer(45), Integer(3)), 2u);
  EXPECT_EQ(valuation(Integer(-8), Integer(2)), 3u);
  EXPECT_EQ(valuation(Rational(3, 8), Integer(2)), -3);
  EXPECT_THROW(valuation(Integer(5), Integer(4)), InputError);
}

TEST(Valuation, RecomposesN) {
  for (long n = 1; n < 3000; ++n)
    for (long p : {2, 3, 5, 7}) {
      unsigned e = *valuation(Integer(n), Integer(p));
      Integer pe = 1;
      for (unsigned k = 0; k < e; ++k) pe *= p;
      ASSERT_EQ(n % pe, 0);
      ASSERT_NE((n / pe) % p, 0);
    }
}

TEST(Content, Examples) {
  std::vector<Integer> a{2, 4, 6, 0, 2, 8}, b{1, 1, 1, 0, 0, 0}, c{0, 0, 0};
  EXPECT_EQ(content(a), 2);
  EXPECT_EQ(content(b), 1);
  EXPECT_EQ(content(c), 0);
}

TEST(FactorTrial, Examples) {
  EXPECT_EQ(factor_trial(8), (Factorization{{2, 3}}));
  EXPECT_TRUE(factor_trial(1).empty());
  EXPECT_EQ(factor_trial(108), (Factorization{{2, 2}, {3, 3}}));
  EXPECT_THROW(factor_trial(0), InputError);
}

TEST(FactorTrial, ProductOfIncreasingPrimes) {
  for (long n = 1; n <= 5000; ++n) {
    Integer prod = 1, last = 1;
    for (const auto& [p, e] : factor_trial(n)) {
      ASSERT_TRUE(naive_prime(static_cast<long>(p)));
      ASSERT_GT(p, last);
      last = p;
      for (unsigned k = 0; k < e; ++k) prod *= p;
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(SqrtMod, Examples) {
  auto r = sqrt_mod(4, 5);
  ASSERT_TRUE(r);
  EXPECT_TRUE(*r == 2 || *r == 3);
  EXPECT_FALSE(sqrt_mod(2, 5));
  EXPECT_EQ(sqrt_mod(1, 2), Integer(1));
}

TEST(SqrtMod, ExhaustiveSmallPrimes) {
  for (long p = 2; p <= 31; ++p) {
    if (!naive_prime(p)) continue;
    std::vector<bool> square(p, false);
    for (long x = 0; x < p; ++x) square[x * x % p] = true;
    for (long a = -p; a < 2 * p; ++a) {
      long red = ((a % p) + p) % p;
      auto r = sqrt_mod(a, p);
      ASSERT_EQ(r.has_value(), square[red]) << a << " mod " << p;
      if (r) ASSERT_EQ(mod(*r * *r - a, Integer(p)), 0);
    }
  }
}

TEST(Rational, StringRoundTrip) {
  for (const char* s : {"0", "7", "-3", "1/2", "-5/12"}) EXPECT_EQ(to_string(parse_rational(s)), s);
  EXPECT_EQ(to_string(parse_rational("4/6")), "2/3");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(identity4()).rows(), identity4());

  std::vector<Vec4Q> g{{2, 0, 0, 0}, {3, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  EXPECT_EQ(canonicalize(g).rows(), identity4());

  std::vector<Vec4Q> h{{2, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 1, 1}};
  CanonicalLatticeBasis l = canonicalize(h);
  EXPECT_EQ(l.covolume(), 4);
  for (const auto& v : h) EXPECT_TRUE(l.contains(v));
  for (std::size_t r = 0; r < 4; ++r) {
    // Each canonical row is an integer combination of the generators.
    Mat4Q gm{h[0], h[1], h[2], h[3]};
    Vec4Q coeffs = row_times(l.row(r), inverse(gm));
    for (const auto& c : coeffs) EXPECT_TRUE(is_integer(c));
  }
  EXPECT_FALSE(l.contains(Vec4Q{1, 0, 0, 0}));
}

TEST(Canonicalize, RankDeficientThrows) {
  std::vector<Vec4Q> g{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {2, 2, 2, 0}};
  EXPECT_THROW(canonicalize(g), DegenerateError);
}

// Covolume equals the gcd of the maximal minors; the basis does not depend
// on the order of the generators or on unimodular row operations.
TEST(Canonicalize, RandomGeneratorSets) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Vec4Z> rows(4 + trial % 3);
    for (auto& r : rows)
      for (auto& x : r) x = d(rng);
    Integer g = minor_gcd(rows);
    if (g == 0) continue;
    CanonicalLatticeBasis l = canonicalize_integer(1, rows);
    ASSERT_EQ(l.covolume(), Rational(g));

    std::vector<Vec4Z> shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (int op = 0; op < 5; ++op) {
      std::size_t i = rng() % shuffled.size(), j = rng() % shuffled.size();
      if (i == j) continue;
      int f = d(rng);
      for (std::size_t c = 0; c < 4; ++c) shuffled[i][c] += f * shuffled[j][c];
    }
    ASSERT_EQ(canonicalize_integer(1, shuffled), l);

    // Scaling by a rational and back is the identity.
    ASSERT_EQ(scale(scale(l, Rational(3, 7)), Rational(7, 3)), l);
  }
}

TEST(Canonicalize, SumAndIndex) {
  CanonicalLatticeBasis z4 = canonicalize(identity4());
  CanonicalLatticeBasis two = scale(z4, 2);
  EXPECT_EQ(index(z4, two), 16);
  EXPECT_EQ(sum(z4, two), z4);
  EXPECT_TRUE(z4.contains(two));
  EXPECT_FALSE(two.contains(z4));
  std::vector<Vec4Q> dual_of_two{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}};
  EXPECT_EQ(dual_lattice(dual_of_two), scale(z4, Rational(1, 2)));
}
