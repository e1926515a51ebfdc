#include "qorder/global.hpp"
#include "qorder/sweep.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qorder;
using qtest::form;

namespace {

// d is fundamental iff it equals the discriminant of Q(sqrt d): with m the
// squarefree part of d, that discriminant is m (m = 1 mod 4) or 4m.
bool fundamental_oracle(long d) {
  if (d == 1) return true;
  if (d == 0) return false;
  long m = d < 0 ? -1 : 1, n = d < 0 ? -d : d;
  for (long f = 2; f * f <= n; ++f) {
    while (n % (f * f) == 0) n /= f * f;
    if (n % f == 0) {
      m *= f;
      n /= f;
    }
  }
  m *= n;
  if (m == 1) return false;
  long field = ((m % 4) + 4) % 4 == 1 ? m : 4 * m;
  return field == d;
}

std::vector<long> discs(const std::vector<QuadraticWitness>& ws) {
  std::vector<long> out;
  for (const auto& w : ws) out.push_back(static_cast<long>(w.d));
  return out;
}

}  // namespace

TEST(Fundamental, Examples) {
  EXPECT_TRUE(is_fundamental_discriminant(-4));
  EXPECT_FALSE(is_fundamental_discriminant(9));
  EXPECT_TRUE(is_fundamental_discriminant(12));
  EXPECT_TRUE(is_fundamental_discriminant(1));
  EXPECT_FALSE(is_fundamental_discriminant(0));
}

TEST(Fundamental, MatchesFieldDiscriminant) {
  for (long d = -3000; d <= 3000; ++d) ASSERT_EQ(is_fundamental_discriminant(d), fundamental_oracle(d)) << d;
}

TEST(Witnesses, LipschitzClosedForm) {
  GoodBasisOrder o = clifford_order(form(1, 1, 1, 0, 0, 0));
  auto ws = find_quadratic_witnesses(o, {4, 5, false});
  EXPECT_EQ(discs(ws), (std::vector<long>{-4, -8, -20, -24, -40}));

  // disc(xi + yj + zk) = -4(x^2 + y^2 + z^2); list the fundamental values
  // over the same box directly.
  std::set<long> all;
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y)
      for (int z = -4; z <= 4; ++z) {
        long d = -4L * (x * x + y * y + z * z);
        if (d != 0 && fundamental_oracle(d)) all.insert(d);
      }
  std::vector<long> by_abs(all.begin(), all.end());
  std::sort(by_abs.begin(), by_abs.end(), [](long l, long r) { return std::abs(l) < std::abs(r); });
  auto full = find_quadratic_witnesses(o, {4, 1000, false});
  EXPECT_EQ(discs(full), by_abs);
  for (const auto& w : full) {
    EXPECT_EQ(elem_disc(o, w.alpha), Rational(w.d));
    EXPECT_LE(w.height, 4u);
  }
}

TEST(Witnesses, SplitOrderHasDiscriminantOne) {
  auto ws = find_quadratic_witnesses(clifford_order(form(0, 0, -1, 0, 0, 1)), {1, 1, false});
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].d, 1);
  auto more = find_quadratic_witnesses(clifford_order(form(0, 0, -1, 0, 0, 1)), {1, 5, false});
  EXPECT_EQ(more.front().d, 1);
}

TEST(Witnesses, NonBasicOrderHasNone) {
  GoodBasisOrder o = clifford_order(form(0, 0, -2, 0, 0, 2));
  for (unsigned h : {1u, 5u, 12u}) EXPECT_TRUE(find_quadratic_witnesses(o, {h, 5, false}).empty());
  EXPECT_TRUE(find_quadratic_witnesses(o, {12, 5, true}).empty());
}

TEST(Witnesses, StopAtFirstReturnsOneValidWitness) {
  for (const auto& q : qtest::random_forms(50, 4, 83)) {
    GoodBasisOrder o = clifford_order(q);
    auto full = find_quadratic_witnesses(o, {6, 100, false});
    auto first = find_quadratic_witnesses(o, {6, 100, true});
    ASSERT_EQ(first.empty(), full.empty());
    if (first.empty()) continue;
    ASSERT_EQ(first.size(), 1u);
    ASSERT_TRUE(is_fundamental_discriminant(first[0].d));
    ASSERT_EQ(elem_disc(o, first[0].alpha), Rational(first[0].d));
    ASSERT_EQ(first[0].height, std::min_element(full.begin(), full.end(), [](const auto& l, const auto& r) {
                                 return l.height < r.height;
                               })->height);
  }
}

TEST(Witnesses, InputGuards) {
  GoodBasisOrder o = clifford_order(form(1, 1, 1, 0, 0, 0));
  EXPECT_THROW(find_quadratic_witnesses(o, {0, 5, false}), InputError);
  EXPECT_THROW(find_quadratic_witnesses(o, {200000, 5, false}), CapacityError);
}

TEST(Classify, NamedExamples) {
  ClassificationReport split = classify(clifford_order(form(0, 0, -1, 0, 0, 1)), {1, 1, false});
  EXPECT_EQ(split.discrd, 1);
  EXPECT_TRUE(split.local.empty());
  EXPECT_TRUE(split.bass);
  EXPECT_TRUE(split.basic);
  ASSERT_EQ(split.witnesses.size(), 1u);
  EXPECT_EQ(split.witnesses[0].d, 1);
  EXPECT_EQ(split.witnesses[0].alpha, QuatElement::basis(3));

  ClassificationReport lip = classify(clifford_order(form(1, 1, 1, 0, 0, 0)));
  EXPECT_EQ(lip.discrd, 4);
  EXPECT_TRUE(lip.bass);
  EXPECT_TRUE(lip.basic);
  ASSERT_EQ(lip.local.size(), 1u);
  EXPECT_EQ(lip.local[0].residual, ResidualType::ResiduallyRamified);
  ASSERT_EQ(lip.local[0].chain.size(), 2u);
  EXPECT_EQ(lip.local[0].chain[0].discrd, 4);
  EXPECT_EQ(lip.local[0].chain[1].discrd, 2);

  ClassificationReport scaled = classify(clifford_order(form(0, 0, -2, 0, 0, 2)));
  EXPECT_EQ(scaled.discrd, 8);
  EXPECT_FALSE(scaled.gorenstein);
  EXPECT_FALSE(scaled.bass);
  EXPECT_FALSE(scaled.basic);
  EXPECT_TRUE(scaled.witnesses.empty());
  EXPECT_FALSE(scaled.inconclusive);
  EXPECT_TRUE(scaled.oracle_agreement);
}

TEST(Classify, CapacityGuard) {
  EXPECT_THROW(classify(clifford_order(form(10000, 10000, 10000, 0, 0, 0))), CapacityError);
}

TEST(Classify, MultiplePrimes) {
  // discrd 4 * 3 * 5 * 7 / ... : a diagonal form with several odd primes.
  ClassificationReport r = classify(clifford_order(form(1, 3, 5, 0, 0, 0)));
  EXPECT_EQ(r.discrd, 60);
  ASSERT_EQ(r.local.size(), 3u);
  EXPECT_TRUE(r.oracle_agreement);
  EXPECT_TRUE(r.bass);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(CrossValidate, Examples) {
  std::vector<std::string> records;
  EXPECT_TRUE(cross_validate(clifford_order(form(1, 1, 1, 0, 0, 0)), &records));
  EXPECT_TRUE(cross_validate(clifford_order(form(0, 0, -2, 0, 0, 2)), &records));
  EXPECT_TRUE(cross_validate(clifford_order(form(1, 1, 1, 1, 1, 1)), &records));
  EXPECT_TRUE(records.empty());
}

TEST(CrossValidate, SweepOfUnitBox) {
  std::vector<std::string> records;
  for (const auto& q : enumerate_forms(1).forms) ASSERT_TRUE(cross_validate(clifford_order(q), &records, {6, 1, true}));
}
