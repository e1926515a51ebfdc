#include "qorder/local.hpp"
#include "qorder/sweep.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace qorder;
using qtest::form;

namespace {

QuatLattice lattice_of(const GoodBasisOrder& o, std::vector<QuatElement> gens) { return make_lattice(o, gens); }

QuatElement elt(Rational t, Rational x, Rational y, Rational z) { return {{t, x, y, z}}; }

// rad O mod p as the set of x with x y nilpotent for all y, by exhaustion
// over O/pO. Used only for p <= 5.
std::vector<FpVec> radical_by_exhaustion(const GoodBasisOrder& o, std::int64_t p) {
  FpAlgebra alg(o, p);
  std::vector<FpVec> all, rad;
  for_each_fp_vector(p, [&](const FpVec& v) { all.push_back(v); });
  auto nilpotent = [&](FpVec z) {
    for (int k = 0; k < 4; ++k) z = alg.mul(z, z);
    return FpSubspace::is_zero(z);
  };
  for (const auto& x : all) {
    bool in = true;
    for (const auto& y : all)
      if (!nilpotent(alg.mul(x, y))) {
        in = false;
        break;
      }
    if (in) rad.push_back(x);
  }
  return rad;
}

}  // namespace

TEST(Radical, NamedExamples) {
  GoodBasisOrder split = clifford_order(form(0, 0, -1, 0, 0, 1));
  EXPECT_EQ(radical(split, 2), lattice_scale(as_lattice(split), 2));

  // Eichler-type order: quotient of dimension 2, index 4.
  GoodBasisOrder eich = clifford_order(form(0, 0, -2, 0, 0, 1));
  QuatLattice r = radical(eich, 2);
  EXPECT_EQ(index(as_lattice(eich).basis, r.basis), 4);
  EXPECT_TRUE(r.contains(lattice_scale(as_lattice(eich), 2)));

  // Lipschitz-type order: rad = <2, 1+i, 1+j, 1+k>, quotient F_2.
  GoodBasisOrder lip = clifford_order(form(1, 1, 1, 0, 0, 0));
  QuatLattice want = lattice_of(lip, {elt(2, 0, 0, 0), elt(1, 1, 0, 0), elt(1, 0, 1, 0), elt(1, 0, 0, 1)});
  EXPECT_EQ(radical(lip, 2), want);
  EXPECT_EQ(index(as_lattice(lip).basis, want.basis), 2);
}

TEST(Radical, TraceMethodMatchesExhaustion) {
  for (const auto& q : enumerate_forms(1).forms) {
    GoodBasisOrder o = clifford_order(q);
    for (std::int64_t p : {2, 3}) {
      if (discrd(o) % p != 0) continue;
      FpSubspace rad = radical_mod_p_trace(o, p);
      std::vector<FpVec> members = radical_by_exhaustion(o, p);
      std::size_t size = 1;
      for (std::size_t k = 0; k < rad.dim(); ++k) size *= static_cast<std::size_t>(p);
      ASSERT_EQ(members.size(), size) << q.to_string() << " p=" << p;
      for (const auto& m : members) ASSERT_TRUE(rad.contains(m));
    }
  }
}

TEST(Radical, LargerPrimesAgainstBruteForce) {
  for (const auto& q : qtest::random_forms(3000, 6, 71)) {
    GoodBasisOrder o = clifford_order(q);
    for (std::int64_t p : {5, 7}) {
      if (discrd(o) % p != 0) continue;
      ASSERT_EQ(radical_mod_p_trace(o, p), radical_mod_p_bruteforce(o, p)) << q.to_string() << " p=" << p;
    }
  }
}

TEST(Radical, UnramifiedPrimeGivesPO) {
  GoodBasisOrder o = clifford_order(form(1, 1, 1, 0, 0, 0));
  EXPECT_EQ(residual_type(o, 3), ResidualType::QuaternionQuotient);
  EXPECT_EQ(radical(o, 3), lattice_scale(as_lattice(o), 3));
}

TEST(ResidualType, Examples) {
  EXPECT_EQ(residual_type(clifford_order(form(0, 0, -1, 0, 0, 1)), 2), ResidualType::QuaternionQuotient);
  EXPECT_EQ(residual_type(clifford_order(form(0, 0, -2, 0, 0, 1)), 2), ResidualType::ResiduallySplit);
  EXPECT_EQ(residual_type(clifford_order(form(1, 1, 1, 1, 1, 1)), 2), ResidualType::ResiduallyInert);
  EXPECT_EQ(residual_type(clifford_order(form(1, 1, 1, 0, 0, 0)), 2), ResidualType::ResiduallyRamified);
  EXPECT_THROW(residual_type(clifford_order(form(1, 1, 1, 0, 0, 0)), 4), InputError);
}

TEST(Gorenstein, Examples) {
  EXPECT_TRUE(is_gorenstein_local(clifford_order(form(0, 0, -1, 0, 0, 1)), 2));
  EXPECT_FALSE(is_gorenstein_local(clifford_order(form(0, 0, -2, 0, 0, 2)), 2));
  EXPECT_TRUE(is_gorenstein_local(clifford_order(form(0, 0, -2, 0, 0, 2)), 3));
  EXPECT_TRUE(is_gorenstein_local(clifford_order(form(1, 1, 1, 1, 1, 1)), 2));
}

TEST(RadicalIdealizer, Examples) {
  GoodBasisOrder split = clifford_order(form(0, 0, -1, 0, 0, 1));
  NormalizedOrder same = radical_idealizer(split, 2);
  EXPECT_EQ(same.order.form(), split.form());
  EXPECT_EQ(same.transition, identity4());

  GoodBasisOrder scaled = clifford_order(form(0, 0, -2, 0, 0, 2));
  NormalizedOrder m2 = radical_idealizer(scaled, 2);
  EXPECT_EQ(discrd(m2.order), 1);
  EXPECT_EQ(abs(determinant<4>(m2.transition)), Rational(1, 8));

  GoodBasisOrder lip = clifford_order(form(1, 1, 1, 0, 0, 0));
  NormalizedOrder hur = radical_idealizer(lip, 2);
  EXPECT_EQ(discrd(hur.order), 2);
  QuatLattice l = lattice_from_rows(lip, hur.transition);
  EXPECT_TRUE(is_order(l));
  EXPECT_TRUE(l.contains(elt(Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2))));
}

TEST(IdealizerChain, Examples) {
  auto discs = [](const std::vector<ChainStep>& c) {
    std::vector<Integer> d;
    for (const auto& s : c) d.push_back(s.discrd);
    return d;
  };
  EXPECT_EQ(discs(idealizer_chain(clifford_order(form(0, 0, -1, 0, 0, 1)), 2)), (std::vector<Integer>{1}));
  EXPECT_EQ(discs(idealizer_chain(clifford_order(form(0, 0, -2, 0, 0, 2)), 2)), (std::vector<Integer>{8, 1}));
  auto lip = idealizer_chain(clifford_order(form(1, 1, 1, 0, 0, 0)), 2);
  EXPECT_EQ(discs(lip), (std::vector<Integer>{4, 2}));
  EXPECT_EQ(gram_and_discrd(lip.back().order).discrd, 2);
}

TEST(Bass, Examples) {
  EXPECT_TRUE(is_bass_local(clifford_order(form(1, 1, 1, 0, 0, 0)), 2));
  EXPECT_FALSE(is_bass_local(clifford_order(form(0, 0, -2, 0, 0, 2)), 2));
  EXPECT_TRUE(is_bass_local(clifford_order(form(1, 1, 1, 1, 1, 1)), 2));
}

TEST(BasicBruteForce, Examples) {
  GoodBasisOrder split = clifford_order(form(0, 0, -1, 0, 0, 1));
  GoodBasisOrder lip = clifford_order(form(1, 1, 1, 0, 0, 0));
  EXPECT_TRUE(is_basic_bruteforce(split, 2));
  EXPECT_TRUE(is_basic_bruteforce(lip, 2));
  EXPECT_FALSE(is_basic_bruteforce(clifford_order(form(0, 0, -2, 0, 0, 2)), 2));

  // Direct residue computations for the witnesses alpha = k and alpha = i.
  for (int r = -8; r <= 8; ++r) {
    QuatElement k = QuatElement::basis(3) - QuatElement::scalar(r);
    EXPECT_NE(numerator(trd(split, k)) % 2, 0);
    QuatElement i = QuatElement::basis(1) - QuatElement::scalar(r);
    EXPECT_EQ(nrd(lip, i), 1 + r * r);
    EXPECT_NE(numerator(nrd(lip, i)) % 4, 0);
  }
}

TEST(TwoGenerationDim, Examples) {
  EXPECT_EQ(two_generation_dim(clifford_order(form(1, 1, 1, 0, 0, 0)), 2), 2u);
  EXPECT_EQ(two_generation_dim(clifford_order(form(0, 0, -2, 0, 0, 2)), 2), 4u);
  EXPECT_THROW(two_generation_dim(clifford_order(form(0, 0, -1, 0, 0, 1)), 2), NotApplicable);
}

TEST(EichlerDecomposition, Examples) {
  GoodBasisOrder scaled = clifford_order(form(0, 0, -2, 0, 0, 2));
  auto j = eichler_decomposition(scaled, 2);
  ASSERT_TRUE(j);
  QuatLattice want = lattice_of(scaled, {elt(1, 0, 0, 0), elt(0, Rational(1, 2), 0, 0), elt(0, 0, Rational(1, 2), 0),
                                         elt(0, 0, 0, Rational(1, 2))});
  EXPECT_EQ(*j, want);
  EXPECT_EQ(discrd(normalize_good_basis(*j).order), 1);
  EXPECT_FALSE(eichler_decomposition(clifford_order(form(0, 0, -1, 0, 0, 1)), 2));
  EXPECT_FALSE(eichler_decomposition(clifford_order(form(1, 1, 1, 0, 0, 0)), 2));
}

TEST(Superorder, HypothesisViolation) {
  EXPECT_THROW(superorder_witness(clifford_order(form(0, 0, -1, 0, 0, 1)), 2), HypothesisViolation);
  EXPECT_THROW(superorder_witness(clifford_order(form(0, 0, -2, 0, 0, 2)), 2), HypothesisViolation);
}

TEST(Superorder, FirstQualifyingForm) {
  std::optional<TernaryForm> first;
  for (const auto& q : enumerate_forms(2).forms) {
    GoodBasisOrder o = clifford_order(q);
    if (discrd(o) % 2 == 0 && is_gorenstein_local(o, 2) &&
        residual_type(o, 2) == ResidualType::ResiduallyRamified && !is_basic_bruteforce(o, 2)) {
      first = q;
      break;
    }
  }
  ASSERT_TRUE(first);
  GoodBasisOrder o = clifford_order(*first);
  SuperorderWitness w = superorder_witness(o, 2);
  EXPECT_FALSE(is_gorenstein_local(w.order.order, 2));
  EXPECT_EQ(form_content(w.order.order.form()) % 2, 0);
  EXPECT_EQ(abs(determinant<4>(w.order.transition)), Rational(1, 2));
  NormalizedOrder nat = radical_idealizer(o, 2);
  EXPECT_EQ(lattice_from_rows(o, w.order.transition), lattice_from_rows(o, nat.transition));
  EXPECT_GT(check_minimal_superorder(o, 2, lattice_from_rows(o, nat.transition)), 0u);
  EXPECT_FALSE(is_bass_local(o, 2));
}

TEST(RadicalElements, Examples) {
  GoodBasisOrder lip = clifford_order(form(1, 1, 1, 0, 0, 0));
  QuatElement alpha = elt(1, 1, 0, 0);
  EXPECT_EQ(trd(lip, alpha), 2);
  EXPECT_EQ(nrd(lip, alpha), 2);
  EXPECT_EQ(multiply(lip, alpha, alpha), elt(0, 2, 0, 0));
  EXPECT_TRUE(lattice_scale(as_lattice(lip), 2).contains(multiply(lip, alpha, alpha)));
  RadicalElementReport lr = lemma41_properties(lip, 2);
  EXPECT_FALSE(lr.nonbasic);
  EXPECT_TRUE(lr.violations.empty());
  EXPECT_EQ(lr.checked, 16u);

  RadicalElementReport nb = lemma41_properties(clifford_order(form(0, 0, -2, 0, 0, 2)), 2);
  EXPECT_TRUE(nb.nonbasic);
  EXPECT_TRUE(nb.violations.empty());

  // alpha = 0 satisfies everything.
  EXPECT_EQ(trd(lip, QuatElement{}), 0);
  EXPECT_EQ(nrd(lip, QuatElement{}), 0);

  EXPECT_THROW(lemma41_properties(clifford_order(form(0, 0, -2, 0, 0, 1)), 2), NotApplicable);
}

// Deciders agree on every form of the [-1,1] box at p = 2, 3, and at p = 5
// on a random sample (structural, brute force, two-generation).
TEST(AnalyzeLocal, DecidersAgree) {
  for (const auto& q : enumerate_forms(1).forms) {
    GoodBasisOrder o = clifford_order(q);
    for (long p : {2, 3}) {
      if (discrd(o) % p != 0) continue;
      LocalReport r = analyze_local(o, p);
      ASSERT_TRUE(r.oracle_agreement) << r.disagreements.front();
      ASSERT_EQ(r.bass, is_bass_local(o, p));
    }
  }
  for (const auto& q : qtest::random_forms(400, 5, 73)) {
    GoodBasisOrder o = clifford_order(q);
    if (discrd(o) % 5 != 0) continue;
    LocalReport r = analyze_local(o, 5);
    ASSERT_TRUE(r.oracle_agreement) << r.disagreements.front();
  }
}

TEST(AnalyzeLocal, NonBasicGorensteinRamifiedHasSuperorder) {
  LocalReport lip = analyze_local(clifford_order(form(1, 1, 1, 0, 0, 0)), 2);
  EXPECT_FALSE(lip.superorder);
  EXPECT_EQ(lip.rad_two_gen_dim, 2u);
  LocalReport scaled = analyze_local(clifford_order(form(0, 0, -2, 0, 0, 2)), 2);
  EXPECT_FALSE(scaled.superorder);  // not Gorenstein
  EXPECT_FALSE(scaled.basic_structural);
  EXPECT_EQ(scaled.basic_bruteforce, false);
}
