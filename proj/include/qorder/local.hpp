#pragma once

// Deciders at a single prime p: residual type, Gorenstein, Bass, basic
// (structural and brute force), generation of the radical, the decomposition
// O = Z + pJ, the radical idealizer chain and the non-Gorenstein superorder
// of a non-basic residually ramified order.

#include "qorder/fp_algebra.hpp"
#include "qorder/quat_lattice.hpp"
#include "qorder/radical.hpp"
#include "qorder/ternary_form.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qorder {

inline constexpr std::int64_t kBasicBruteForceMaxPrime = 13;
inline constexpr std::int64_t kIdempotentSearchMaxPrime = 13;

enum class ResidualType { QuaternionQuotient, ResiduallySplit, ResiduallyInert, ResiduallyRamified };

inline std::string to_string(ResidualType t) {
  switch (t) {
    case ResidualType::QuaternionQuotient: return "quaternion";
    case ResidualType::ResiduallySplit: return "split";
    case ResidualType::ResiduallyInert: return "inert";
    case ResidualType::ResiduallyRamified: return "ramified";
  }
  return "?";
}

// O is a local ring at p iff O/rad O is a field.
inline bool is_local_ring(ResidualType t) {
  return t == ResidualType::ResiduallyInert || t == ResidualType::ResiduallyRamified;
}

namespace detail {

inline bool quotient_has_idempotent_search(const GoodBasisOrder& o, const FpSubspace& rad, const FpVec& x) {
  std::int64_t p = rad.prime();
  FpAlgebra alg(o, p);
  for (std::int64_t s = 0; s < p; ++s)
    for (std::int64_t t = 0; t < p; ++t) {
      if (t == 0 && (s == 0 || s == 1)) continue;
      FpVec e{0, 0, 0, 0};
      for (std::size_t q = 0; q < 4; ++q) e[q] = mod(t * x[q], p);
      e[0] = mod(e[0] + s, p);
      FpVec e2 = alg.mul(e, e);
      for (std::size_t q = 0; q < 4; ++q) e2[q] -= e[q];
      if (rad.contains(e2)) return true;
    }
  return false;
}

// x^2 - s x + n has a root in F_p.
inline bool quotient_has_root(std::int64_t s, std::int64_t n, std::int64_t p) {
  if (p == 2) return n % 2 == 0 || mod(1 - s + n, 2) == 0;
  std::int64_t d = mod(s * s - 4 * n, p);
  return sqrt_mod(Integer(d), Integer(p)).has_value();
}

}  // namespace detail

inline ResidualType residual_type(const GoodBasisOrder& o, const FpSubspace& rad) {
  std::int64_t p = rad.prime();
  switch (4 - rad.dim()) {
    case 4: return ResidualType::QuaternionQuotient;
    case 1: return ResidualType::ResiduallyRamified;
    case 2: break;
    default: throw InternalError("impossible residue algebra dimension");
  }
  auto quo = quadratic_quotient(o, rad);
  bool split = detail::quotient_has_root(quo->s, quo->n, p);
  if (p <= kIdempotentSearchMaxPrime && split != detail::quotient_has_idempotent_search(o, rad, quo->generator))
    throw InternalError("idempotent search disagrees with root criterion for " + o.form().to_string());
  return split ? ResidualType::ResiduallySplit : ResidualType::ResiduallyInert;
}

inline ResidualType residual_type(const GoodBasisOrder& o, const Integer& p) {
  return residual_type(o, radical_mod_p(o, small_prime(p)));
}

inline bool is_gorenstein_local(const GoodBasisOrder& o, const Integer& p) {
  require_prime(p);
  return form_content(o.form()) % p != 0;
}

// O_L(rad O) in good-basis form; the transition rows are in the coordinates of O.
inline NormalizedOrder radical_idealizer(const GoodBasisOrder& o, const QuatLattice& rad) {
  QuatLattice left = left_order(rad);
  if (!(left == right_order(rad))) throw InternalError("left and right orders of the radical differ for " + o.form().to_string());
  if (!left.contains(as_lattice(o))) throw InternalError("radical idealizer does not contain O");
  return normalize_good_basis(left);
}

inline NormalizedOrder radical_idealizer(const GoodBasisOrder& o, const Integer& p) {
  return radical_idealizer(o, radical(o, p));
}

struct ChainStep {
  GoodBasisOrder order;
  Mat4Q to_base;  // rows: 1, i, j, k of `order` in the coordinates of the first order
  Integer discrd;
};

// O, O#, O##, ... until the discriminant valuation at p is at most 1.
inline std::vector<ChainStep> idealizer_chain(const GoodBasisOrder& o, const Integer& p) {
  require_prime(p);
  std::vector<ChainStep> chain{{o, identity4(), discrd(o)}};
  unsigned limit = *valuation(discrd(o), p) + 1;
  while (*valuation(chain.back().discrd, p) > 1) {
    if (chain.size() > limit) throw InternalError("idealizer chain does not terminate for " + o.form().to_string());
    const ChainStep& cur = chain.back();
    NormalizedOrder next = radical_idealizer(cur.order, p);
    Rational det = determinant<4>(next.transition);
    Rational idx = 1 / (det < 0 ? Rational(-det) : det);
    if (denominator(idx) != 1 || numerator(idx) == 1 ||
        numerator(idx) != detail::pow(p, *valuation(numerator(idx), p)))
      throw InternalError("idealizer step index is not a positive power of p");
    chain.push_back({next.order, compose(next.transition, cur.to_base), discrd(next.order)});
  }
  return chain;
}

// O is not basic at p iff every alpha in O has r in Z with
// p | trd(alpha - r) and p^2 | nrd(alpha - r). Both quantities depend only on
// alpha mod p^2 O and r mod p^2, so a finite sweep decides it.
inline bool is_basic_bruteforce(const GoodBasisOrder& o, const Integer& p) {
  std::int64_t pp = small_prime(p);
  if (pp > kBasicBruteForceMaxPrime) throw CapacityError("brute-force basic test limited to p <= 13");
  const std::int64_t m = pp * pp;
  std::array<std::int64_t, 6> k;
  for (std::size_t n = 0; n < 6; ++n) k[n] = static_cast<std::int64_t>(mod(o.form().coefficients()[n], Integer(m)));
  const auto [a, b, c, u, v, w] = k;
  for (std::int64_t t = 0; t < m; ++t)
    for (std::int64_t x = 0; x < m; ++x)
      for (std::int64_t y = 0; y < m; ++y)
        for (std::int64_t z = 0; z < m; ++z) {
          std::int64_t t0 = (u * x + v * y + w * z) % m;
          std::int64_t n0 = (b * c % m * x % m * x + a * c % m * y % m * y + a * b % m * z % m * z +
                             (u * v - c * w) % m * x % m * y + (u * w - b * v) % m * x % m * z +
                             (v * w - a * u) % m * y % m * z) %
                            m;
          std::int64_t tr = mod(2 * t + t0, m);
          std::int64_t nr = mod(t * t + t * t0 + n0, m);
          bool found = false;
          for (std::int64_t r = 0; r < m && !found; ++r) {
            std::int64_t tr_r = mod(tr - 2 * r, m);
            std::int64_t nr_r = mod(nr - r * tr + r * r, m);
            found = tr_r % pp == 0 && nr_r == 0;
          }
          if (!found) return true;
        }
  return false;
}

// O = Z + pJ with J integral, built from (alpha - r)/p over the basis i, j, k;
// none when no such J exists (O basic at p).
inline std::optional<QuatLattice> eichler_decomposition(const GoodBasisOrder& o, const Integer& p) {
  require_prime(p);
  const Integer p2 = p * p;
  std::vector<QuatElement> gens{QuatElement::scalar(1)};
  for (std::size_t m = 1; m < 4; ++m) {
    QuatElement alpha = QuatElement::basis(m);
    Integer t = numerator(trd(o, alpha)), n = numerator(nrd(o, alpha));
    std::optional<Integer> r;
    for (Integer s = 0; s < p && !r; ++s)
      if ((t - 2 * s) % p == 0 && (n - s * t + s * s) % p2 == 0) r = s;
    if (!r) return std::nullopt;
    gens.push_back(Rational(1, p) * (alpha - QuatElement::scalar(*r)));
  }
  QuatLattice j = make_lattice(o, gens);
  if (!is_integral_lattice(j)) return std::nullopt;
  std::vector<QuatElement> back{QuatElement::scalar(1)};
  for (std::size_t r = 0; r < 4; ++r) back.push_back(Rational(p) * j.element(r));
  if (!(make_lattice(o, back) == as_lattice(o))) throw InternalError("O != Z + pJ for " + o.form().to_string());
  return j;
}

// Number of generators of rad O as a one-sided ideal of a local order:
// the dimension of rad/rad^2 over the residue field O/rad O.
inline unsigned two_generation_dim(const GoodBasisOrder& o, const Integer& p) {
  std::int64_t pp = small_prime(p);
  FpSubspace rad = radical_mod_p(o, pp);
  ResidualType t = residual_type(o, rad);
  if (!is_local_ring(t)) throw NotApplicable("order is not a local ring at p = " + p.str());
  QuatLattice r = radical_lattice(o, rad);
  QuatLattice r2 = lattice_product(r, r);
  Rational idx = index(r.basis, r2.basis);
  if (!is_integer(idx)) throw InternalError("rad^2 is not contained in rad");
  unsigned dim = *valuation(numerator(idx), p);
  if (numerator(idx) != detail::pow(p, dim)) throw InternalError("rad/rad^2 is not an F_p-space");
  unsigned degree = static_cast<unsigned>(4 - rad.dim());
  if (dim % degree != 0) throw InternalError("rad/rad^2 is not a vector space over the residue field");
  return dim / degree;
}

// Elements e'_2 e'_3 etc. for vectors x, y of the quadratic module, in the
// coordinates of the even Clifford order of the same form.
inline QuatElement bivector(const GoodBasisOrder& o, const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) {
  const TernaryForm& q = o.form();
  QuatElement out;
  auto add = [&](std::size_t m, std::size_t n, const Rational& f) {
    if (f == 0) return;
    QuatElement e;
    if (m == n) {
      e = QuatElement::scalar(Rational(q.coefficients()[m]));
    } else {
      // e2e3 = i, e3e1 = j, e1e2 = k and e_n e_m = B(e_m, e_n) - e_m e_n.
      static constexpr std::size_t target[3][3] = {{0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
      static constexpr bool positive[3][3] = {{false, true, false}, {false, false, true}, {true, false, false}};
      const Integer& bil = q.coefficients()[3 + (3 - m - n)];
      QuatElement basis = QuatElement::basis(target[m][n]);
      e = positive[m][n] ? basis : QuatElement::scalar(Rational(bil)) - basis;
    }
    out = out + f * e;
  };
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n) add(m, n, x[m] * y[n]);
  return out;
}

struct SuperorderWitness {
  NormalizedOrder order;      // transition rows in the coordinates of O
  NormalFormCase which;
  TernaryForm local_form;     // ramified normal form of the input
  TernaryForm predicted_form; // form of Z + Z i'/p + Z j + Z k (or the case (ii) analogue)
};

namespace detail {

inline bool is_good_basis_for(const GoodBasisOrder& o, const std::array<QuatElement, 4>& g, const TernaryForm& q) {
  StructureTable t = structure_table(q);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) {
      QuatElement expect;
      for (std::size_t r = 0; r < 4; ++r) expect = expect + Rational(t[m][n][r]) * g[r];
      if (multiply(o, g[m], g[n]) != expect) return false;
    }
  return true;
}

inline bool is_basic_local(const GoodBasisOrder& o, const Integer& p) {
  if (p <= kBasicBruteForceMaxPrime) return is_basic_bruteforce(o, p);
  return !eichler_decomposition(o, p).has_value();
}

}  // namespace detail

// Non-Gorenstein superorder of index p for a Gorenstein, residually ramified,
// non-basic order: in the normal form, divide i (case i) or j (case ii) by p.
inline SuperorderWitness superorder_witness(const GoodBasisOrder& o, const Integer& p) {
  std::int64_t pp = small_prime(p);
  const std::string where = " for " + o.form().to_string() + " at p=" + p.str();
  if (!is_gorenstein_local(o, p)) throw HypothesisViolation("order is not Gorenstein" + where);
  FpSubspace rad = radical_mod_p(o, pp);
  if (residual_type(o, rad) != ResidualType::ResiduallyRamified)
    throw HypothesisViolation("order is not residually ramified" + where);
  if (detail::is_basic_local(o, p)) throw HypothesisViolation("order is basic" + where);

  RamifiedNormalForm nf = lemma35_normal_form(o.form(), p);
  std::array<std::array<Rational, 3>, 3> col;
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t m = 0; m < 3; ++m) col[n][m] = nf.change[m][n];
  std::array<QuatElement, 4> g{QuatElement::scalar(1), bivector(o, col[1], col[2]), bivector(o, col[2], col[0]),
                               bivector(o, col[0], col[1])};
  if (!detail::is_good_basis_for(o, g, nf.form)) throw InternalError("normal-form basis is not a good basis" + where);

  const auto& [a, b, c, u, v, w] = nf.form.coefficients();
  const Integer p2 = p * p;
  std::optional<TernaryForm> predicted;
  std::size_t slot;
  if (nf.which == NormalFormCase::I) {
    if (u % p2 != 0) throw HypothesisViolation("p^2 does not divide u in case (i)" + where);
    predicted.emplace(p * a, b / p, c / p, u / p, 0, w);
    slot = 1;
  } else {
    predicted.emplace(a / p, p * b, c / p, u, 0, 0);
    slot = 2;
  }
  QuatElement target = Rational(1, p) * g[slot];
  std::array<QuatElement, 4> gp = g;
  gp[slot] = target;
  if (!detail::is_good_basis_for(o, gp, *predicted)) throw InternalError("superorder table mismatch" + where);
  if (form_content(*predicted) % p != 0) throw InternalError("predicted superorder is Gorenstein" + where);

  std::vector<QuatElement> gens{QuatElement::basis(0), QuatElement::basis(1), QuatElement::basis(2),
                                QuatElement::basis(3), target};
  QuatLattice sup = make_lattice(o, gens);
  if (index(sup.basis, as_lattice(o).basis) != Rational(p)) throw InternalError("superorder index is not p" + where);
  NormalizedOrder norm = normalize_good_basis(sup);
  if (form_content(norm.order.form()) % p != 0) throw InternalError("superorder is Gorenstein" + where);
  NormalizedOrder nat = radical_idealizer(o, radical_lattice(o, rad));
  if (!(lattice_from_rows(o, nat.transition) == sup))
    throw InternalError("superorder differs from the radical idealizer" + where);
  return {norm, nf.which, nf.form, *predicted};
}

// Every order strictly between O and p^{-1} O of index p or p^2 over O must
// contain `minimal`. Returns the number of such orders found.
inline std::size_t check_minimal_superorder(const GoodBasisOrder& o, const Integer& p, const QuatLattice& minimal) {
  std::int64_t pp = small_prime(p);
  std::set<std::vector<FpVec>> seen;
  std::vector<FpVec> all;
  for_each_fp_vector(pp, [&](const FpVec& v) {
    if (!FpSubspace::is_zero(v)) all.push_back(v);
  });
  std::size_t orders = 0;
  auto visit = [&](const FpSubspace& s) {
    if (!seen.insert(s.basis()).second) return;
    std::vector<QuatElement> gens{QuatElement::basis(0), QuatElement::basis(1), QuatElement::basis(2),
                                  QuatElement::basis(3)};
    for (const auto& b : s.basis()) gens.push_back(QuatElement{{Rational(b[0], pp), Rational(b[1], pp),
                                                                Rational(b[2], pp), Rational(b[3], pp)}});
    QuatLattice l = make_lattice(o, gens);
    if (!is_order(l)) return;
    ++orders;
    if (!l.contains(minimal))
      throw InternalError("superorder of " + o.form().to_string() + " does not contain the radical idealizer");
  };
  for (std::size_t m = 0; m < all.size(); ++m) {
    visit(FpSubspace(pp, {all[m]}));
    for (std::size_t n = m + 1; n < all.size(); ++n) {
      FpSubspace s(pp, {all[m], all[n]});
      if (s.dim() == 2) visit(s);
    }
  }
  return orders;
}

struct RadicalElementReport {
  std::size_t checked = 0;
  bool nonbasic = false;
  std::vector<std::string> violations;
};

// Over a full transversal of rad / p rad: p | trd, p | nrd, alpha^2 in pO,
// and in the non-basic case p^2 | nrd and alpha^2 in p rad.
inline RadicalElementReport lemma41_properties(const GoodBasisOrder& o, const Integer& p) {
  std::int64_t pp = small_prime(p);
  FpSubspace radp = radical_mod_p(o, pp);
  if (!is_local_ring(residual_type(o, radp))) throw NotApplicable("order is not a local ring at p = " + p.str());
  QuatLattice rad = radical_lattice(o, radp);
  QuatLattice prad = lattice_scale(rad, Rational(p));
  QuatLattice po = lattice_scale(as_lattice(o), Rational(p));
  RadicalElementReport rep;
  rep.nonbasic = !detail::is_basic_local(o, p);
  const Integer p2 = p * p;
  for_each_fp_vector(pp, [&](const FpVec& c) {
    QuatElement alpha;
    for (std::size_t r = 0; r < 4; ++r) alpha = alpha + Rational(c[r]) * rad.element(r);
    ++rep.checked;
    Rational t = trd(o, alpha), n = nrd(o, alpha);
    QuatElement sq = multiply(o, alpha, alpha);
    auto fail = [&](const std::string& what) {
      std::string s = "[";
      for (std::size_t q = 0; q < 4; ++q) s += (q ? "," : "") + to_string(alpha[q]);
      rep.violations.push_back(what + " at alpha=" + s + "]");
    };
    if (!is_integer(t) || numerator(t) % p != 0) fail("p does not divide trd");
    if (!is_integer(n) || numerator(n) % p != 0) fail("p does not divide nrd");
    if (!po.contains(sq)) fail("alpha^2 not in pO");
    if (rep.nonbasic) {
      if (!is_integer(n) || numerator(n) % p2 != 0) fail("p^2 does not divide nrd");
      if (!prad.contains(sq)) fail("alpha^2 not in p rad O");
    }
  });
  return rep;
}

inline bool is_bass_local(const GoodBasisOrder& o, const Integer& p) {
  ResidualType t = residual_type(o, p);
  if (t != ResidualType::ResiduallyRamified) return true;
  if (!is_gorenstein_local(o, p)) return false;
  return is_gorenstein_local(radical_idealizer(o, p).order, p);
}

struct LocalReport {
  Integer p;
  ResidualType residual;
  bool gorenstein = false;
  bool bass = false;
  bool basic_structural = false;              // no decomposition O = Z + pJ
  std::optional<bool> basic_bruteforce;       // absent beyond the brute-force capacity
  std::optional<unsigned> rad_two_gen_dim;    // local rings only
  std::optional<QuatLattice> eichler;
  std::vector<ChainStep> chain;
  std::optional<SuperorderWitness> superorder;
  bool oracle_agreement = true;
  std::vector<std::string> disagreements;
};

inline LocalReport analyze_local(const GoodBasisOrder& o, const Integer& p) {
  std::int64_t pp = small_prime(p);
  LocalReport r;
  r.p = p;
  FpSubspace radp = radical_mod_p(o, pp);
  r.residual = residual_type(o, radp);
  r.gorenstein = is_gorenstein_local(o, p);
  r.chain = idealizer_chain(o, p);
  if (r.residual != ResidualType::ResiduallyRamified) {
    r.bass = true;
  } else if (!r.gorenstein) {
    r.bass = false;
  } else {
    GoodBasisOrder nat = r.chain.size() > 1 ? r.chain[1].order : radical_idealizer(o, radical_lattice(o, radp)).order;
    r.bass = is_gorenstein_local(nat, p);
  }
  r.eichler = eichler_decomposition(o, p);
  r.basic_structural = !r.eichler.has_value();
  if (pp <= kBasicBruteForceMaxPrime) r.basic_bruteforce = is_basic_bruteforce(o, p);
  if (is_local_ring(r.residual)) r.rad_two_gen_dim = two_generation_dim(o, p);

  auto disagree = [&](const std::string& what) {
    r.oracle_agreement = false;
    r.disagreements.push_back(what + " for " + o.form().to_string() + " at p=" + p.str());
  };
  if (r.basic_structural != r.bass) disagree("structural basic != bass");
  if (r.basic_bruteforce && *r.basic_bruteforce != r.bass) disagree("brute-force basic != bass");
  if (r.rad_two_gen_dim && (*r.rad_two_gen_dim <= 2) != r.bass) disagree("two-generation != bass");
  if (r.gorenstein && r.residual == ResidualType::ResiduallyRamified && !r.basic_structural)
    r.superorder = superorder_witness(o, p);
  return r;
}

}  // namespace qorder
