#pragma once

// Integral ternary quadratic forms
//   Q(x,y,z) = a x^2 + b y^2 + c z^2 + u yz + v xz + w xy
// together with changes of variables and the p-local normal forms used to
// analyse Gorenstein orders.

#include "qorder/arith.hpp"
#include "qorder/lattice.hpp"

#include <array>
#include <cstddef>
#include <limits>
#include <string>

namespace qorder {

using Mat3Z = std::array<std::array<Integer, 3>, 3>;
using Mat3Q = std::array<std::array<Rational, 3>, 3>;

// Change of variables U: the transformed form is x |-> Q(U x); column n of U
// holds the new n-th basis vector in old coordinates.
using BasisChange3 = Mat3Q;

inline Mat3Z identity3z() {
  Mat3Z m{};
  for (std::size_t r = 0; r < 3; ++r) m[r][r] = 1;
  return m;
}

inline Mat3Z multiply(const Mat3Z& a, const Mat3Z& b) {
  Mat3Z out{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t c = 0; c < 3; ++c) out[r][c] += a[r][k] * b[k][c];
  return out;
}

inline Mat3Q to_rational(const Mat3Z& m) {
  Mat3Q out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out[r][c] = m[r][c];
  return out;
}

// Index order of coefficients: a, b, c, u, v, w.
using FormCoefficients = std::array<Integer, 6>;

class TernaryForm {
 public:
  // Rejects degenerate forms (half-discriminant zero).
  explicit TernaryForm(FormCoefficients coeffs) : k_(std::move(coeffs)) {
    if (half_discriminant_of(k_) == 0) throw DegenerateError("degenerate ternary form " + to_string());
  }
  TernaryForm(Integer a, Integer b, Integer c, Integer u, Integer v, Integer w)
      : TernaryForm(FormCoefficients{std::move(a), std::move(b), std::move(c), std::move(u), std::move(v),
                                     std::move(w)}) {}

  const Integer& a() const { return k_[0]; }
  const Integer& b() const { return k_[1]; }
  const Integer& c() const { return k_[2]; }
  const Integer& u() const { return k_[3]; }
  const Integer& v() const { return k_[4]; }
  const Integer& w() const { return k_[5]; }
  const FormCoefficients& coefficients() const { return k_; }

  // 4abc + uvw - au^2 - bv^2 - cw^2, i.e. half the determinant of the
  // bilinear Gram matrix.
  static Integer half_discriminant_of(const FormCoefficients& k) {
    const auto& [a, b, c, u, v, w] = k;
    return 4 * a * b * c + u * v * w - a * u * u - b * v * v - c * w * w;
  }

  Integer evaluate(const Integer& x, const Integer& y, const Integer& z) const {
    return a() * x * x + b() * y * y + c() * z * z + u() * y * z + v() * x * z + w() * x * y;
  }

  // Bilinear Gram matrix B(e_i, e_j) = Q(e_i + e_j) - Q(e_i) - Q(e_j).
  Mat3Z bilinear_gram() const {
    return {{{2 * a(), w(), v()}, {w(), 2 * b(), u()}, {v(), u(), 2 * c()}}};
  }

  static TernaryForm from_bilinear_gram(const Mat3Z& g) {
    return TernaryForm(g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[1][2], g[0][2], g[0][1]);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < 6; ++i) s += (i ? "," : "") + k_[i].str();
    return s + "]";
  }

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
  friend auto operator<=>(const TernaryForm& l, const TernaryForm& r) { return l.k_ <=> r.k_; }

 private:
  FormCoefficients k_;
};

inline Integer half_discriminant(const TernaryForm& q) { return TernaryForm::half_discriminant_of(q.coefficients()); }

inline Integer form_content(const TernaryForm& q) { return content(q.coefficients()); }

inline bool is_primitive(const TernaryForm& q) { return form_content(q) == 1; }

inline Rational determinant(const Mat3Q& m) { return determinant<3>(m); }

// Q o U, computed as U^T G U on the bilinear Gram matrix.
inline TernaryForm transform(const TernaryForm& q, const BasisChange3& u) {
  if (determinant(u) == 0) throw InputError("singular change of basis");
  Mat3Z g = q.bilinear_gram();
  std::array<std::array<Rational, 3>, 3> gu{}, out{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < 3; ++k) gu[r][c] += Rational(g[r][k]) * u[k][c];
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < 3; ++k) out[r][c] += u[k][r] * gu[k][c];
  Mat3Z gz;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      if (!is_integer(out[r][c]) || (r == c && numerator(out[r][c]) % 2 != 0))
        throw InputError("change of basis does not preserve integrality of the form");
      gz[r][c] = numerator(out[r][c]);
    }
  return TernaryForm::from_bilinear_gram(gz);
}

namespace detail {

constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();

// p-adic valuation without the primality check; zero maps to kInfinite.
inline unsigned vp(Integer n, const Integer& p) {
  if (n == 0) return kInfinite;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline Integer pow(const Integer& p, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

inline bool is_unit(const Integer& x, const Integer& p) { return x % p != 0; }

// Working state: bilinear Gram matrix and accumulated change of variables.
struct FormState {
  Mat3Z g;
  Mat3Z u;

  void apply(const Mat3Z& s) {
    Mat3Z gs{}, out{};
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 3; ++k) gs[r][c] += g[r][k] * s[k][c];
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 3; ++k) out[r][c] += s[k][r] * gs[k][c];
    g = out;
    u = multiply(u, s);
  }

  // New basis: columns listed in `order`.
  void permute(const std::array<std::size_t, 3>& order) {
    Mat3Z s{};
    for (std::size_t n = 0; n < 3; ++n) s[order[n]][n] = 1;
    apply(s);
  }

  // e_target <- e_target + e_source.
  void shear(std::size_t target, std::size_t source) {
    Mat3Z s = identity3z();
    s[source][target] = 1;
    apply(s);
  }

  // Clears B(e_pivot, e_j) for j in others; requires v(G_pp) <= v(G_pj).
  // The substitution has determinant a power of G_pp / p^k, a p-unit; entries
  // that are already zero are left alone.
  template <std::size_t N>
  void eliminate(std::size_t pivot, const std::array<std::size_t, N>& others, const Integer& p) {
    unsigned k = vp(g[pivot][pivot], p);
    Integer pk = pow(p, k);
    Integer unit = g[pivot][pivot] / pk;
    Mat3Z s = identity3z();
    for (std::size_t j : others) {
      if (g[pivot][j] == 0) continue;
      if (g[pivot][j] % pk != 0) throw InternalError("elimination pivot does not have minimal valuation");
      s[pivot][j] = -(g[pivot][j] / pk);
      s[j][j] = unit;
    }
    apply(s);
  }

  TernaryForm form() const { return TernaryForm::from_bilinear_gram(g); }
};

}  // namespace detail

struct LocalNormalForm {
  TernaryForm form;
  BasisChange3 change;  // integral, determinant a p-unit, form == transform(input, change)
};

// Splits Q over Z_(p) as a x^2 + (b y^2 + c z^2 + u yz); the binary part is
// diagonalised too when p is odd. The change of variables is integral with
// p-unit determinant and the output equals Q o U exactly (no rescaling).
inline LocalNormalForm local_normal_form(const TernaryForm& q, const Integer& p) {
  require_prime(p);
  using detail::vp;
  detail::FormState st{q.bilinear_gram(), identity3z()};
  const bool two = (p == 2);

  // Entry of minimal valuation; ties prefer diagonal entries, then lower index.
  std::size_t bi = 0, bj = 0;
  unsigned best = detail::kInfinite;
  for (std::size_t i = 0; i < 3; ++i) {
    unsigned e = vp(st.g[i][i], p);
    if (e < best) best = e, bi = bj = i;
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      unsigned e = vp(st.g[i][j], p);
      if (e < best) best = e, bi = i, bj = j;
    }
  if (best == detail::kInfinite) throw InternalError("zero form reached local normal form");

  std::size_t unary;
  if (bi == bj || !two) {
    if (bi != bj) {
      st.shear(bi, bj);
    }
    unary = bi;
    std::array<std::size_t, 2> others{};
    for (std::size_t t = 0, n = 0; t < 3; ++t)
      if (t != unary) others[n++] = t;
    st.eliminate(unary, others, p);
  } else {
    // p = 2 and a hyperbolic-type block (bi, bj) carries the minimum.
    std::size_t r = bi, s = bj, t = 3 - bi - bj;
    const auto& g = st.g;
    Integer det = g[r][r] * g[s][s] - g[r][s] * g[r][s];
    unsigned m = vp(g[r][s], p);
    Integer p2m = detail::pow(p, 2 * m);
    if (det % p2m != 0) throw InternalError("binary block valuation mismatch");
    Integer delta = det / p2m;
    Integer nr = g[s][s] * g[r][t] - g[r][s] * g[s][t];
    Integer ns = g[r][r] * g[s][t] - g[r][s] * g[r][t];
    if (nr % p2m != 0 || ns % p2m != 0) throw InternalError("binary block split is not p-integral");
    Mat3Z sub = identity3z();
    sub[r][r] = delta;
    sub[s][s] = delta;
    sub[t][t] = delta;
    sub[r][t] = -(nr / p2m);
    sub[s][t] = -(ns / p2m);
    st.apply(sub);
    unary = t;
  }
  std::array<std::size_t, 3> order{unary, 0, 0};
  for (std::size_t t = 0, n = 1; t < 3; ++t)
    if (t != unary) order[n++] = t;
  st.permute(order);

  if (!two) {
    unsigned eb = vp(st.g[1][1], p), ec = vp(st.g[2][2], p), eu = vp(st.g[1][2], p);
    if (eu != detail::kInfinite && eu < eb && eu < ec) {
      st.shear(1, 2);
      st.eliminate(1, std::array<std::size_t, 1>{2}, p);
    } else if (eb <= ec) {
      st.eliminate(1, std::array<std::size_t, 1>{2}, p);
    } else {
      st.eliminate(2, std::array<std::size_t, 1>{1}, p);
    }
  }
  TernaryForm out = st.form();
  if (out.v() != 0 || out.w() != 0 || (!two && out.u() != 0))
    throw InternalError("local normal form has unexpected shape " + out.to_string());
  return {out, to_rational(st.u)};
}

enum class NormalFormCase { I, II };

struct RamifiedNormalForm {
  TernaryForm form;
  BasisChange3 change;  // integral, p-unit determinant, form == transform(input, change)
  NormalFormCase which;
};

// Normal form for a Gorenstein, residually ramified, non-basic order at p:
// v = 0, p | u, p | w, p^2 | c and either
//   (i)  a a unit and p^2 | b, or
//   (ii) p^2 | a, b a unit and w = 0.
// Each constructive step re-checks the divisibility it relies on and throws
// HypothesisViolation when the input cannot satisfy the preconditions.
inline RamifiedNormalForm lemma35_normal_form(const TernaryForm& q, const Integer& p) {
  require_prime(p);
  if (form_content(q) % p == 0) throw HypothesisViolation("form is not p-primitive (order not Gorenstein)");
  const Integer p2 = p * p;
  auto unit = [&](const Integer& x) { return detail::is_unit(x, p); };
  auto violate = [&](const std::string& why) {
    throw HypothesisViolation(why + " for " + q.to_string() + " at p=" + p.str());
  };

  LocalNormalForm lnf = local_normal_form(q, p);
  detail::FormState st{lnf.form.bilinear_gram(), identity3z()};
  // Convert back to the accumulated integral change.
  Mat3Z u0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) u0[r][c] = numerator(lnf.change[r][c]);
  st.u = u0;

  auto A = [&] { return st.g[0][0] / 2; };
  auto B = [&] { return st.g[1][1] / 2; };
  auto C = [&] { return st.g[2][2] / 2; };
  auto U = [&] { return st.g[1][2]; };

  if (p != 2) {
    // Diagonal form; move a unit coefficient to the first slot.
    if (!unit(A())) {
      if (unit(B()))
        st.permute({1, 0, 2});
      else if (unit(C()))
        st.permute({2, 1, 0});
      else
        violate("no unit diagonal coefficient");
    }
    if (unit(B()) || unit(C())) violate("two unit diagonal coefficients: not residually ramified");
    if (B() % p2 != 0 || C() % p2 != 0) violate("p | b but p^2 does not divide b or c: order is basic");
  } else {
    if (U() % p != 0) violate("p does not divide u: order is basic");
    if (C() % p == 0) {
      // keep
    } else if (B() % p == 0) {
      st.permute({0, 2, 1});
    } else {
      // s^2 = -c b^{-1} mod p, found by exhaustive search over the residue field.
      Integer target = mod(-C() * inverse_mod(B(), p), p);
      std::optional<Integer> s;
      for (Integer t = 0; t < p && !s; ++t)
        if (mod(t * t - target, p) == 0) s = t;
      if (!s) violate("-c/b is not a square mod p");
      Mat3Z sub = identity3z();
      sub[1][2] = *s;  // e3 <- e3 + s e2
      st.apply(sub);
    }
    if (C() % p != 0) violate("could not make p divide c");
    if (C() % p2 != 0) violate("p | c but p^2 does not divide c: order is basic");
  }

  NormalFormCase which;
  if (A() % p == 0) {
    if (!unit(B())) violate("a and b both divisible by p");
    if (A() % p2 != 0) violate("p | a but p^2 does not divide a: order is basic");
    which = NormalFormCase::II;
  } else {
    if (B() % p != 0) {
      // s^2 = -b a^{-1} mod p; e2 <- e2 + s e1.
      Integer target = mod(-B() * inverse_mod(A(), p), p);
      std::optional<Integer> s;
      if (p == 2) {
        for (Integer t = 0; t < p && !s; ++t)
          if (mod(t * t - target, p) == 0) s = t;
      } else {
        s = sqrt_mod(target, p);
      }
      if (!s) violate("-b/a is not a square mod p: not residually ramified");
      Mat3Z sub = identity3z();
      sub[0][1] = *s;
      st.apply(sub);
    }
    if (B() % p2 != 0) violate("p | b but p^2 does not divide b: order is basic");
    which = NormalFormCase::I;
  }
  TernaryForm out = st.form();
  bool ok = out.v() == 0 && out.u() % p == 0 && out.w() % p == 0 && out.c() % p2 == 0;
  if (which == NormalFormCase::I)
    ok = ok && unit(out.a()) && out.b() % p2 == 0;
  else
    ok = ok && out.a() % p2 == 0 && unit(out.b()) && out.w() == 0;
  if (!ok) violate("normal form predicates fail (" + out.to_string() + ")");
  return {out, to_rational(st.u), which};
}

}  // namespace qorder
