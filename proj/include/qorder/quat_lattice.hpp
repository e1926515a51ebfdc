#pragma once

// Lattices inside the quaternion algebra of a reference good-basis order,
// stored canonically in the reference coordinates (t, x, y, z).

#include "qorder/lattice.hpp"
#include "qorder/order.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace qorder {

struct QuatLattice {
  GoodBasisOrder ambient;
  CanonicalLatticeBasis basis;

  QuatElement element(std::size_t r) const { return {basis.row(r)}; }
  bool contains(const QuatElement& x) const { return basis.contains(x.coords); }
  bool contains(const QuatLattice& other) const { return basis.contains(other.basis); }

  friend bool operator==(const QuatLattice& l, const QuatLattice& r) {
    return l.ambient == r.ambient && l.basis == r.basis;
  }
};

inline QuatLattice make_lattice(const GoodBasisOrder& ambient, std::span<const QuatElement> gens) {
  std::vector<Vec4Q> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(g.coords);
  return {ambient, canonicalize(rows)};
}

// The order itself, viewed as a lattice in its own coordinates.
inline QuatLattice as_lattice(const GoodBasisOrder& o) { return {o, canonicalize(identity4())}; }

inline void require_same_ambient(const QuatLattice& i, const QuatLattice& j) {
  if (!(i.ambient == j.ambient)) throw InputError("lattices live in different ambient orders");
}

inline QuatLattice lattice_sum(const QuatLattice& i, const QuatLattice& j) {
  require_same_ambient(i, j);
  return {i.ambient, sum(i.basis, j.basis)};
}

inline QuatLattice lattice_scale(const QuatLattice& i, const Rational& lambda) {
  return {i.ambient, scale(i.basis, lambda)};
}

// Lattice generated by all products xy with x in I, y in J.
inline QuatLattice lattice_product(const QuatLattice& i, const QuatLattice& j) {
  require_same_ambient(i, j);
  const auto& hi = i.basis.numerators();
  const auto& hj = j.basis.numerators();
  std::vector<Vec4Z> gens;
  gens.reserve(16);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) gens.push_back(multiply(i.ambient, hi[m], hj[n]));
  return {i.ambient, canonicalize_integer(i.basis.denominator() * j.basis.denominator(), std::move(gens))};
}

namespace detail {

// {x : x I in I} (left) or {x : I x in I} (right), as the dual of the span of
// the linear functionals x |-> (coordinate q of x*beta_n in the basis of I).
inline QuatLattice multiplier_order(const QuatLattice& lat, bool left) {
  const GoodBasisOrder& o = lat.ambient;
  std::array<std::array<Vec4Q, 4>, 4> prod;  // prod[m][n] = coords_I(e_m beta_n) or coords_I(beta_n e_m)
  for (std::size_t m = 0; m < 4; ++m) {
    QuatElement em = QuatElement::basis(m);
    for (std::size_t n = 0; n < 4; ++n) {
      QuatElement beta = lat.element(n);
      QuatElement p = left ? multiply(o, em, beta) : multiply(o, beta, em);
      prod[m][n] = lat.basis.coordinates(p.coords);
    }
  }
  std::vector<Vec4Q> constraints;
  constraints.reserve(16);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t q = 0; q < 4; ++q) {
      Vec4Q a;
      for (std::size_t m = 0; m < 4; ++m) a[m] = prod[m][n][q];
      constraints.push_back(a);
    }
  return {o, dual_lattice(constraints)};
}

}  // namespace detail

inline QuatLattice left_order(const QuatLattice& i) { return detail::multiplier_order(i, true); }
inline QuatLattice right_order(const QuatLattice& i) { return detail::multiplier_order(i, false); }

// Dual of I under the trace pairing: {x : trd(x I) in Z}.
inline QuatLattice codifferent(const QuatLattice& i) {
  std::vector<Vec4Q> constraints;
  for (std::size_t n = 0; n < 4; ++n) {
    QuatElement beta = i.element(n);
    Vec4Q a;
    for (std::size_t m = 0; m < 4; ++m) a[m] = trd(i.ambient, multiply(i.ambient, QuatElement::basis(m), beta));
    constraints.push_back(a);
  }
  return {i.ambient, dual_lattice(constraints)};
}

inline QuatLattice codifferent(const GoodBasisOrder& o) { return codifferent(as_lattice(o)); }

// Every element integral, via nrd(x+y) = nrd(x) + nrd(y) + trd(x conj(y)).
inline bool is_integral_lattice(const QuatLattice& lat) {
  const GoodBasisOrder& o = lat.ambient;
  std::array<QuatElement, 4> b;
  for (std::size_t n = 0; n < 4; ++n) b[n] = lat.element(n);
  for (std::size_t n = 0; n < 4; ++n) {
    if (!is_integer(trd(o, b[n])) || !is_integer(nrd(o, b[n]))) return false;
    for (std::size_t m = n + 1; m < 4; ++m)
      if (!is_integer(trd(o, multiply(o, b[n], conj(o, b[m]))))) return false;
  }
  return true;
}

inline bool is_order(const QuatLattice& lat) {
  if (!lat.contains(QuatElement::scalar(1))) return false;
  if (!lat.contains(lattice_product(lat, lat))) return false;
  return is_integral_lattice(lat);
}

// A good-basis presentation of an order lattice: rows of `transition` are
// 1, i, j, k of `order` in the ambient coordinates of the input lattice.
struct NormalizedOrder {
  GoodBasisOrder order;
  Mat4Q transition;
};

// The canonical basis of an order starts with 1 (row 0 spans L ∩ Q = Z).
// Translating the other three rows by integers makes jk, ki, ij land in
// Z + Zi, Z + Zj, Z + Zk; the translations are forced by those conditions.
// If the orientation is wrong no consistent translation exists and the first
// vector is negated. The result is verified against the full table.
inline NormalizedOrder normalize_good_basis(const QuatLattice& lat) {
  if (!is_order(lat)) throw InputError("lattice is not an order");
  const GoodBasisOrder& o = lat.ambient;
  if (lat.element(0) != QuatElement::scalar(1)) throw InternalError("canonical order basis does not start with 1");

  for (int sign : {1, -1}) {
    std::array<QuatElement, 4> f;
    f[0] = QuatElement::scalar(1);
    for (std::size_t n = 1; n < 4; ++n) f[n] = lat.element(n);
    f[1] = Rational(sign) * f[1];
    auto coords = [&](const QuatElement& x) {
      Vec4Q c = lat.basis.coordinates(x.coords);
      c[1] *= sign;
      return c;
    };
    auto prod = [&](std::size_t m, std::size_t n) { return coords(multiply(o, f[m], f[n])); };
    Vec4Q p23 = prod(2, 3), p31 = prod(3, 1), p12 = prod(1, 2);
    if (p31[3] != p12[2] || p23[3] != p12[1] || p23[2] != p31[1]) continue;
    std::array<Rational, 4> t{0, -p31[3], -p23[3], -p23[2]};
    Mat4Q trans;
    for (std::size_t n = 0; n < 4; ++n) {
      QuatElement g = f[n] + QuatElement::scalar(t[n]);
      trans[n] = g.coords;
    }
    Mat4Q inv = inverse(trans);
    auto new_coords = [&](const QuatElement& x) { return row_times(x.coords, inv); };
    auto g = [&](std::size_t n) { return QuatElement{trans[n]}; };
    Vec4Q q23 = new_coords(multiply(o, g(2), g(3)));
    Vec4Q q31 = new_coords(multiply(o, g(3), g(1)));
    Vec4Q q12 = new_coords(multiply(o, g(1), g(2)));
    Rational a = -q23[1], b = -q31[2], c = -q12[3];
    Rational u = trd(o, g(1)), v = trd(o, g(2)), w = trd(o, g(3));
    for (const auto& x : {a, b, c, u, v, w})
      if (!is_integer(x)) throw InternalError("good-basis constants are not integral");
    TernaryForm form(numerator(a), numerator(b), numerator(c), numerator(u), numerator(v), numerator(w));
    StructureTable expected = structure_table(form);
    bool ok = true;
    for (std::size_t m = 0; m < 4 && ok; ++m)
      for (std::size_t n = 0; n < 4 && ok; ++n) {
        Vec4Q got = new_coords(multiply(o, g(m), g(n)));
        for (std::size_t q = 0; q < 4; ++q)
          if (got[q] != Rational(expected[m][n][q])) ok = false;
      }
    if (ok) return {clifford_order(form), trans};
  }
  throw InternalError("good-basis normalization failed");
}

// Transition rows mapped into the coordinates of an outer ambient.
inline Mat4Q compose(const Mat4Q& inner_rows, const Mat4Q& outer_rows) { return multiply(inner_rows, outer_rows); }

inline QuatLattice lattice_from_rows(const GoodBasisOrder& ambient, const Mat4Q& rows) {
  return {ambient, canonicalize(rows)};
}

}  // namespace qorder
