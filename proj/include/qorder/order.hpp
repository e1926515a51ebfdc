#pragma once

// Quaternion orders presented by a good basis 1, i, j, k:
//
//   i^2 = u i - bc     jk = a(u - i)
//   j^2 = v j - ac     ki = b(v - j)
//   k^2 = w k - ab     ij = c(w - k)
//
// The remaining products follow from conj(xy) = conj(y) conj(x):
//
//   ji = -uv + v i + u j + c k
//   kj = -vw + a i + w j + v k
//   ik = -uw + w i + b j + u k

#include "qorder/arith.hpp"
#include "qorder/lattice.hpp"
#include "qorder/ternary_form.hpp"

#include <array>
#include <cstddef>
#include <memory>

namespace qorder {

// Coordinates (t, x, y, z) of t + x i + y j + z k.
struct QuatElement {
  Vec4Q coords{};

  static QuatElement scalar(const Rational& t) { return {{t, 0, 0, 0}}; }
  static QuatElement basis(std::size_t n) {
    QuatElement e;
    e.coords[n] = 1;
    return e;
  }
  const Rational& operator[](std::size_t n) const { return coords[n]; }
  Rational& operator[](std::size_t n) { return coords[n]; }

  friend QuatElement operator+(QuatElement l, const QuatElement& r) {
    for (std::size_t n = 0; n < 4; ++n) l.coords[n] += r.coords[n];
    return l;
  }
  friend QuatElement operator-(QuatElement l, const QuatElement& r) {
    for (std::size_t n = 0; n < 4; ++n) l.coords[n] -= r.coords[n];
    return l;
  }
  friend QuatElement operator*(const Rational& s, QuatElement e) {
    for (auto& x : e.coords) x *= s;
    return e;
  }
  friend bool operator==(const QuatElement&, const QuatElement&) = default;
};

// Structure constants: table[m][n] = coordinates of e_m e_n.
using StructureTable = std::array<std::array<Vec4Z, 4>, 4>;

inline StructureTable structure_table(const TernaryForm& q) {
  const auto& [a, b, c, u, v, w] = q.coefficients();
  StructureTable t{};
  for (std::size_t n = 0; n < 4; ++n) {
    t[0][n] = {0, 0, 0, 0};
    t[0][n][n] = 1;
    t[n][0] = t[0][n];
  }
  t[1][1] = {-b * c, u, 0, 0};
  t[2][2] = {-a * c, 0, v, 0};
  t[3][3] = {-a * b, 0, 0, w};
  t[2][3] = {a * u, -a, 0, 0};
  t[3][1] = {b * v, 0, -b, 0};
  t[1][2] = {c * w, 0, 0, -c};
  t[2][1] = {-u * v, v, u, c};
  t[3][2] = {-v * w, a, w, v};
  t[1][3] = {-u * w, w, b, u};
  return t;
}

class GoodBasisOrder {
 public:
  explicit GoodBasisOrder(TernaryForm form)
      : d_(std::make_shared<const Data>(Data{form, structure_table(form)})) {}

  const TernaryForm& form() const { return d_->form; }
  const StructureTable& table() const { return d_->table; }

  friend bool operator==(const GoodBasisOrder& l, const GoodBasisOrder& r) {
    return l.d_ == r.d_ || l.form() == r.form();
  }

 private:
  struct Data {
    TernaryForm form;
    StructureTable table;
  };
  std::shared_ptr<const Data> d_;
};

template <class T>
std::array<T, 4> multiply_coords(const StructureTable& t, const std::array<T, 4>& x, const std::array<T, 4>& y) {
  std::array<T, 4> out{};
  for (std::size_t m = 0; m < 4; ++m) {
    if (x[m] == 0) continue;
    for (std::size_t n = 0; n < 4; ++n) {
      if (y[n] == 0) continue;
      T s = x[m] * y[n];
      for (std::size_t q = 0; q < 4; ++q)
        if (t[m][n][q] != 0) out[q] += s * t[m][n][q];
    }
  }
  return out;
}

inline QuatElement multiply(const GoodBasisOrder& o, const QuatElement& x, const QuatElement& y) {
  return {multiply_coords(o.table(), x.coords, y.coords)};
}

inline Vec4Z multiply(const GoodBasisOrder& o, const Vec4Z& x, const Vec4Z& y) {
  return multiply_coords(o.table(), x, y);
}

template <class T>
T trd_coords(const TernaryForm& q, const std::array<T, 4>& x) {
  return 2 * x[0] + q.u() * x[1] + q.v() * x[2] + q.w() * x[3];
}

// Norm on the span of i, j, k.
template <class T>
T nrd0_coords(const TernaryForm& q, const T& x, const T& y, const T& z) {
  const auto& [a, b, c, u, v, w] = q.coefficients();
  return b * c * x * x + a * c * y * y + a * b * z * z + (u * v - c * w) * x * y + (u * w - b * v) * x * z +
         (v * w - a * u) * y * z;
}

template <class T>
T nrd_coords(const TernaryForm& q, const std::array<T, 4>& x) {
  T t0 = q.u() * x[1] + q.v() * x[2] + q.w() * x[3];
  return x[0] * x[0] + x[0] * t0 + nrd0_coords<T>(q, x[1], x[2], x[3]);
}

inline Rational trd(const GoodBasisOrder& o, const QuatElement& x) { return trd_coords(o.form(), x.coords); }
inline Rational nrd(const GoodBasisOrder& o, const QuatElement& x) { return nrd_coords(o.form(), x.coords); }

inline QuatElement conj(const GoodBasisOrder& o, const QuatElement& x) {
  return QuatElement::scalar(trd(o, x)) - x;
}

// trd^2 - 4 nrd; independent of the scalar part.
inline Rational elem_disc(const GoodBasisOrder& o, const QuatElement& x) {
  Rational t = trd(o, x);
  return t * t - 4 * nrd(o, x);
}

inline bool is_associative(const GoodBasisOrder& o) {
  const auto& t = o.table();
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n)
      for (std::size_t r = 0; r < 4; ++r) {
        Vec4Z er{};
        er[r] = 1;
        Vec4Z em{};
        em[m] = 1;
        if (multiply_coords(t, t[m][n], er) != multiply_coords(t, em, t[n][r])) return false;
      }
  return true;
}

// Even Clifford order of Q with good basis i = e2e3, j = e3e1, k = e1e2.
inline GoodBasisOrder clifford_order(const TernaryForm& q) {
  GoodBasisOrder o(q);
  if (!is_associative(o)) throw InternalError("multiplication table is not associative for " + q.to_string());
  return o;
}

inline TernaryForm order_form(const GoodBasisOrder& o) { return o.form(); }

struct GramDiscriminant {
  std::array<std::array<Integer, 4>, 4> gram;
  Integer discrd;  // positive generator of the reduced discriminant
};

// Gram matrix of the trace pairing trd(e_m e_n) on 1, i, j, k. Its
// determinant is minus the square of the reduced discriminant.
inline GramDiscriminant gram_and_discrd(const GoodBasisOrder& o) {
  GramDiscriminant out;
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) out.gram[m][n] = trd_coords(o.form(), o.table()[m][n]);
  Integer det = abs(determinant<4>(out.gram));
  Integer root = boost::multiprecision::sqrt(det);
  if (root * root != det) throw InternalError("Gram determinant is not a perfect square for " + o.form().to_string());
  out.discrd = root;
  return out;
}

// Reduced discriminant read off the form: |half_discriminant|.
inline Integer discrd(const GoodBasisOrder& o) { return abs(half_discriminant(o.form())); }

}  // namespace qorder
