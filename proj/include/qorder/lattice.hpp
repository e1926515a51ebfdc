#pragma once

// Full-rank lattices in Q^4 in a canonical Hermite normal form.
//
// A lattice L is stored as (d, H) where d > 0 is the least common denominator
// of L (the smallest d with dL contained in Z^4) and H is the unique
// lower-triangular Hermite basis of dL:
//
//   H[r][c] = 0 for c > r,   H[r][r] > 0,   0 <= H[r][c] < H[c][c] for c < r.
//
// Row 0 therefore spans L intersected with the first coordinate axis, which
// for quaternion orders is Z·1. Two generator sets span the same lattice iff
// their canonical forms compare equal.

#include "qorder/arith.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace qorder {

using Vec4Z = std::array<Integer, 4>;
using Vec4Q = std::array<Rational, 4>;
using Mat4Z = std::array<Vec4Z, 4>;
using Mat4Q = std::array<Vec4Q, 4>;

inline Mat4Q identity4() {
  Mat4Q m{};
  for (std::size_t r = 0; r < 4; ++r) m[r][r] = 1;
  return m;
}

inline Mat4Q transpose(const Mat4Q& m) {
  Mat4Q t;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) t[c][r] = m[r][c];
  return t;
}

inline Mat4Q multiply(const Mat4Q& a, const Mat4Q& b) {
  Mat4Q out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) {
      if (a[r][k] == 0) continue;
      for (std::size_t c = 0; c < 4; ++c) out[r][c] += a[r][k] * b[k][c];
    }
  return out;
}

// Row vector times matrix.
inline Vec4Q row_times(const Vec4Q& v, const Mat4Q& m) {
  Vec4Q out{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (v[k] == 0) continue;
    for (std::size_t c = 0; c < 4; ++c) out[c] += v[k] * m[k][c];
  }
  return out;
}

// Gaussian elimination with first-nonzero pivoting (deterministic).
template <std::size_t N>
Rational determinant(std::array<std::array<Rational, N>, N> m) {
  Rational det = 1;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    while (piv < N && m[piv][c] == 0) ++piv;
    if (piv == N) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < N; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < N; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Fraction-free (Bareiss) determinant for integer matrices.
template <std::size_t N>
Integer determinant(std::array<std::array<Integer, N>, N> m) {
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < N && m[piv][k] == 0) ++piv;
      if (piv == N) return 0;
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i)
      for (std::size_t j = k + 1; j < N; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[N - 1][N - 1];
}

template <std::size_t N>
std::array<std::array<Rational, N>, N> inverse(std::array<std::array<Rational, N>, N> m) {
  std::array<std::array<Rational, N>, N> inv{};
  for (std::size_t r = 0; r < N; ++r) inv[r][r] = 1;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    while (piv < N && m[piv][c] == 0) ++piv;
    if (piv == N) throw InputError("singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    Rational s = 1 / m[c][c];
    for (std::size_t k = 0; k < N; ++k) {
      m[c][k] *= s;
      inv[c][k] *= s;
    }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < N; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

class CanonicalLatticeBasis {
 public:
  const Integer& denominator() const { return den_; }
  const Mat4Z& numerators() const { return hnf_; }

  Vec4Q row(std::size_t r) const {
    Vec4Q out;
    for (std::size_t c = 0; c < 4; ++c) out[c] = Rational(hnf_[r][c], den_);
    return out;
  }
  Mat4Q rows() const {
    Mat4Q m;
    for (std::size_t r = 0; r < 4; ++r) m[r] = row(r);
    return m;
  }

  // Covolume (absolute determinant of the basis).
  Rational covolume() const {
    Integer d = 1;
    for (std::size_t r = 0; r < 4; ++r) d *= hnf_[r][r];
    return Rational(d, den_ * den_ * den_ * den_);
  }

  // Rational coordinates of v with respect to the basis rows.
  Vec4Q coordinates(const Vec4Q& v) const {
    Vec4Q target, c{};
    for (std::size_t k = 0; k < 4; ++k) target[k] = v[k] * den_;
    for (std::size_t k = 4; k-- > 0;) {
      Rational acc = target[k];
      for (std::size_t r = k + 1; r < 4; ++r) acc -= c[r] * hnf_[r][k];
      c[k] = acc / hnf_[k][k];
    }
    return c;
  }

  bool contains(const Vec4Q& v) const {
    for (const auto& c : coordinates(v))
      if (!is_integer(c)) return false;
    return true;
  }

  bool contains(const CanonicalLatticeBasis& other) const {
    for (std::size_t r = 0; r < 4; ++r)
      if (!contains(other.row(r))) return false;
    return true;
  }

  friend bool operator==(const CanonicalLatticeBasis&, const CanonicalLatticeBasis&) = default;

 private:
  friend CanonicalLatticeBasis canonicalize_integer(const Integer&, std::vector<Vec4Z>);
  Integer den_ = 1;
  Mat4Z hnf_{};
};

// Canonical basis of the lattice spanned by rows/den (rows integral).
inline CanonicalLatticeBasis canonicalize_integer(const Integer& den, std::vector<Vec4Z> rows) {
  if (den <= 0) throw InputError("lattice denominator must be positive");
  Mat4Z h{};
  std::erase_if(rows, [](const Vec4Z& r) { return r[0] == 0 && r[1] == 0 && r[2] == 0 && r[3] == 0; });
  for (std::size_t c = 4; c-- > 0;) {
    // Euclid on column c across the active rows.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      if (best == rows.size()) throw DegenerateError("lattice has rank < 4");
      bool reduced_any = false;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == best || rows[r][c] == 0) continue;
        Integer q = rows[r][c] / rows[best][c];
        for (std::size_t k = 0; k <= c; ++k) rows[r][k] -= q * rows[best][k];
        reduced_any = true;
      }
      bool single = true;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != best && rows[r][c] != 0) single = false;
      if (single) {
        Vec4Z piv = rows[best];
        if (piv[c] < 0)
          for (auto& x : piv) x = -x;
        h[c] = std::move(piv);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        std::erase_if(rows, [](const Vec4Z& r) { return r[0] == 0 && r[1] == 0 && r[2] == 0 && r[3] == 0; });
        break;
      }
      if (!reduced_any) throw InternalError("HNF elimination stalled");
    }
  }
  for (std::size_t r = 1; r < 4; ++r)
    for (std::size_t c = r; c-- > 0;) {
      Integer q = floor_div(h[r][c], h[c][c]);
      if (q == 0) continue;
      for (std::size_t k = 0; k <= c; ++k) h[r][k] -= q * h[c][k];
    }
  Integer g = den;
  for (const auto& row : h)
    for (const auto& x : row) g = gcd(g, x);
  CanonicalLatticeBasis out;
  out.den_ = den / g;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out.hnf_[r][c] = h[r][c] / g;
  return out;
}

inline CanonicalLatticeBasis canonicalize(std::span<const Vec4Q> generators) {
  Integer den = 1;
  for (const auto& g : generators)
    for (const auto& x : g) den = lcm(den, denominator(x));
  std::vector<Vec4Z> rows;
  rows.reserve(generators.size());
  for (const auto& g : generators) {
    Vec4Z r;
    for (std::size_t c = 0; c < 4; ++c) r[c] = numerator(g[c] * den);
    rows.push_back(std::move(r));
  }
  return canonicalize_integer(den, std::move(rows));
}

inline CanonicalLatticeBasis canonicalize(const Mat4Q& rows) {
  return canonicalize(std::span<const Vec4Q>(rows.data(), rows.size()));
}

// {x in Q^4 : a·x in Z for every constraint a}: the dual of the Z-span of the
// constraints. The constraints must span Q^4.
inline CanonicalLatticeBasis dual_lattice(std::span<const Vec4Q> constraints) {
  Mat4Q m = canonicalize(constraints).rows();
  return canonicalize(transpose(inverse(m)));
}

inline CanonicalLatticeBasis scale(const CanonicalLatticeBasis& l, const Rational& lambda) {
  if (lambda == 0) throw DegenerateError("scaling a lattice by zero");
  Mat4Q rows = l.rows();
  for (auto& r : rows)
    for (auto& x : r) x *= lambda;
  return canonicalize(rows);
}

inline CanonicalLatticeBasis sum(const CanonicalLatticeBasis& a, const CanonicalLatticeBasis& b) {
  std::vector<Vec4Q> gens;
  for (std::size_t r = 0; r < 4; ++r) {
    gens.push_back(a.row(r));
    gens.push_back(b.row(r));
  }
  return canonicalize(gens);
}

// [outer : inner] as a rational (generalized index).
inline Rational index(const CanonicalLatticeBasis& outer, const CanonicalLatticeBasis& inner) {
  return inner.covolume() / outer.covolume();
}

}  // namespace qorder
