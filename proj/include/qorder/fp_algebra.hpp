#pragma once

// The 4-dimensional algebra O/pO over F_p, with small dense linear algebra.

#include "qorder/arith.hpp"
#include "qorder/order.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qorder {

using FpVec = std::array<std::int64_t, 4>;

// Reduced row echelon basis of a subspace of F_p^4.
class FpSubspace {
 public:
  explicit FpSubspace(std::int64_t p) : p_(p) {}
  FpSubspace(std::int64_t p, const std::vector<FpVec>& gens) : p_(p) {
    for (const auto& g : gens) insert(g);
  }

  std::int64_t prime() const { return p_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<FpVec>& basis() const { return basis_; }

  // Returns the residue of v after reduction by the basis.
  FpVec reduce(FpVec v) const {
    for (auto& x : v) x = mod(x, p_);
    for (std::size_t n = 0; n < basis_.size(); ++n) {
      std::int64_t f = v[pivots_[n]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < 4; ++c) v[c] = mod(v[c] - f * basis_[n][c], p_);
    }
    return v;
  }

  bool contains(const FpVec& v) const { return is_zero(reduce(v)); }

  // Adds v to the span; returns false if it was already inside.
  bool insert(const FpVec& v) {
    FpVec r = reduce(v);
    std::size_t piv = 0;
    while (piv < 4 && r[piv] == 0) ++piv;
    if (piv == 4) return false;
    std::int64_t inv = static_cast<std::int64_t>(inverse_mod(r[piv], p_));
    for (auto& x : r) x = mod(x * inv, p_);
    for (std::size_t n = 0; n < basis_.size(); ++n) {
      std::int64_t f = basis_[n][piv];
      if (f == 0) continue;
      for (std::size_t c = 0; c < 4; ++c) basis_[n][c] = mod(basis_[n][c] - f * r[c], p_);
    }
    // Keep rows ordered by pivot column so the basis is canonical.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), r);
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    return true;
  }

  friend bool operator==(const FpSubspace& l, const FpSubspace& r) { return l.p_ == r.p_ && l.basis_ == r.basis_; }

  static bool is_zero(const FpVec& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0; }

 private:
  static std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    return static_cast<std::int64_t>(qorder::inverse_mod(Integer(a), Integer(m)));
  }
  std::int64_t p_;
  std::vector<FpVec> basis_;
  std::vector<std::size_t> pivots_;
};

// Null space of the linear map F_p^cols -> F_p^rows given by `rows`.
inline std::vector<std::vector<std::int64_t>> kernel_mod(std::vector<std::vector<std::int64_t>> rows,
                                                         std::size_t cols, std::int64_t p) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    std::int64_t inv = static_cast<std::int64_t>(inverse_mod(Integer(mod(rows[r][c], p)), Integer(p)));
    for (auto& x : rows[r]) x = mod(x * inv, p);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r) continue;
      std::int64_t f = mod(rows[o][c], p);
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) rows[o][k] = mod(rows[o][k] - f * rows[r][k], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<std::int64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t n = 0; n < pivot_col.size(); ++n) v[pivot_col[n]] = mod(-rows[n][free], p);
    out.push_back(std::move(v));
  }
  return out;
}

// Structure constants of O reduced modulo a small modulus.
class FpAlgebra {
 public:
  FpAlgebra(const GoodBasisOrder& o, std::int64_t modulus) : m_(modulus) {
    if (modulus < 2 || modulus >= (std::int64_t{1} << 28))
      throw CapacityError("residue algebra modulus out of range: " + std::to_string(modulus));
    Integer mm(modulus);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c) t_[a][b][c] = static_cast<std::int64_t>(mod(o.table()[a][b][c], mm));
  }

  std::int64_t modulus() const { return m_; }

  FpVec mul(const FpVec& x, const FpVec& y) const {
    FpVec out{0, 0, 0, 0};
    for (std::size_t a = 0; a < 4; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < 4; ++b) {
        if (y[b] == 0) continue;
        std::int64_t s = (x[a] * y[b]) % m_;
        for (std::size_t c = 0; c < 4; ++c) out[c] += s * t_[a][b][c];
      }
    }
    for (auto& v : out) v = mod(v, m_);
    return out;
  }

  // Matrix of left multiplication by x: column n is x * e_n.
  std::array<std::array<std::int64_t, 4>, 4> left_matrix(const FpVec& x) const {
    std::array<std::array<std::int64_t, 4>, 4> l{};
    for (std::size_t n = 0; n < 4; ++n) {
      FpVec en{0, 0, 0, 0};
      en[n] = 1;
      FpVec col = mul(x, en);
      for (std::size_t q = 0; q < 4; ++q) l[q][n] = col[q];
    }
    return l;
  }

 private:
  std::int64_t m_;
  std::array<std::array<std::array<std::int64_t, 4>, 4>, 4> t_{};
};

// Calls f on every vector of F_p^4 in lexicographic order.
template <class F>
void for_each_fp_vector(std::int64_t p, F&& f) {
  FpVec v{0, 0, 0, 0};
  for (v[0] = 0; v[0] < p; ++v[0])
    for (v[1] = 0; v[1] < p; ++v[1])
      for (v[2] = 0; v[2] < p; ++v[2])
        for (v[3] = 0; v[3] < p; ++v[3]) f(v);
}

}  // namespace qorder
