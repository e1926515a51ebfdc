#pragma once

// Jacobson radical of a quaternion order at a prime p.
//
// rad O is the preimage of rad(O/pO). The radical of the residue algebra is
// computed with the generalized trace functionals of Friedl and Ronyai, which
// remain valid in small characteristic:
//
//   g_i(a) = Tr(L~^{p^i}) / p^i  mod p,   L~ an integral lift of left mult. by a
//   I_{-1} = A,  I_i = { x in I_{i-1} : g_i(x y) = 0 for all y in A }
//
// and rad A = I_l with l = floor(log_p 4). For small p an exhaustive oracle
// (x lies in the radical iff y x is nilpotent for every y) must agree.

#include "qorder/fp_algebra.hpp"
#include "qorder/quat_lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qorder {

inline constexpr std::int64_t kRadicalOracleMaxPrime = 7;
inline constexpr std::int64_t kRadicalBruteForceMaxPrime = 13;

namespace detail {

using Mat4I = std::array<std::array<std::int64_t, 4>, 4>;

inline Mat4I mat_mul_mod(const Mat4I& a, const Mat4I& b, std::int64_t m) {
  Mat4I out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 4; ++k) s += a[r][k] * b[k][c] % m;
      out[r][c] = mod(s, m);
    }
  return out;
}

// Solves sum_j k_j cols[j] = rhs over F_p for 4 independent columns.
inline std::array<std::int64_t, 4> solve_mod(const std::array<FpVec, 4>& cols, const FpVec& rhs, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> aug(4, std::vector<std::int64_t>(5));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t j = 0; j < 4; ++j) aug[r][j] = mod(cols[j][r], p);
    aug[r][4] = mod(-rhs[r], p);
  }
  auto ker = kernel_mod(aug, 5, p);
  for (const auto& v : ker)
    if (v[4] == 1) return {v[0], v[1], v[2], v[3]};
  throw InternalError("residue system has no solution");
}

}  // namespace detail

inline std::int64_t small_prime(const Integer& p) {
  require_prime(p);
  return to_i64(p);
}

inline FpSubspace radical_mod_p_trace(const GoodBasisOrder& o, std::int64_t p) {
  unsigned levels = 0;
  for (std::int64_t pw = p; pw <= 4; pw *= p) ++levels;
  std::vector<FpVec> basis;
  for (std::size_t n = 0; n < 4; ++n) {
    FpVec e{0, 0, 0, 0};
    e[n] = 1;
    basis.push_back(e);
  }
  std::int64_t pi = 1;  // p^i
  for (unsigned i = 0; i <= levels && !basis.empty(); ++i, pi *= p) {
    std::int64_t modulus = pi * p;
    FpAlgebra alg(o, modulus);
    std::vector<std::vector<std::int64_t>> rows(4, std::vector<std::int64_t>(basis.size()));
    for (std::size_t s = 0; s < basis.size(); ++s)
      for (std::size_t y = 0; y < 4; ++y) {
        FpVec ey{0, 0, 0, 0};
        ey[y] = 1;
        detail::Mat4I l = alg.left_matrix(alg.mul(basis[s], ey));
        detail::Mat4I pw = l;
        for (std::int64_t e = 1; e < pi; ++e) pw = detail::mat_mul_mod(pw, l, modulus);
        std::int64_t tr = mod(pw[0][0] + pw[1][1] + pw[2][2] + pw[3][3], modulus);
        if (tr % pi != 0) throw InternalError("generalized trace is not divisible by p^i");
        rows[y][s] = tr / pi;
      }
    std::vector<FpVec> next;
    for (const auto& c : kernel_mod(rows, basis.size(), p)) {
      FpVec v{0, 0, 0, 0};
      for (std::size_t s = 0; s < basis.size(); ++s)
        for (std::size_t q = 0; q < 4; ++q) v[q] = mod(v[q] + c[s] * basis[s][q], p);
      next.push_back(v);
    }
    basis = FpSubspace(p, next).basis();
  }
  return FpSubspace(p, basis);
}

// Exhaustive oracle over all p^8 pairs (x, y).
inline FpSubspace radical_mod_p_bruteforce(const GoodBasisOrder& o, std::int64_t p) {
  if (p > kRadicalBruteForceMaxPrime) throw CapacityError("brute-force radical limited to p <= 13");
  FpAlgebra alg(o, p);
  std::vector<FpVec> all;
  for_each_fp_vector(p, [&](const FpVec& v) { all.push_back(v); });
  std::vector<FpVec> members;
  for (const auto& x : all) {
    bool nil = true;
    for (const auto& y : all) {
      FpVec z = alg.mul(y, x);
      FpVec z2 = alg.mul(z, z);
      if (!FpSubspace::is_zero(alg.mul(z2, z2))) {
        nil = false;
        break;
      }
    }
    if (nil) members.push_back(x);
  }
  FpSubspace span(p, members);
  std::size_t expected = 1;
  for (std::size_t d = 0; d < span.dim(); ++d) expected *= static_cast<std::size_t>(p);
  if (members.size() != expected) throw InternalError("brute-force radical is not a subspace");
  return span;
}

// O/rad O presented as F_p[x]/(x^2 - s x + n) when it is 2-dimensional.
struct QuadraticQuotient {
  FpVec generator;
  std::int64_t s;
  std::int64_t n;
};

inline std::optional<QuadraticQuotient> quadratic_quotient(const GoodBasisOrder& o, const FpSubspace& rad) {
  std::int64_t p = rad.prime();
  if (rad.dim() != 2) return std::nullopt;
  FpSubspace with_one = rad;
  with_one.insert({1, 0, 0, 0});
  FpVec x{};
  bool found = false;
  for (std::size_t m = 1; m < 4 && !found; ++m) {
    FpVec e{0, 0, 0, 0};
    e[m] = 1;
    if (!with_one.contains(e)) {
      x = e;
      found = true;
    }
  }
  if (!found) throw InternalError("no generator for 2-dimensional residue algebra");
  FpAlgebra alg(o, p);
  FpVec x2 = alg.mul(x, x);
  std::array<FpVec, 4> cols{FpVec{1, 0, 0, 0}, x, rad.basis()[0], rad.basis()[1]};
  auto k = detail::solve_mod(cols, x2, p);
  // x^2 = k0 + k1 x (mod rad)  =>  s = k1, n = -k0.
  return QuadraticQuotient{x, k[1], mod(-k[0], p)};
}

// Postconditions of the radical: two-sided ideal, nilpotent of index <= 4,
// semisimple quotient.
inline void check_radical(const GoodBasisOrder& o, const FpSubspace& rad) {
  std::int64_t p = rad.prime();
  FpAlgebra alg(o, p);
  for (const auto& b : rad.basis())
    for (std::size_t y = 0; y < 4; ++y) {
      FpVec e{0, 0, 0, 0};
      e[y] = 1;
      if (!rad.contains(alg.mul(b, e)) || !rad.contains(alg.mul(e, b)))
        throw InternalError("radical is not a two-sided ideal");
    }
  FpSubspace power = rad;
  for (int k = 1; k < 4; ++k) {
    FpSubspace next(p);
    for (const auto& x : power.basis())
      for (const auto& y : rad.basis()) next.insert(alg.mul(x, y));
    power = next;
  }
  if (power.dim() != 0) throw InternalError("radical is not nilpotent modulo p");
  std::size_t q = 4 - rad.dim();
  bool p_divides = discrd(o) % p == 0;
  if ((q == 4) == p_divides) throw InternalError("residue algebra semisimplicity disagrees with the discriminant");
  if (q == 3 || q == 0) throw InternalError("impossible residue algebra dimension");
  if (q == 2) {
    auto quo = quadratic_quotient(o, rad);
    bool squarefree = (p == 2) ? quo->s % 2 != 0 : mod(quo->s * quo->s - 4 * quo->n, p) != 0;
    if (!squarefree) throw InternalError("residue algebra has nilpotents");
  }
}

inline FpSubspace radical_mod_p(const GoodBasisOrder& o, std::int64_t p) {
  FpSubspace rad = radical_mod_p_trace(o, p);
  if (p <= kRadicalOracleMaxPrime && !(radical_mod_p_bruteforce(o, p) == rad))
    throw InternalError("trace radical disagrees with brute force for " + o.form().to_string() + " at p=" +
                        std::to_string(p));
  check_radical(o, rad);
  return rad;
}

inline QuatLattice radical_lattice(const GoodBasisOrder& o, const FpSubspace& rad) {
  std::int64_t p = rad.prime();
  std::vector<Vec4Z> rows;
  for (std::size_t n = 0; n < 4; ++n) {
    Vec4Z r{0, 0, 0, 0};
    r[n] = p;
    rows.push_back(r);
  }
  for (const auto& b : rad.basis()) rows.push_back({b[0], b[1], b[2], b[3]});
  return {o, canonicalize_integer(1, std::move(rows))};
}

// rad O at p, as a lattice in the coordinates of O.
inline QuatLattice radical(const GoodBasisOrder& o, const Integer& p) {
  std::int64_t pp = small_prime(p);
  return radical_lattice(o, radical_mod_p(o, pp));
}

}  // namespace qorder
