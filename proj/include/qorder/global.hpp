#pragma once

// Global verdicts over Z by aggregating the local ones, plus a bounded search
// for integrally closed quadratic suborders Z[alpha].

#include "qorder/local.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace qorder {

inline const Integer kClassifyMaxDiscrd = Integer(1000000000000LL);

namespace detail {

inline bool squarefree(Integer n) {
  n = abs(n);
  if (n % 4 == 0) return false;
  for (Integer d = 3; d * d <= n; d += 2)
    if (n % (d * d) == 0) return false;
  return true;
}

}  // namespace detail

// d = 1 is Z x Z; other squares are never fundamental.
inline bool is_fundamental_discriminant(const Integer& d) {
  if (d == 1) return true;
  if (d == 0) return false;
  if (d > 0) {
    Integer r = boost::multiprecision::sqrt(d);
    if (r * r == d) return false;
  }
  Integer m4 = mod(d, Integer(4));
  if (m4 == 1) return detail::squarefree(d);
  if (m4 != 0) return false;
  Integer m = d / 4;
  Integer r = mod(m, Integer(4));
  return (r == 2 || r == 3) && detail::squarefree(m);
}

struct QuadraticWitness {
  QuatElement alpha;
  Integer d;
  unsigned height = 0;
};

struct WitnessSearch {
  unsigned height = 8;
  std::size_t count = 5;
  bool stop_at_first = false;
};

namespace detail {

// 0, 1, -1, 2, -2, ... so the positive representative of a shell comes first.
inline std::int64_t zigzag(std::int64_t n) { return n % 2 ? (n + 1) / 2 : -(n / 2); }

}  // namespace detail

// disc(t + beta) does not depend on t, so only (x, y, z) are enumerated and
// every witness is reported with t = 0 at minimal height; ties go to the
// first vector in the order 0, 1, -1, 2, ... per coordinate. Distinct d give
// nonisomorphic rings.
inline std::vector<QuadraticWitness> find_quadratic_witnesses(const GoodBasisOrder& o, const WitnessSearch& opt) {
  if (opt.height < 1) throw InputError("witness height must be at least 1");
  using I128 = __int128;
  std::array<I128, 6> k;
  for (std::size_t n = 0; n < 6; ++n) {
    const Integer& c = o.form().coefficients()[n];
    if (abs(c) > 1000000) throw CapacityError("witness search limited to coefficients of size <= 10^6");
    k[n] = static_cast<std::int64_t>(c);
  }
  if (opt.height > 100000) throw CapacityError("witness height limited to 10^5");
  const auto [a, b, c, u, v, w] = k;
  auto disc = [&](I128 x, I128 y, I128 z) {
    I128 t = u * x + v * y + w * z;
    I128 n = b * c * x * x + a * c * y * y + a * b * z * z + (u * v - c * w) * x * y + (u * w - b * v) * x * z +
             (v * w - a * u) * y * z;
    return t * t - 4 * n;
  };
  std::unordered_map<std::int64_t, bool> fundamental;
  std::unordered_map<std::int64_t, QuadraticWitness> best;
  std::vector<std::int64_t> order_found;
  auto visit = [&](std::int64_t x, std::int64_t y, std::int64_t z, unsigned h) -> bool {
    I128 d128 = disc(x, y, z);
    if (d128 > INT64_MAX || d128 < INT64_MIN) throw CapacityError("discriminant exceeds 64 bits");
    std::int64_t d = static_cast<std::int64_t>(d128);
    std::int64_t r16 = ((d % 16) + 16) % 16;
    if (d != 1 && r16 % 4 != 1 && r16 != 8 && r16 != 12) return false;
    auto found = best.find(d);
    if (found != best.end() && found->second.height <= h) return false;
    auto it = fundamental.find(d);
    if (it == fundamental.end()) it = fundamental.emplace(d, is_fundamental_discriminant(Integer(d))).first;
    if (!it->second) return false;
    QuadraticWitness wit{QuatElement{{0, x, y, z}}, Integer(d), h};
    if (found == best.end()) order_found.push_back(d);
    best.insert_or_assign(d, wit);
    return true;
  };
  auto height_of = [](std::int64_t x, std::int64_t y, std::int64_t z) {
    return static_cast<unsigned>(std::max({x < 0 ? -x : x, y < 0 ? -y : y, z < 0 ? -z : z}));
  };
  if (opt.stop_at_first) {
    // Shell by shell, returning the first witness.
    for (unsigned h = 1; h <= opt.height; ++h) {
      const std::int64_t side = 2 * static_cast<std::int64_t>(h) + 1;
      for (std::int64_t ix = 0; ix < side; ++ix)
        for (std::int64_t iy = 0; iy < side; ++iy)
          for (std::int64_t iz = 0; iz < side; ++iz) {
            std::int64_t x = detail::zigzag(ix), y = detail::zigzag(iy), z = detail::zigzag(iz);
            if (height_of(x, y, z) == h && visit(x, y, z, h)) return {best.at(order_found.back())};
          }
    }
    return {};
  }
  const std::int64_t side = 2 * static_cast<std::int64_t>(opt.height) + 1;
  for (std::int64_t ix = 0; ix < side; ++ix)
    for (std::int64_t iy = 0; iy < side; ++iy)
      for (std::int64_t iz = 0; iz < side; ++iz) {
        std::int64_t x = detail::zigzag(ix), y = detail::zigzag(iy), z = detail::zigzag(iz);
        unsigned h = height_of(x, y, z);
        if (h > 0) visit(x, y, z, h);
      }
  std::vector<QuadraticWitness> out;
  for (auto d : order_found) out.push_back(best.at(d));
  std::sort(out.begin(), out.end(), [](const QuadraticWitness& l, const QuadraticWitness& r) {
    Integer al = abs(l.d), ar = abs(r.d);
    if (al != ar) return al < ar;
    if (l.height != r.height) return l.height < r.height;
    return l.d < r.d;
  });
  if (out.size() > opt.count) out.resize(opt.count);
  for (const auto& wit : out) {
    if (elem_disc(o, wit.alpha) != Rational(wit.d)) throw InternalError("witness discriminant mismatch");
  }
  return out;
}

struct ClassificationReport {
  TernaryForm form;
  Integer discrd;
  Factorization factors;
  Integer content;
  std::vector<LocalReport> local;
  bool gorenstein = false;
  bool bass = false;
  bool basic = false;
  std::optional<bool> basic_bruteforce;  // conjunction of local brute-force verdicts, when all in capacity
  WitnessSearch search;
  std::vector<QuadraticWitness> witnesses;
  bool inconclusive = false;  // Bass but no witness found at this height
  bool oracle_agreement = true;
  std::vector<std::string> disagreements;
};

inline ClassificationReport classify(const GoodBasisOrder& o, const WitnessSearch& search = {}) {
  ClassificationReport r{o.form(), discrd(o), {}, form_content(o.form())};
  if (r.discrd > kClassifyMaxDiscrd) throw CapacityError("reduced discriminant exceeds 10^12");
  GramDiscriminant g = gram_and_discrd(o);
  if (g.discrd != r.discrd) throw InternalError("Gram discriminant differs from the half-discriminant");
  r.factors = factor_trial(r.discrd);
  r.gorenstein = r.content == 1;
  r.bass = true;
  bool all_brute = true, brute = true;
  for (const auto& [p, e] : r.factors) {
    LocalReport lr = analyze_local(o, p);
    r.bass = r.bass && lr.bass;
    if (lr.basic_bruteforce)
      brute = brute && *lr.basic_bruteforce;
    else
      all_brute = false;
    if (!lr.oracle_agreement) {
      r.oracle_agreement = false;
      r.disagreements.insert(r.disagreements.end(), lr.disagreements.begin(), lr.disagreements.end());
    }
    r.local.push_back(std::move(lr));
  }
  r.basic = r.bass;
  if (all_brute) r.basic_bruteforce = brute;
  r.search = search;
  r.witnesses = find_quadratic_witnesses(o, search);
  r.inconclusive = r.bass && r.witnesses.empty();
  if (!r.witnesses.empty() && !r.basic) {
    r.oracle_agreement = false;
    r.disagreements.push_back("witness found for a non-basic order " + o.form().to_string());
  }
  if (r.basic_bruteforce && *r.basic_bruteforce != r.basic) {
    r.oracle_agreement = false;
    r.disagreements.push_back("global brute-force basic differs for " + o.form().to_string());
  }
  if (!r.gorenstein && r.bass) {
    r.oracle_agreement = false;
    r.disagreements.push_back("non-Gorenstein order reported Bass " + o.form().to_string());
  }
  return r;
}

// Bass versus brute-force basic at every p | discrd, and witnesses only for
// Bass orders. Mismatches are appended to `records`.
inline bool cross_validate(const GoodBasisOrder& o, std::vector<std::string>* records = nullptr,
                           const WitnessSearch& search = {}) {
  bool ok = true;
  auto note = [&](const std::string& s) {
    ok = false;
    if (records) records->push_back(s);
  };
  bool bass = true;
  for (const auto& [p, e] : factor_trial(discrd(o))) {
    if (p > kBasicBruteForceMaxPrime) throw CapacityError("prime " + p.str() + " beyond brute-force capacity");
    bool b = is_bass_local(o, p), basic = is_basic_bruteforce(o, p);
    bass = bass && b;
    if (b != basic)
      note("form " + o.form().to_string() + " p=" + p.str() + " bass=" + (b ? "true" : "false") +
           " basic_bruteforce=" + (basic ? "true" : "false"));
  }
  if (!bass && !find_quadratic_witnesses(o, search).empty())
    note("form " + o.form().to_string() + " is not Bass but has a quadratic witness");
  return ok;
}

}  // namespace qorder
