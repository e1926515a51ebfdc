#pragma once

// Helpers shared by the unit tests.

#include "qorder/ternary_form.hpp"

#include <ostream>
#include <random>
#include <vector>

namespace qorder {

inline void PrintTo(const TernaryForm& q, std::ostream* os) { *os << q.to_string(); }

}  // namespace qorder

namespace qtest {

using qorder::Integer;
using qorder::Rational;
using qorder::TernaryForm;

inline TernaryForm form(long a, long b, long c, long u, long v, long w) { return TernaryForm(a, b, c, u, v, w); }

// Nondegenerate forms with coefficients uniform in [-bound, bound].
inline std::vector<TernaryForm> random_forms(std::size_t count, int bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<TernaryForm> out;
  while (out.size() < count) {
    qorder::FormCoefficients k{d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
    if (TernaryForm::half_discriminant_of(k) != 0) out.emplace_back(k);
  }
  return out;
}

}  // namespace qtest
