#pragma once

// Exact scalar arithmetic: integers, rationals, p-adic valuations, trial
// factorization and square roots modulo a prime.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qorder {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy shared by every module. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InputError : public Error {
 public:
  using Error::Error;
};
class DegenerateError : public InputError {
 public:
  using InputError::InputError;
};
class CapacityError : public Error {
 public:
  using Error::Error;
};
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};
class NotApplicable : public Error {
 public:
  using Error::Error;
};
class InternalError : public Error {
 public:
  using Error::Error;
};

inline Integer abs(const Integer& n) { return n < 0 ? Integer(-n) : n; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// Remainder in [0, |m|).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Floor division for integers (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }
inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Integer d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline void require_prime(const Integer& p) {
  if (!is_prime(p)) throw InputError("not a prime: " + p.str());
}

// nullopt encodes +infinity, the valuation of zero.
using Valuation = std::optional<unsigned>;

inline Valuation valuation(Integer n, const Integer& p) {
  require_prime(p);
  if (n == 0) return std::nullopt;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

// Valuation of a nonzero rational; negative when p divides the denominator.
inline int valuation(const Rational& q, const Integer& p) {
  if (q == 0) throw InputError("valuation of zero rational is infinite");
  return static_cast<int>(*valuation(numerator(q), p)) -
         static_cast<int>(*valuation(denominator(q), p));
}

inline bool divides(const Integer& d, const Integer& n) { return n % d == 0; }

inline Integer content(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

using Factorization = std::vector<std::pair<Integer, unsigned>>;

// Trial division; intended for n <= 10^12.
inline Factorization factor_trial(Integer n) {
  if (n < 1) throw InputError("factor_trial expects n >= 1");
  Factorization out;
  auto take = [&](const Integer& d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  };
  take(2);
  for (Integer d = 3; d * d <= n; d += 2) take(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline Integer powm(const Integer& b, const Integer& e, const Integer& m) {
  return boost::multiprecision::powm(mod(b, m), e, m);
}

// Modular inverse; throws if a is not invertible mod m.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(t);
    t = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(t);
  }
  if (r0 != 1) throw InputError("not invertible modulo " + m.str());
  return mod(s0, m);
}

// Some s with s^2 = a (mod p), or nullopt for a nonresidue. Tonelli-Shanks.
inline std::optional<Integer> sqrt_mod(const Integer& a_in, const Integer& p) {
  require_prime(p);
  Integer a = mod(a_in, p);
  if (p == 2 || a == 0) return a;
  if (powm(a, (p - 1) / 2, p) != 1) return std::nullopt;
  Integer q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
  Integer m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Integer b = c;
    for (Integer k = 0; k < m - i - 1; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "n" or "n/d".
inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in \"" + s + "\"");
    return Rational(num, den);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("malformed rational \"" + s + "\"");
  }
}

// Narrowing with an explicit range check; nothing in the library narrows silently.
inline std::int64_t to_i64(const Integer& n) {
  if (n > Integer(INT64_MAX) || n < Integer(INT64_MIN))
    throw CapacityError("integer exceeds 64-bit range: " + n.str());
  return static_cast<std::int64_t>(n);
}

}  // namespace qorder
