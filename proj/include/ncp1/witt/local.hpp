#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncp1/errors.hpp"

namespace ncp1::witt {

/// A place of Q: a finite prime or the real place.
struct Place {
  bool infinite = false;
  long p = 0;

  static Place infinity() { return {true, 0}; }
  static Place prime(long q) { return {false, q}; }

  std::string to_string() const { return infinite ? "inf" : std::to_string(p); }

  friend bool operator==(const Place& a, const Place& b) { return a.infinite == b.infinite && a.p == b.p; }
  // finite primes ascending, infinity last
  friend bool operator<(const Place& a, const Place& b) {
    if (a.infinite != b.infinite) return !a.infinite;
    return a.p < b.p;
  }
};

namespace detail {

inline void require_nonzero(const mpq_class& a, const mpq_class& b) {
  if (sgn(a) == 0 || sgn(b) == 0) throw DomainError("Hilbert symbol arguments must be nonzero");
}

/// Integer in the same square class as q (num * den).
inline mpz_class square_class_integer(const mpq_class& q) { return q.get_num() * q.get_den(); }

inline int valuation(mpz_class n, long p) {
  int v = 0;
  n = abs(n);
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::vector<long> prime_factors(mpz_class n) {
  std::vector<long> out;
  n = abs(n);
  for (long q = 2; n > 1; ++q) {
    if (mpz_class(q) * q > n) {
      if (!n.fits_slong_p()) throw DomainError("prime factor too large for this implementation");
      out.push_back(n.get_si());
      break;
    }
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  return out;
}

}  // namespace detail

/// Local Hilbert symbol (a, b)_v in {+1, -1}, computed from valuations,
/// Legendre symbols, and the exponent formula at 2.
inline int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
  detail::require_nonzero(a, b);
  if (v.infinite) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const long p = v.p;
  if (p < 2) throw DomainError("invalid place");
  mpz_class A = detail::square_class_integer(a);
  mpz_class B = detail::square_class_integer(b);
  const int alpha = detail::valuation(A, p);
  const int beta = detail::valuation(B, p);
  mpz_class u = A, w = B;
  for (int i = 0; i < alpha; ++i) u /= p;
  for (int i = 0; i < beta; ++i) w /= p;
  if (p == 2) {
    auto mod8 = [](const mpz_class& x) {
      mpz_class r = x % 8;
      if (r < 0) r += 8;
      return r.get_si();
    };
    const long u8 = mod8(u), w8 = mod8(w);
    const long eps_u = ((u8 - 1) / 2) % 2;
    const long eps_w = ((w8 - 1) / 2) % 2;
    const long om_u = ((u8 * u8 - 1) / 8) % 2;
    const long om_w = ((w8 * w8 - 1) / 8) % 2;
    const long e = eps_u * eps_w + alpha * om_w + beta * om_u;
    return (e % 2 == 0) ? 1 : -1;
  }
  mpz_class pp(p);
  int sign = 1;
  if ((static_cast<long>(alpha) * beta * ((p - 1) / 2)) % 2 != 0) sign = -sign;
  if (beta % 2 != 0) sign *= mpz_legendre(mpz_class(((u % pp) + pp) % pp).get_mpz_t(), pp.get_mpz_t());
  if (alpha % 2 != 0) sign *= mpz_legendre(mpz_class(((w % pp) + pp) % pp).get_mpz_t(), pp.get_mpz_t());
  return sign;
}

namespace detail {

// Squarefree part of an integer by trial division (independent of the symbol code).
inline mpz_class squarefree_part(mpz_class n) {
  const int s = sgn(n);
  n = abs(n);
  mpz_class out = 1;
  for (long q = 2; mpz_class(q) * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e % 2) out *= q;
  }
  out *= n;
  return s < 0 ? mpz_class(-out) : out;
}

}  // namespace detail

/// Decides local solvability of a x^2 + b y^2 = z^2 at v by exhaustive search
/// for primitive solutions modulo p^depth (default v_p(4ab)+3 after squarefree
/// normalisation), or by sign analysis at infinity. Used to cross-check
/// hilbert_symbol.
inline int hilbert_symbol_oracle(const mpq_class& a, const mpq_class& b, const Place& v,
                                 std::optional<int> depth = std::nullopt) {
  detail::require_nonzero(a, b);
  if (v.infinite) {
    // a x^2 + b y^2 - z^2 is anisotropic over R iff it is definite
    const bool definite = sgn(a) < 0 && sgn(b) < 0;
    return definite ? -1 : 1;
  }
  const long p = v.p;
  const mpz_class c1 = detail::squarefree_part(a.get_num() * a.get_den());
  const mpz_class c2 = detail::squarefree_part(b.get_num() * b.get_den());
  const int n = depth ? *depth : detail::valuation(mpz_class(4) * c1 * c2, p) + 3;
  mpz_class modz = 1;
  for (int i = 0; i < n; ++i) modz *= p;
  if (modz > 50'000'000) throw DomainError("oracle modulus p^depth too large");
  const long m = modz.get_si();
  auto red = [m](const mpz_class& x) {
    mpz_class r = x % m;
    if (r < 0) r += m;
    return r.get_si();
  };
  const long A = red(c1), B = red(c2);
  auto mulm = [m](long x, long y) { return static_cast<long>((static_cast<__int128>(x) * y) % m); };
  // Which residues are k*t^2 for some t (any t / unit t)?
  // residues of the form k*t^2
  auto table = [&](long k) {
    std::vector<std::uint8_t> t(m, 0);
    for (long x = 0; x < m; ++x) t[mulm(k, mulm(x, x))] = 1;
    return t;
  };
  const auto sq = table(1);
  const auto bsq = table(B);
  // Every primitive solution can be scaled so that one coordinate equals 1.
  for (long t = 0; t < m; ++t) {
    // x = 1: A + B t^2 = z^2
    if (sq[(A + mulm(B, mulm(t, t))) % m]) return 1;
    // y = 1: A t^2 + B = z^2
    if (sq[(mulm(A, mulm(t, t)) + B) % m]) return 1;
    // z = 1: A t^2 + B y^2 = 1  ->  B y^2 = 1 - A t^2
    const long rhs = ((1 - mulm(A, mulm(t, t))) % m + m) % m;
    if (bsq[rhs]) return 1;
  }
  return -1;
}

/// Places where the quaternion algebra (a, b) over Q ramifies.
struct RamificationSet {
  std::vector<Place> places;  // sorted

  bool empty() const { return places.empty(); }
  std::size_t size() const { return places.size(); }
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < places.size(); ++i) s += (i ? "," : "") + places[i].to_string();
    return s + "}";
  }
  friend bool operator==(const RamificationSet& x, const RamificationSet& y) { return x.places == y.places; }
  friend bool operator<(const RamificationSet& x, const RamificationSet& y) { return x.places < y.places; }
};

/// The places that can carry a nontrivial symbol: infinity and primes dividing 2ab.
inline std::vector<Place> relevant_places(const mpq_class& a, const mpq_class& b) {
  detail::require_nonzero(a, b);
  mpz_class n = 2 * a.get_num() * a.get_den() * b.get_num() * b.get_den();
  std::vector<Place> out;
  for (long q : detail::prime_factors(n)) out.push_back(Place::prime(q));
  std::sort(out.begin(), out.end());
  out.push_back(Place::infinity());
  return out;
}

inline RamificationSet ramification_set(const mpq_class& a, const mpq_class& b) {
  RamificationSet r;
  for (const Place& v : relevant_places(a, b))
    if (hilbert_symbol(a, b, v) == -1) r.places.push_back(v);
  if (r.places.size() % 2 != 0)
    throw ValidationError("ramification set of (" + a.get_str() + "," + b.get_str() + ") has odd size");
  return r;
}

/// Projective conic a X^2 + b Y^2 = Z^2 with squarefree nonzero integer coefficients.
struct Conic {
  mpz_class a;
  mpz_class b;
  // Scale factors relating the original rational equation to this one:
  // original a = a * sa^2, original b = b * sb^2.
  mpq_class sa = 1;
  mpq_class sb = 1;

  static Conic from_rationals(const mpq_class& a, const mpq_class& b) {
    detail::require_nonzero(a, b);
    auto norm = [](const mpq_class& q, mpz_class& sf, mpq_class& scale) {
      // q * den^2 = num * den = f^2 * sf
      const mpz_class n = q.get_num() * q.get_den();
      sf = detail::squarefree_part(n);
      mpz_class f2 = n / sf;
      mpz_class f;
      mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
      scale = mpq_class(f, q.get_den());
      scale.canonicalize();
    };
    Conic c;
    norm(a, c.a, c.sa);
    norm(b, c.b, c.sb);
    return c;
  }
};

struct LocalReport {
  std::vector<std::pair<Place, bool>> places;  // solvable at v
  bool globally_solvable = true;
};

inline LocalReport conic_locally_solvable(const Conic& c) {
  LocalReport r;
  const mpq_class a(c.a), b(c.b);
  for (const Place& v : relevant_places(a, b)) {
    const bool ok = hilbert_symbol(a, b, v) == 1;
    r.places.emplace_back(v, ok);
    r.globally_solvable = r.globally_solvable && ok;
  }
  return r;
}

using ProjectivePoint = std::array<mpz_class, 3>;

/// Exhaustive search for a point of the normalised conic within Holzer's
/// bounds |X| <= sqrt|b|, |Y| <= sqrt|a|, |Z| <= sqrt|ab|. Because those bounds
/// always contain a solution when one exists, nullopt certifies that the conic
/// has no rational point.
inline std::optional<ProjectivePoint> conic_point_search(const Conic& c) {
  auto isqrt = [](const mpz_class& x) {
    mpz_class r;
    mpz_class ax = abs(x);
    mpz_sqrt(r.get_mpz_t(), ax.get_mpz_t());
    return r;
  };
  const mpz_class bx = isqrt(c.b), by = isqrt(c.a), bz = isqrt(c.a * c.b);
  for (mpz_class y = 0; y <= by; ++y)
    for (mpz_class x = 0; x <= bx; ++x) {
      if (x == 0 && y == 0) continue;
      const mpz_class val = c.a * x * x + c.b * y * y;
      if (val < 0 || !mpz_perfect_square_p(val.get_mpz_t())) continue;
      mpz_class z = isqrt(val);
      if (z > bz) continue;
      mpz_class g = gcd(gcd(x, y), z);
      return ProjectivePoint{x / g, y / g, z / g};
    }
  return std::nullopt;
}

/// Maps a point of the normalised conic back to the original rational equation
/// a X^2 + b Y^2 = Z^2, returned as a primitive integer triple.
inline ProjectivePoint point_on_original(const Conic& c, const ProjectivePoint& p) {
  // normalised X' = sa * X  =>  X = X'/sa
  mpq_class x = mpq_class(p[0]) / c.sa, y = mpq_class(p[1]) / c.sb, z = mpq_class(p[2]);
  mpz_class l = lcm(lcm(x.get_den(), y.get_den()), z.get_den());
  mpz_class X = x.get_num() * (l / x.get_den());
  mpz_class Y = y.get_num() * (l / y.get_den());
  mpz_class Z = z.get_num() * (l / z.get_den());
  mpz_class g = gcd(gcd(X, Y), Z);
  return {X / g, Y / g, Z / g};
}

}  // namespace ncp1::witt
