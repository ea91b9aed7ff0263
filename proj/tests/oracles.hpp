#pragma once

// Brute-force reference implementations used by the tests. Nothing here
// goes through the segmented sieve, the running tallies or the Ei series.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Int = std::uint64_t;

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<Int> primes_upto(Int n) {
  std::vector<Int> out;
  for (Int k = 2; k <= n; ++k) {
    if (is_prime(k)) out.push_back(k);
  }
  return out;
}

// Plain (non-segmented) sieve of Eratosthenes.
inline std::vector<bool> sieve_flags(Int n) {
  std::vector<bool> f(n + 1, true);
  f[0] = false;
  if (n >= 1) f[1] = false;
  for (Int i = 2; i * i <= n; ++i) {
    if (!f[i]) continue;
    for (Int j = i * i; j <= n; j += i) f[j] = false;
  }
  return f;
}

// If n = p^k for a prime p and k >= 1, returns p, else 0.
inline Int prime_power_base(Int n) {
  if (n < 2) return 0;
  Int p = 0;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return n;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

struct Tally {
  std::map<Int, Int> counts;
  std::map<Int, long double> psi;
  long double offclass_psi = 0;
  Int offclass_count = 0;
};

inline Int gcd(Int a, Int b) {
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Tally tally(Int x, Int q) {
  Tally t;
  for (Int a = 1; a < q; ++a) {
    if (gcd(a, q) == 1) {
      t.counts[a] = 0;
      t.psi[a] = 0;
    }
  }
  for (Int n = 2; n <= x; ++n) {
    const Int p = prime_power_base(n);
    if (p == 0) continue;
    const long double lp = std::log(static_cast<long double>(p));
    const Int a = n % q;
    if (gcd(a, q) == 1) {
      t.psi[a] += lp;
      if (p == n) ++t.counts[a];
    } else {
      t.offclass_psi += lp;
      if (p == n) ++t.offclass_count;
    }
  }
  return t;
}

inline int legendre(Int a, Int p) {
  a %= p;
  if (a == 0) return 0;
  for (Int b = 1; b < p; ++b) {
    if (b * b % p == a) return 1;
  }
  return -1;
}

// +1 on squares, -1 on non-squares (q = 4 or odd prime), by enumeration.
inline int character(Int a, Int q) {
  if (q == 4) return a % 4 == 1 ? 1 : (a % 4 == 3 ? -1 : 0);
  return legendre(a, q);
}

inline long long delta(Int x, Int q) {
  long long d = 0;
  for (Int p = 2; p <= x; ++p) {
    if (is_prime(p)) d -= character(p, q);
  }
  return d;
}

// li(2), 20 digits, from an arbitrary-precision evaluation (mpmath).
inline constexpr long double kLi2 = 1.0451637801174927848L;

// Composite 16-point Gauss-Legendre of f over [lo, hi].
template <typename F>
long double gauss_legendre(F f, long double lo, long double hi, int panels) {
  static const long double nodes[8] = {
      0.0950125098376374401853193354250L, 0.281603550779258913230460501460L,
      0.458016777657227386342419442984L,  0.617876244402643748446671764049L,
      0.755404408355003033895101194847L,  0.865631202387831743880467897712L,
      0.944575023073232576077988415535L,  0.989400934991649932596154173450L};
  static const long double weights[8] = {
      0.189450610455068496285396723208L, 0.182603415044923588866763667969L,
      0.169156519395002538189312079030L, 0.149595988816576732081501730547L,
      0.124628971255533872052476282192L, 0.0951585116824927848099251076022L,
      0.0622535239386478928628438369944L, 0.0271524594117540948517805724560L};
  long double total = 0;
  for (int i = 0; i < panels; ++i) {
    const long double a = lo + (hi - lo) * i / panels;
    const long double b = lo + (hi - lo) * (i + 1) / panels;
    const long double mid = (a + b) / 2, half = (b - a) / 2;
    for (int k = 0; k < 8; ++k) {
      total += weights[k] * half * (f(mid - half * nodes[k]) + f(mid + half * nodes[k]));
    }
  }
  return total;
}

// int_a^b dt / log t for 1 < a < b, as int e^u / u du over [log a, log b].
inline long double integrate_inv_log(long double a, long double b) {
  return gauss_legendre([](long double u) { return std::exp(u) / u; }, std::log(a), std::log(b), 400);
}

// Ramanujan's series li(y) = gamma + log log y
//   + sqrt(y) sum_{n>=1} (-1)^{n-1} (log y)^n / (n! 2^{n-1}) sum_{k<=(n-1)/2} 1/(2k+1),
// valid for y > 1.
inline long double li_ramanujan(long double y) {
  const long double gamma = 0.577215664901532860606512090082L;
  const long double t = std::log(y);
  long double sum = 0, inner = 0, power = 1, fact = 1;
  for (int n = 1; n < 200; ++n) {
    power *= t;
    fact *= n;
    if ((n - 1) % 2 == 0) inner += 1.0L / (n);  // adds 1/(2k+1) with 2k+1 = n
    const long double term = ((n % 2 == 1) ? 1 : -1) * power / (fact * std::pow(2.0L, n - 1)) * inner;
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && n > 10) break;
  }
  return gamma + std::log(t) + std::sqrt(y) * sum;
}

// int_0^y dt / log t for 0 < y < 1. With t = exp(-e^v) this is
// -int_{log(-log y)}^{inf} exp(-e^v) dv; the tail beyond v = 5 is below 1e-60.
inline long double li_below_one(long double y) {
  return -gauss_legendre([](long double v) { return std::exp(-std::exp(v)); },
                         std::log(-std::log(y)), 5.0L, 400);
}

// li by quadrature from 2 for y >= 2; Ramanujan's series on (1, 2);
// direct quadrature below 1.
inline long double li(long double y) {
  if (y >= 2) return kLi2 + integrate_inv_log(2, y);
  if (y > 1) return li_ramanujan(y);
  return li_below_one(y);
}

}  // namespace oracle
