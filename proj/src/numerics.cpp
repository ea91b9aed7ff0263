#include "chebias/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace chebias {
namespace {

constexpr double kSeriesUpper = 43.0;
constexpr double kSeriesLower = -1.0;
constexpr double kSingularBand = 1e-12;

double ei_series(double t) {
  CompensatedSum sum;
  double term = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= t / k;
    const double add = term / k;
    sum += add;
    if (std::fabs(add) <= 1e-18 * std::fabs(sum.value())) break;
  }
  return kEulerGamma + std::log(std::fabs(t)) + sum.value();
}

// E1(s) for s > 1 by the modified Lentz method on
// E1(s) = e^{-s} / (s + 1 - 1^2/(s + 3 - 2^2/(s + 5 - ...))).
double e1_continued_fraction(double s) {
  constexpr double tiny = 1e-300;
  double b = s + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-s);
}

double ei_asymptotic(double t) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double next = term * k / t;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::exp(t) / t * sum;
}

Int powmod(Int base, Int exp, Int mod) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp != 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<Int>(result);
}

}  // namespace

double expint_ei(double t) {
  if (t == 0.0 || std::isnan(t)) throw SingularInput("Ei: argument must be nonzero");
  if (t > kSeriesUpper) return ei_asymptotic(t);
  if (t < kSeriesLower) return -e1_continued_fraction(-t);
  return ei_series(t);
}

double logint(double y) {
  if (!(y > 0.0)) throw SingularInput("li: argument must be positive, got " + std::to_string(y));
  if (std::fabs(y - 1.0) <= kSingularBand) {
    throw SingularInput("li: logarithmic singularity at 1");
  }
  if (std::isinf(y)) return y;
  return expint_ei(std::log(y));
}

int mobius(Int n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  int sign = 1;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

Int euler_phi(Int q) {
  if (q == 0) throw std::invalid_argument("euler_phi: q must be positive");
  Int result = q;
  for (Int p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    result -= result / p;
  }
  if (q > 1) result -= result / q;
  return result;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Int d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

int legendre(std::int64_t a, Int p) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw std::invalid_argument("legendre: modulus " + std::to_string(p) +
                                " is not an odd prime");
  }
  const auto sp = static_cast<std::int64_t>(p);
  const auto r = static_cast<Int>(((a % sp) + sp) % sp);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool ResidueClassification::is_residue(Int a) const {
  return std::binary_search(residues.begin(), residues.end(), a % q);
}

bool ResidueClassification::is_nonresidue(Int a) const {
  return std::binary_search(nonresidues.begin(), nonresidues.end(), a % q);
}

ResidueClassification classify_residues(Int q) {
  if (q < 3) {
    throw std::invalid_argument("classify_residues: modulus must be >= 3, got " +
                                std::to_string(q));
  }
  std::vector<bool> square(q, false);
  for (Int b = 1; b <= q; ++b) {
    if (std::gcd(b, q) == 1) square[static_cast<Int>((unsigned __int128)b * b % q)] = true;
  }
  ResidueClassification out;
  out.q = q;
  for (Int a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    (square[a] ? out.residues : out.nonresidues).push_back(a);
  }
  return out;
}

int c_term(Int q, Int a) {
  if (q == 0) throw std::invalid_argument("c_term: modulus must be positive");
  a %= q;
  if (std::gcd(a, q) != 1) {
    throw std::invalid_argument("c_term: class " + std::to_string(a) + " is not coprime to " +
                                std::to_string(q));
  }
  int roots = 0;
  for (Int b = 1; b <= q; ++b) {
    if (static_cast<Int>((unsigned __int128)b * b % q) == a) ++roots;
  }
  return roots - 1;
}

double harmonic_range(Int a, Int b) {
  if (a == 0) throw std::invalid_argument("harmonic_range: a must be positive");
  if (b < a) return 0.0;
  constexpr Int kDirect = 64;
  CompensatedSum sum;
  Int n = a;
  for (; n <= b && (n < kDirect || b - n < kDirect); ++n) sum += 1.0 / static_cast<double>(n);
  if (n > b) return sum.value();
  // sum_{k=n}^{b} 1/k = digamma(b + 1) - digamma(n), with
  // digamma(z) ~ log z - 1/(2z) - 1/(12z^2) + 1/(120z^4) - 1/(252z^6).
  const auto tail = [](double z) {
    const double z2 = 1.0 / (z * z);
    return -0.5 / z - z2 * (1.0 / 12 - z2 * (1.0 / 120 - z2 / 252));
  };
  const double lo = static_cast<double>(n);
  const double hi = static_cast<double>(b) + 1.0;
  sum += std::log1p(static_cast<double>(b + 1 - n) / lo);
  sum += tail(hi) - tail(lo);
  return sum.value();
}

}  // namespace chebias
