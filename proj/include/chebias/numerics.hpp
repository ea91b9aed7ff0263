#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chebias/primes.hpp"

namespace chebias {

// Raised when a function is evaluated at (or numerically on top of) a
// singularity, e.g. li(1).
class SingularInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root of li on (1, inf), the Ramanujan-Soldner constant.
inline constexpr double kSoldner = 1.4513692348833810503;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Principal-value logarithmic integral li(y) = PV int_0^y dt / log t.
///
/// Evaluated as Ei(log y). For log y in [-1, 43] the convergent series
/// gamma + log|t| + sum t^k / (k k!) is used; its terms are all positive for
/// t > 0 and only mildly alternating for t in [-1, 0). Below -1 we switch to
/// the continued fraction for E1, above 43 to the asymptotic expansion
/// e^t/t sum k!/t^k, whose smallest term there is below 1e-17.
///
/// Relative accuracy is about 1e-15 away from the Soldner root; near the
/// root the absolute error is a few ulps of 1. Throws SingularInput for
/// y <= 0 and for y within 1e-12 of 1.
double logint(double y);

// Exponential integral Ei(t) for real t != 0.
double expint_ei(double t);

int mobius(Int n);
Int euler_phi(Int q);
bool is_prime(Int n);

// Legendre symbol (a/p) via Euler's criterion; p must be an odd prime.
int legendre(std::int64_t a, Int p);

struct ResidueClassification {
  Int q = 0;
  std::vector<Int> residues;     // R: reduced a with a = b^2 (mod q) solvable
  std::vector<Int> nonresidues;  // N: the remaining reduced classes

  bool is_residue(Int a) const;
  bool is_nonresidue(Int a) const;
};

ResidueClassification classify_residues(Int q);

// c(q,a) = -1 + #{1 <= b <= q : b^2 = a (mod q)} for gcd(a,q) = 1.
int c_term(Int q, Int a);

// sum_{n=a}^{b} 1/n for 1 <= a, and 0 when b < a.
double harmonic_range(Int a, Int b);

}  // namespace chebias
