#pragma once

// Chebyshev bias delta(x,q), Robin's B-function and the regularized bias
// delta'(x,q) for q = 4 and odd prime moduli.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "chebias/numerics.hpp"
#include "chebias/primes.hpp"

namespace chebias {

bool is_supported_modulus(Int q);

// A modulus the bias is defined for, with its real quadratic character:
// +1 on quadratic residues, -1 on non-residues, 0 off the reduced classes.
class BiasModulus {
 public:
  // Throws std::invalid_argument unless q = 4 or q is an odd prime.
  explicit BiasModulus(Int q);

  Int q() const { return q_; }
  Int phi() const { return phi_; }
  int character(Int a) const { return character_[a % q_]; }
  // Weight of the regularized bias: 1 for q = 4, 1/floor(p/2) for odd prime p.
  double normalization() const { return normalization_; }
  std::span<const Int> classes() const { return classes_; }
  const ResidueClassification& classification() const { return classification_; }

 private:
  Int q_;
  Int phi_;
  double normalization_;
  std::vector<int> character_;
  std::vector<Int> classes_;
  ResidueClassification classification_;
};

// Arguments of li closer than this to 1 are rejected as singular.
inline constexpr double kLiSingularBand = 1e-9;

// li(y) with li(0) = 0 and the singular band around 1 rejected.
double li_guarded(double y);

// delta(x,q): pi(x;4,3) - pi(x;4,1) for q = 4,
// -sum_a (a/p) pi(x;p,a) for an odd prime p.
std::int64_t delta(Int x, Int q, const ResidueTally& tally);

// B(x;q,a) = li(phi(q) psi(x;q,a)) - phi(q) pi(x;q,a).
double robin_B(Int x, Int q, Int a, const ResidueTally& tally);

// delta'(x,q): B(x;4,1) - B(x;4,3) for q = 4,
// (1/floor(p/2)) sum_a (a/p) B(x;p,a) for an odd prime p.
double delta_reg(Int x, Int q, const ResidueTally& tally);

// pi'(x;q,a) = pi(x;q,a) - psi(x;q,a)/log x.
double pi_reg(Int x, Int q, Int a, const ResidueTally& tally);

// li(psi) - li(psi^{1/2}) - li(psi^{1/3}). At x = 2 all three arguments lie
// in (0, 1); psi(x) >= log 6 > 1 from x = 3 on, so only an exactly
// singular psi could trip the guard, which no integer x produces.
double pi_approx_from_psi(double psi);
double pi_approx(Int x, const SieveOptions& options = {});

// sum_{n<=3} mu(n)/n li(psi^{1/n}), the Riemann-R style weighting.
double pi_approx_weighted_from_psi(double psi);

struct BiasPoint {
  Int x = 0;
  std::int64_t delta = 0;
  double delta_reg = 0.0;
  std::vector<std::pair<Int, double>> B_by_class;
  double normalized = 0.0;  // delta_reg / sqrt(x)
};

BiasPoint make_bias_point(Int x, Int q, const ResidueTally& tally);

// Tracks delta and delta' along an increasing stream of prime powers.
// B values are cached per class and recomputed only for classes that
// received a prime power since the last query.
class RunningBias {
 public:
  explicit RunningBias(const BiasModulus& modulus);

  void add(const PrimePower& pp);
  void advance_to(Int x) { tally_.advance_to(x); }

  const BiasModulus& modulus() const { return modulus_; }
  const ResidueTally& tally() const { return tally_; }
  Int frontier() const { return tally_.frontier(); }

  std::int64_t delta() const { return delta_; }
  double robin_B(Int a) const;
  double delta_reg() const;
  BiasPoint point() const;

  // True once some residue class and some non-residue class hold a prime.
  bool both_sides_populated() const { return residue_primes_ > 0 && nonresidue_primes_ > 0; }

 private:
  BiasModulus modulus_;
  ResidueTally tally_;
  std::int64_t delta_ = 0;
  Int residue_primes_ = 0;
  Int nonresidue_primes_ = 0;
  mutable std::vector<double> b_cache_;
  mutable std::vector<unsigned char> stale_;
};

}  // namespace chebias
