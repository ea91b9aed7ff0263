#include "chebias/bias_core.hpp"

#include <cmath>
#include <string>

namespace chebias {
namespace {

void require_frontier(Int x, const ResidueTally& tally, const char* what) {
  if (tally.frontier() != x) {
    throw std::invalid_argument(std::string(what) + ": tally frontier " +
                                std::to_string(tally.frontier()) + " does not match x = " +
                                std::to_string(x));
  }
}

void require_modulus(Int q, const ResidueTally& tally, const char* what) {
  if (tally.modulus() != q) {
    throw std::invalid_argument(std::string(what) + ": tally was built for modulus " +
                                std::to_string(tally.modulus()));
  }
}

double b_value(const BiasModulus& m, const ResidueTally& tally, Int a) {
  const double phi = static_cast<double>(m.phi());
  return li_guarded(phi * tally.psi(a)) - phi * static_cast<double>(tally.count(a));
}

}  // namespace

bool is_supported_modulus(Int q) { return q == 4 || (q % 2 == 1 && is_prime(q)); }

BiasModulus::BiasModulus(Int q) : q_(q) {
  if (!is_supported_modulus(q)) {
    throw std::invalid_argument("unsupported modulus " + std::to_string(q) +
                                ": the bias is defined for q = 4 and odd primes");
  }
  phi_ = euler_phi(q);
  normalization_ = q == 4 ? 1.0 : 1.0 / static_cast<double>(q / 2);
  classification_ = classify_residues(q);
  character_.assign(q, 0);
  for (const Int a : classification_.residues) character_[a] = 1;
  for (const Int a : classification_.nonresidues) character_[a] = -1;
  for (Int a = 1; a < q; ++a) {
    if (character_[a] != 0) classes_.push_back(a);
  }
}

double li_guarded(double y) {
  if (y == 0.0) return 0.0;
  if (std::fabs(y - 1.0) <= kLiSingularBand) {
    throw SingularInput("li argument " + std::to_string(y) + " is within 1e-9 of 1");
  }
  return logint(y);
}

std::int64_t delta(Int x, Int q, const ResidueTally& tally) {
  const BiasModulus m(q);
  require_modulus(q, tally, "delta");
  require_frontier(x, tally, "delta");
  std::int64_t d = 0;
  for (const Int a : m.classes()) {
    d -= m.character(a) * static_cast<std::int64_t>(tally.count(a));
  }
  return d;
}

double robin_B(Int x, Int q, Int a, const ResidueTally& tally) {
  require_modulus(q, tally, "robin_B");
  require_frontier(x, tally, "robin_B");
  const double phi = static_cast<double>(euler_phi(q));
  return li_guarded(phi * tally.psi(a)) - phi * static_cast<double>(tally.count(a));
}

double delta_reg(Int x, Int q, const ResidueTally& tally) {
  const BiasModulus m(q);
  require_modulus(q, tally, "delta_reg");
  require_frontier(x, tally, "delta_reg");
  double sum = 0.0;
  for (const Int a : m.classes()) sum += m.character(a) * b_value(m, tally, a);
  return m.normalization() * sum;
}

double pi_reg(Int x, Int q, Int a, const ResidueTally& tally) {
  if (x < 2) throw std::invalid_argument("pi_reg: x must be >= 2");
  require_modulus(q, tally, "pi_reg");
  require_frontier(x, tally, "pi_reg");
  return static_cast<double>(tally.count(a)) - tally.psi(a) / std::log(static_cast<double>(x));
}

double pi_approx_from_psi(double psi) {
  return li_guarded(psi) - li_guarded(std::sqrt(psi)) - li_guarded(std::cbrt(psi));
}

double pi_approx_weighted_from_psi(double psi) {
  return li_guarded(psi) - li_guarded(std::sqrt(psi)) / 2.0 - li_guarded(std::cbrt(psi)) / 3.0;
}

double pi_approx(Int x, const SieveOptions& options) {
  if (x < 2) throw std::invalid_argument("pi_approx: x must be >= 2");
  CompensatedSum psi;
  iterate_prime_powers(x, [&](const PrimePower& pp) { psi += pp.logp; }, options);
  return pi_approx_from_psi(psi.value());
}

BiasPoint make_bias_point(Int x, Int q, const ResidueTally& tally) {
  const BiasModulus m(q);
  BiasPoint pt;
  pt.x = x;
  pt.delta = delta(x, q, tally);
  pt.delta_reg = delta_reg(x, q, tally);
  pt.B_by_class.reserve(m.classes().size());
  for (const Int a : m.classes()) pt.B_by_class.emplace_back(a, b_value(m, tally, a));
  pt.normalized = pt.delta_reg / std::sqrt(static_cast<double>(x));
  return pt;
}

// ---------------------------------------------------------------------------
// RunningBias

RunningBias::RunningBias(const BiasModulus& modulus)
    : modulus_(modulus),
      tally_(modulus.q()),
      b_cache_(modulus.q(), 0.0),
      stale_(modulus.q(), 0) {}

void RunningBias::add(const PrimePower& pp) {
  tally_.add(pp);
  const Int a = pp.value % modulus_.q();
  const int chi = modulus_.character(a);
  if (chi == 0) return;
  stale_[a] = 1;
  if (!pp.is_prime()) return;
  delta_ -= chi;
  (chi > 0 ? residue_primes_ : nonresidue_primes_) += 1;
}

double RunningBias::robin_B(Int a) const {
  a %= modulus_.q();
  if (modulus_.character(a) == 0) {
    throw std::invalid_argument("robin_B: class " + std::to_string(a) + " is not reduced");
  }
  if (stale_[a]) {
    b_cache_[a] = b_value(modulus_, tally_, a);
    stale_[a] = 0;
  }
  return b_cache_[a];
}

double RunningBias::delta_reg() const {
  double sum = 0.0;
  for (const Int a : modulus_.classes()) sum += modulus_.character(a) * robin_B(a);
  return modulus_.normalization() * sum;
}

BiasPoint RunningBias::point() const {
  BiasPoint pt;
  pt.x = tally_.frontier();
  pt.delta = delta_;
  pt.delta_reg = delta_reg();
  pt.B_by_class.reserve(modulus_.classes().size());
  for (const Int a : modulus_.classes()) pt.B_by_class.emplace_back(a, robin_B(a));
  pt.normalized = pt.delta_reg / std::sqrt(static_cast<double>(pt.x));
  return pt;
}

}  // namespace chebias
