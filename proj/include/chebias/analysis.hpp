#pragma once

// Single-pass scans over primes: champions, b(q), logarithmic densities,
// sign zones, plus the zero-driven explicit formula and variance.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "chebias/bias_core.hpp"
#include "chebias/zero_table.hpp"

namespace chebias {

// Feeds every prime power <= limit, in increasing order, to the visitor.
using PrimePowerSource = std::function<void(Int limit, const PrimePowerVisitor&)>;

struct ScanOptions {
  SieveOptions sieve;
  // Replaces the sieve as the event source when set (used to inject
  // synthetic data in tests).
  PrimePowerSource source;
};

// Runs the prime-power stream for modulus q up to limit and calls at_prime
// after each prime has been folded into the running state. Returns the
// final state with its frontier at limit.
RunningBias walk_primes(const BiasModulus& modulus, Int limit, const ScanOptions& options,
                        const std::function<void(const RunningBias&, Int)>& at_prime);

enum class SamplingPolicy { AllPrimes, Champions };

// Emits a BiasPoint at every prime coprime to q, or at the champions of
// either sign.
void scan(Int q, Int limit, SamplingPolicy policy,
          const std::function<void(const BiasPoint&)>& sink, const ScanOptions& options = {});

struct ChampionRecord {
  std::int64_t n = 0;
  int epsilon = 1;
  Int x = 0;
  double delta_reg = 0.0;
  double normalized = 0.0;
};

struct ChampionSet {
  std::vector<ChampionRecord> positive;
  std::vector<ChampionRecord> negative;
};

ChampionSet find_champions(Int q, Int limit, const ScanOptions& options = {});
std::vector<ChampionRecord> champions(Int q, Int limit, int epsilon,
                                      const ScanOptions& options = {});

// b(q) as the sum of eps*n/x_n over the champions of both signs (raw), and
// the same sum with delta rescaled by the regularized-bias weight
// 1/floor(p/2) for prime moduli (normalized; equal to raw for q = 4).
struct BiasSum {
  double raw = 0.0;
  double normalized = 0.0;
};

BiasSum bias_sum(const BiasModulus& modulus, const ChampionSet& set);
BiasSum bias_sum(Int q, Int limit, const ScanOptions& options = {});

// (1/log limit) sum 1/a over the integers a <= limit where delta(a,q) is
// positive, negative or zero. harmonic_total is (1/log limit) sum_{a<=limit} 1/a.
struct LogDensity {
  double plus = 0.0;
  double minus = 0.0;
  double zero = 0.0;
  double harmonic_total = 0.0;
};

LogDensity log_density(Int q, Int limit, const ScanOptions& options = {});

// Maximal interval [start, end) of integers on which delta has one sign.
struct Zone {
  Int start = 0;
  Int end = 0;
  int sign = 0;
  Int length = 0;       // integers in the zone
  Int prime_count = 0;  // primes in the zone
};

std::vector<Zone> zones(Int q, Int limit, const ScanOptions& options = {});

// delta(x,q) at each nondecreasing integer point, in one pass.
std::vector<std::int64_t> delta_at(Int q, std::span<const Int> points,
                                   const ScanOptions& options = {});

struct PositivityReport {
  bool ok = true;
  Int first_checked = 0;
  Int checked = 0;
  std::optional<Int> witness;
  double witness_value = 0.0;
  Int min_normalized_at = 0;
  double min_normalized = 0.0;
};

// Checks delta'(x,q) > 0 at every prime x <= limit from the first prime at
// which a residue class and a non-residue class are both populated.
PositivityReport check_positivity(Int q, Int limit, const ScanOptions& options = {});

// Truncated explicit formula
// (sqrt x / log x) (1 + 2 sum_gamma sin(gamma log x + alpha) / sqrt(1/4 + gamma^2)),
// alpha = arccot(2 gamma), over the first `terms` zeros (all by default).
double explicit_delta(double x, const ZeroTable& zeros,
                      std::optional<std::size_t> terms = std::nullopt);

// sum 2/(1/4 + gamma^2) over the first `terms` zeros (all by default).
double variance(const ZeroTable& zeros, std::optional<std::size_t> terms = std::nullopt);

// li(x) - pi(x) at nondecreasing integer points.
std::vector<double> li_minus_pi(std::span<const Int> points, const SieveOptions& options = {});

// n points from lo to hi spaced evenly in log x, rounded to integers.
std::vector<Int> log_spaced(Int lo, Int hi, std::size_t n);

double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

}  // namespace chebias
