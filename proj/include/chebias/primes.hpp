#pragma once

// Segmented enumeration of primes and prime powers, and per-residue-class
// tallies of pi(x;q,a) and psi(x;q,a).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chebias/compensated_sum.hpp"

namespace chebias {

using Int = std::uint64_t;

inline constexpr Int kMaxScanLimit = Int{1} << 62;
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

struct SieveOptions {
  std::size_t segment_size = kDefaultSegmentSize;
  // Number of segments sieved concurrently. Results never depend on it.
  unsigned threads = 1;
};

// Primality flags for the integers in [lo, hi). One bit per odd integer;
// the even prime 2 is tracked separately.
class SieveSegment {
 public:
  Int lo() const { return lo_; }
  Int hi() const { return hi_; }

  bool is_prime(Int n) const;
  std::size_t count() const;
  // Number of primes in [lo, min(n, hi - 1)].
  std::size_t count_through(Int n) const;
  std::vector<Int> primes() const;

  // Calls f(p) for each prime p in [lo, hi) in increasing order.
  template <typename F>
  void for_each_prime(F&& f) const {
    if (has_two_) f(Int{2});
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const int bit = __builtin_ctzll(word);
        word &= word - 1;
        f(first_odd_ + 2 * (Int{64} * w + static_cast<Int>(bit)));
      }
    }
  }

 private:
  friend class SegmentedSieve;
  SieveSegment(Int lo, Int hi);

  Int lo_ = 0;
  Int hi_ = 0;
  Int first_odd_ = 0;
  bool has_two_ = false;
  std::vector<std::uint64_t> bits_;
};

// Holds the sieving primes up to sqrt(limit) and produces segments of
// [2, limit] on demand. Const member functions are safe to call concurrently.
class SegmentedSieve {
 public:
  explicit SegmentedSieve(Int limit, std::size_t segment_size = kDefaultSegmentSize);

  Int limit() const { return limit_; }
  std::size_t segment_size() const { return segment_size_; }
  std::span<const Int> base_primes() const { return base_primes_; }

  // Sieves [lo, hi), which must lie inside [2, limit + 1) and fit the budget.
  SieveSegment segment(Int lo, Int hi) const;

  // Visits every segment covering [lo, hi) in increasing order. With
  // threads > 1, batches of segments are sieved concurrently before being
  // handed to f sequentially.
  void for_each_segment(Int lo, Int hi, unsigned threads,
                        const std::function<void(const SieveSegment&)>& f) const;

 private:
  Int limit_;
  std::size_t segment_size_;
  std::vector<Int> base_primes_;
};

// Sieve of [lo, hi) with a fresh set of sieving primes.
SieveSegment sieve_segment(Int lo, Int hi, std::size_t budget = kDefaultSegmentSize);

struct PrimePower {
  Int p = 0;
  unsigned k = 0;
  Int value = 0;
  double logp = 0.0;

  bool is_prime() const { return k == 1; }
};

// All prime powers p^k <= limit with k >= 2, sorted by value.
std::vector<PrimePower> higher_prime_powers(Int limit);

using PrimePowerVisitor = std::function<void(const PrimePower&)>;

// Visits every prime power p^k <= limit exactly once, in increasing order.
void iterate_prime_powers(Int limit, const PrimePowerVisitor& visitor,
                          const SieveOptions& options = {});

// pi(x;q,a) and psi(x;q,a) for every reduced class a, accumulated over the
// integer range [start, frontier].
class ResidueTally {
 public:
  ResidueTally(Int q, Int start = 2);

  Int modulus() const { return q_; }
  Int start() const { return start_; }
  Int frontier() const { return frontier_; }
  std::span<const Int> classes() const { return classes_; }
  bool is_reduced(Int a) const;

  Int count(Int a) const;
  double psi(Int a) const;
  double offclass_psi() const { return offclass_psi_.value(); }
  Int offclass_count() const { return offclass_count_; }

  Int total_count() const;
  double total_psi() const;

  // Records a prime power with value in (frontier, ...]; the frontier moves
  // to its value.
  void add(const PrimePower& pp);
  // Moves the frontier forward without recording anything.
  void advance_to(Int x);

  // Combines tallies over adjacent disjoint ranges, in either order.
  ResidueTally merged(const ResidueTally& other) const;

 private:
  Int q_;
  Int start_;
  Int frontier_;
  std::vector<Int> classes_;
  std::vector<unsigned char> reduced_;
  std::vector<Int> counts_;
  std::vector<CompensatedSum> psi_;
  Int offclass_count_ = 0;
  CompensatedSum offclass_psi_;
};

// Exact tally of [2, limit] for modulus q >= 3.
ResidueTally tally_to(Int limit, Int q, const SieveOptions& options = {});

// Tally of the prime powers in [lo, hi], using a prepared sieve.
ResidueTally tally_range(const SegmentedSieve& sieve, std::span<const PrimePower> powers,
                         Int lo, Int hi, Int q);

// Number of primes <= x.
Int pi(Int x, const SieveOptions& options = {});

// pi at each of the given nondecreasing points, in one pass.
std::vector<Int> pi_at(std::span<const Int> points, const SieveOptions& options = {});

}  // namespace chebias
