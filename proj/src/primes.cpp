#include "chebias/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace chebias {
namespace {

Int isqrt(Int n) {
  auto r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<Int> small_primes_through(Int n) {
  std::vector<Int> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (Int i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (Int j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

void check_limit(Int limit, Int minimum, const char* what) {
  if (limit < minimum) {
    throw std::invalid_argument(std::string(what) + ": limit " + std::to_string(limit) +
                                " is below " + std::to_string(minimum));
  }
  if (limit > kMaxScanLimit) {
    throw std::invalid_argument(std::string(what) + ": limit exceeds 2^62");
  }
}

// Tallies are built per fixed-size block so that the merge order, and hence
// every rounding step, is the same for any thread count.
constexpr Int kTallyBlock = Int{1} << 24;

}  // namespace

// ---------------------------------------------------------------------------
// SieveSegment

SieveSegment::SieveSegment(Int lo, Int hi)
    : lo_(lo), hi_(hi), first_odd_(lo | 1), has_two_(lo <= 2 && 2 < hi) {
  const Int odd_count = hi > first_odd_ ? (hi - first_odd_ + 1) / 2 : 0;
  bits_.assign((odd_count + 63) / 64, ~std::uint64_t{0});
  if (const Int tail = odd_count % 64; tail != 0) {
    bits_.back() = (std::uint64_t{1} << tail) - 1;
  }
}

bool SieveSegment::is_prime(Int n) const {
  if (n < lo_ || n >= hi_) {
    throw std::out_of_range("SieveSegment::is_prime: " + std::to_string(n) +
                            " outside segment");
  }
  if (n == 2) return has_two_;
  if (n % 2 == 0) return false;
  const Int i = (n - first_odd_) / 2;
  return (bits_[i / 64] >> (i % 64)) & 1;
}

std::size_t SieveSegment::count() const {
  std::size_t total = has_two_ ? 1 : 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t SieveSegment::count_through(Int n) const {
  if (n < lo_) return 0;
  if (n >= hi_ - 1) return count();
  std::size_t total = (has_two_ && n >= 2) ? 1 : 0;
  if (n < first_odd_) return total;
  const Int last = (n - first_odd_) / 2;  // index of the last odd <= n
  const Int full_words = (last + 1) / 64;
  for (Int w = 0; w < full_words; ++w) total += std::popcount(bits_[w]);
  if (const Int rem = (last + 1) % 64; rem != 0) {
    total += std::popcount(bits_[full_words] & ((std::uint64_t{1} << rem) - 1));
  }
  return total;
}

std::vector<Int> SieveSegment::primes() const {
  std::vector<Int> out;
  out.reserve(count());
  for_each_prime([&](Int p) { out.push_back(p); });
  return out;
}

// ---------------------------------------------------------------------------
// SegmentedSieve

SegmentedSieve::SegmentedSieve(Int limit, std::size_t segment_size)
    : limit_(limit), segment_size_(segment_size) {
  check_limit(limit, 2, "SegmentedSieve");
  if (segment_size < 64) {
    throw std::invalid_argument("SegmentedSieve: segment size must be at least 64");
  }
  base_primes_ = small_primes_through(isqrt(limit));
}

SieveSegment SegmentedSieve::segment(Int lo, Int hi) const {
  if (lo < 2 || hi <= lo) {
    throw std::invalid_argument("sieve_segment: need 2 <= lo < hi, got [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (hi - lo > segment_size_) {
    throw std::invalid_argument("sieve_segment: range of " + std::to_string(hi - lo) +
                                " exceeds the segment budget " +
                                std::to_string(segment_size_));
  }
  if (hi - 1 > limit_) {
    throw std::invalid_argument("sieve_segment: range extends past the sieve limit");
  }

  SieveSegment seg(lo, hi);
  for (const Int p : base_primes_) {
    if (p == 2) continue;
    if (p * p >= hi) break;
    Int start = std::max(p * p, (lo + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (Int m = start; m < hi; m += 2 * p) {
      const Int i = (m - seg.first_odd_) / 2;
      seg.bits_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
  }
  return seg;
}

void SegmentedSieve::for_each_segment(
    Int lo, Int hi, unsigned threads,
    const std::function<void(const SieveSegment&)>& f) const {
  const Int size = segment_size_;
  if (threads <= 1) {
    for (Int s = lo; s < hi; s += std::min<Int>(size, hi - s)) {
      f(segment(s, std::min(s + size, hi)));
    }
    return;
  }
  std::vector<std::optional<SieveSegment>> batch(threads);
  for (Int s = lo; s < hi;) {
    std::vector<std::thread> workers;
    unsigned used = 0;
    for (; used < threads && s < hi; ++used) {
      const Int e = std::min(s + size, hi);
      workers.emplace_back([this, &batch, used, s, e] { batch[used].emplace(segment(s, e)); });
      s = e;
    }
    for (auto& w : workers) w.join();
    for (unsigned i = 0; i < used; ++i) {
      f(*batch[i]);
      batch[i].reset();
    }
  }
}

SieveSegment sieve_segment(Int lo, Int hi, std::size_t budget) {
  if (lo < 2 || hi <= lo) {
    throw std::invalid_argument("sieve_segment: need 2 <= lo < hi, got [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (hi - lo > budget) {
    throw std::invalid_argument("sieve_segment: range exceeds the segment budget");
  }
  const SegmentedSieve sieve(hi - 1, std::max<std::size_t>(budget, 64));
  return sieve.segment(lo, hi);
}

// ---------------------------------------------------------------------------
// Prime powers

std::vector<PrimePower> higher_prime_powers(Int limit) {
  std::vector<PrimePower> out;
  for (const Int p : small_primes_through(isqrt(limit))) {
    const double logp = std::log(static_cast<double>(p));
    Int v = p;
    for (unsigned k = 2; v <= limit / p; ++k) {
      v *= p;
      out.push_back({p, k, v, logp});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
  return out;
}

void iterate_prime_powers(Int limit, const PrimePowerVisitor& visitor,
                          const SieveOptions& options) {
  check_limit(limit, 2, "iterate_prime_powers");
  const SegmentedSieve sieve(limit, options.segment_size);
  const auto powers = higher_prime_powers(limit);
  std::size_t next = 0;
  sieve.for_each_segment(2, limit + 1, options.threads, [&](const SieveSegment& seg) {
    seg.for_each_prime([&](Int p) {
      while (next < powers.size() && powers[next].value < p) visitor(powers[next++]);
      visitor(PrimePower{p, 1, p, std::log(static_cast<double>(p))});
    });
  });
  while (next < powers.size()) visitor(powers[next++]);
}

// ---------------------------------------------------------------------------
// ResidueTally

ResidueTally::ResidueTally(Int q, Int start)
    : q_(q), start_(start), frontier_(start - 1) {
  if (q < 3) {
    throw std::invalid_argument("ResidueTally: modulus must be >= 3, got " + std::to_string(q));
  }
  if (start < 2) throw std::invalid_argument("ResidueTally: start must be >= 2");
  reduced_.assign(q, 0);
  for (Int a = 1; a < q; ++a) {
    if (std::gcd(a, q) == 1) {
      reduced_[a] = 1;
      classes_.push_back(a);
    }
  }
  counts_.assign(q, 0);
  psi_.assign(q, CompensatedSum{});
}

bool ResidueTally::is_reduced(Int a) const { return a < q_ && reduced_[a] != 0; }

Int ResidueTally::count(Int a) const {
  if (!is_reduced(a)) {
    throw std::invalid_argument("ResidueTally: class " + std::to_string(a) +
                                " is not a reduced residue mod " + std::to_string(q_));
  }
  return counts_[a];
}

double ResidueTally::psi(Int a) const {
  if (!is_reduced(a)) {
    throw std::invalid_argument("ResidueTally: class " + std::to_string(a) +
                                " is not a reduced residue mod " + std::to_string(q_));
  }
  return psi_[a].value();
}

Int ResidueTally::total_count() const {
  Int total = offclass_count_;
  for (const Int a : classes_) total += counts_[a];
  return total;
}

double ResidueTally::total_psi() const {
  CompensatedSum total = offclass_psi_;
  for (const Int a : classes_) total += psi_[a];
  return total.value();
}

void ResidueTally::add(const PrimePower& pp) {
  if (pp.value <= frontier_) {
    throw std::invalid_argument("ResidueTally::add: value " + std::to_string(pp.value) +
                                " is not beyond the frontier " + std::to_string(frontier_));
  }
  const Int a = pp.value % q_;
  if (reduced_[a]) {
    if (pp.is_prime()) ++counts_[a];
    psi_[a] += pp.logp;
  } else {
    if (pp.is_prime()) ++offclass_count_;
    offclass_psi_ += pp.logp;
  }
  frontier_ = pp.value;
}

void ResidueTally::advance_to(Int x) {
  if (x < frontier_) {
    throw std::invalid_argument("ResidueTally::advance_to: cannot move the frontier back");
  }
  frontier_ = x;
}

ResidueTally ResidueTally::merged(const ResidueTally& other) const {
  if (other.q_ != q_) throw std::invalid_argument("ResidueTally::merged: modulus mismatch");
  const ResidueTally* first = this;
  const ResidueTally* second = &other;
  if (other.frontier_ + 1 == start_) {
    std::swap(first, second);
  } else if (frontier_ + 1 != other.start_) {
    throw std::invalid_argument("ResidueTally::merged: ranges are not adjacent");
  }
  ResidueTally out = *first;
  out.frontier_ = second->frontier_;
  for (const Int a : classes_) {
    out.counts_[a] += second->counts_[a];
    out.psi_[a] += second->psi_[a];
  }
  out.offclass_count_ += second->offclass_count_;
  out.offclass_psi_ += second->offclass_psi_;
  return out;
}

ResidueTally tally_range(const SegmentedSieve& sieve, std::span<const PrimePower> powers,
                         Int lo, Int hi, Int q) {
  ResidueTally tally(q, lo);
  auto next = std::lower_bound(powers.begin(), powers.end(), lo,
                               [](const PrimePower& pp, Int v) { return pp.value < v; });
  sieve.for_each_segment(lo, hi + 1, 1, [&](const SieveSegment& seg) {
    seg.for_each_prime([&](Int p) {
      while (next != powers.end() && next->value < p) tally.add(*next++);
      tally.add(PrimePower{p, 1, p, std::log(static_cast<double>(p))});
    });
  });
  while (next != powers.end() && next->value <= hi) tally.add(*next++);
  tally.advance_to(hi);
  return tally;
}

ResidueTally tally_to(Int limit, Int q, const SieveOptions& options) {
  if (q < 3) {
    throw std::invalid_argument("tally_to: modulus must be >= 3, got " + std::to_string(q));
  }
  check_limit(limit, 2, "tally_to");
  const SegmentedSieve sieve(limit, options.segment_size);
  const auto powers = higher_prime_powers(limit);

  std::vector<std::pair<Int, Int>> blocks;
  for (Int lo = 2; lo <= limit;) {
    const Int hi = std::min(limit, lo + kTallyBlock - 1);
    blocks.emplace_back(lo, hi);
    lo = hi + 1;
  }

  std::vector<std::optional<ResidueTally>> parts(blocks.size());
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || blocks.size() == 1) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      parts[i].emplace(tally_range(sieve, powers, blocks[i].first, blocks[i].second, q));
    }
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < blocks.size(); i += threads) {
          parts[i].emplace(tally_range(sieve, powers, blocks[i].first, blocks[i].second, q));
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  ResidueTally total = std::move(*parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) total = total.merged(*parts[i]);
  return total;
}

// ---------------------------------------------------------------------------
// Prime counting

Int pi(Int x, const SieveOptions& options) {
  if (x < 2) return 0;
  const Int point = x;
  return pi_at(std::span<const Int>(&point, 1), options).front();
}

std::vector<Int> pi_at(std::span<const Int> points, const SieveOptions& options) {
  if (!std::is_sorted(points.begin(), points.end())) {
    throw std::invalid_argument("pi_at: points must be nondecreasing");
  }
  std::vector<Int> out(points.size(), 0);
  if (points.empty() || points.back() < 2) return out;
  const Int limit = points.back();
  check_limit(limit, 2, "pi_at");

  std::size_t next = 0;
  while (next < points.size() && points[next] < 2) ++next;
  Int before = 0;
  const SegmentedSieve sieve(limit, options.segment_size);
  sieve.for_each_segment(2, limit + 1, options.threads, [&](const SieveSegment& seg) {
    while (next < points.size() && points[next] < seg.hi()) {
      out[next] = before + seg.count_through(points[next]);
      ++next;
    }
    before += seg.count();
  });
  return out;
}

}  // namespace chebias
