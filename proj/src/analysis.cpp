#include "chebias/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chebias {
namespace {

void require_scan_limit(Int limit, const char* what) {
  if (limit < 3) {
    throw std::invalid_argument(std::string(what) + ": limit must be >= 3, got " +
                                std::to_string(limit));
  }
}

int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }

// Champion bookkeeping shared by scan() and find_champions().
class ChampionTracker {
 public:
  // Returns the signs (+1, -1) for which x set a new record.
  std::vector<int> update(std::int64_t delta, Int x) {
    std::vector<int> fired;
    if (delta > best_plus_) {
      if (delta != best_plus_ + 1) skipped(delta, x);
      best_plus_ = delta;
      fired.push_back(1);
    }
    if (-delta > best_minus_) {
      if (-delta != best_minus_ + 1) skipped(delta, x);
      best_minus_ = -delta;
      fired.push_back(-1);
    }
    return fired;
  }

 private:
  [[noreturn]] static void skipped(std::int64_t delta, Int x) {
    throw std::logic_error("champion level skipped at x = " + std::to_string(x) +
                           " (delta = " + std::to_string(delta) + ")");
  }

  std::int64_t best_plus_ = 0;
  std::int64_t best_minus_ = 0;
};

}  // namespace

RunningBias walk_primes(const BiasModulus& modulus, Int limit, const ScanOptions& options,
                        const std::function<void(const RunningBias&, Int)>& at_prime) {
  RunningBias state(modulus);
  const PrimePowerVisitor visit = [&](const PrimePower& pp) {
    if (pp.value > limit) return;
    state.add(pp);
    if (pp.is_prime()) at_prime(state, pp.value);
  };
  if (options.source) {
    options.source(limit, visit);
  } else {
    iterate_prime_powers(limit, visit, options.sieve);
  }
  state.advance_to(limit);
  return state;
}

void scan(Int q, Int limit, SamplingPolicy policy,
          const std::function<void(const BiasPoint&)>& sink, const ScanOptions& options) {
  require_scan_limit(limit, "scan");
  const BiasModulus modulus(q);
  ChampionTracker tracker;
  walk_primes(modulus, limit, options, [&](const RunningBias& state, Int x) {
    if (q % x == 0) return;
    if (policy == SamplingPolicy::AllPrimes) {
      sink(state.point());
    } else if (!tracker.update(state.delta(), x).empty()) {
      sink(state.point());
    }
  });
}

ChampionSet find_champions(Int q, Int limit, const ScanOptions& options) {
  require_scan_limit(limit, "champions");
  const BiasModulus modulus(q);
  ChampionTracker tracker;
  ChampionSet out;
  walk_primes(modulus, limit, options, [&](const RunningBias& state, Int x) {
    if (q % x == 0) return;
    for (const int eps : tracker.update(state.delta(), x)) {
      ChampionRecord rec;
      rec.epsilon = eps;
      rec.n = eps * state.delta();
      rec.x = x;
      rec.delta_reg = state.delta_reg();
      rec.normalized = rec.delta_reg / std::sqrt(static_cast<double>(x));
      (eps > 0 ? out.positive : out.negative).push_back(rec);
    }
  });
  return out;
}

std::vector<ChampionRecord> champions(Int q, Int limit, int epsilon,
                                      const ScanOptions& options) {
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("champions: epsilon must be +1 or -1");
  auto set = find_champions(q, limit, options);
  return epsilon > 0 ? std::move(set.positive) : std::move(set.negative);
}

BiasSum bias_sum(const BiasModulus& modulus, const ChampionSet& set) {
  CompensatedSum raw;
  for (const auto* list : {&set.positive, &set.negative}) {
    for (const auto& rec : *list) {
      raw += static_cast<double>(rec.epsilon * rec.n) / static_cast<double>(rec.x);
    }
  }
  return {raw.value(), raw.value() * modulus.normalization()};
}

BiasSum bias_sum(Int q, Int limit, const ScanOptions& options) {
  return bias_sum(BiasModulus(q), find_champions(q, limit, options));
}

LogDensity log_density(Int q, Int limit, const ScanOptions& options) {
  require_scan_limit(limit, "log_density");
  CompensatedSum bins[3];  // minus, zero, plus
  Int run_start = 1;
  int run_sign = 0;
  walk_primes(BiasModulus(q), limit, options, [&](const RunningBias& state, Int x) {
    const int s = sign_of(state.delta());
    if (s == run_sign) return;
    bins[run_sign + 1] += harmonic_range(run_start, x - 1);
    run_start = x;
    run_sign = s;
  });
  bins[run_sign + 1] += harmonic_range(run_start, limit);

  const double scale = 1.0 / std::log(static_cast<double>(limit));
  LogDensity out;
  out.minus = bins[0].value() * scale;
  out.zero = bins[1].value() * scale;
  out.plus = bins[2].value() * scale;
  out.harmonic_total = harmonic_range(1, limit) * scale;
  return out;
}

std::vector<Zone> zones(Int q, Int limit, const ScanOptions& options) {
  require_scan_limit(limit, "zones");
  std::vector<Zone> out;
  Zone current{2, 0, 0, 0, 0};
  walk_primes(BiasModulus(q), limit, options, [&](const RunningBias& state, Int x) {
    const int s = sign_of(state.delta());
    if (x == current.start) {
      current.sign = s;
      current.prime_count = 1;
      return;
    }
    if (s == current.sign) {
      ++current.prime_count;
      return;
    }
    current.end = x;
    current.length = current.end - current.start;
    out.push_back(current);
    current = Zone{x, 0, s, 0, 1};
  });
  current.end = limit + 1;
  current.length = current.end - current.start;
  out.push_back(current);
  return out;
}

std::vector<std::int64_t> delta_at(Int q, std::span<const Int> points,
                                   const ScanOptions& options) {
  if (!std::is_sorted(points.begin(), points.end())) {
    throw std::invalid_argument("delta_at: points must be nondecreasing");
  }
  const BiasModulus modulus(q);
  std::vector<std::int64_t> out(points.size(), 0);
  if (points.empty() || points.back() < 2) return out;

  std::size_t next = 0;
  std::int64_t before = 0;
  const auto final_state =
      walk_primes(modulus, points.back(), options, [&](const RunningBias& state, Int x) {
        while (next < points.size() && points[next] < x) out[next++] = before;
        before = state.delta();
      });
  while (next < points.size()) out[next++] = final_state.delta();
  return out;
}

PositivityReport check_positivity(Int q, Int limit, const ScanOptions& options) {
  require_scan_limit(limit, "verify");
  PositivityReport report;
  bool started = false;
  walk_primes(BiasModulus(q), limit, options, [&](const RunningBias& state, Int x) {
    if (!started) {
      if (!state.both_sides_populated()) return;
      started = true;
      report.first_checked = x;
    }
    const double v = state.delta_reg();
    const double normalized = v / std::sqrt(static_cast<double>(x));
    if (report.checked == 0 || normalized < report.min_normalized) {
      report.min_normalized = normalized;
      report.min_normalized_at = x;
    }
    ++report.checked;
    if (!(v > 0.0) && !report.witness) {
      report.ok = false;
      report.witness = x;
      report.witness_value = v;
    }
  });
  return report;
}

double explicit_delta(double x, const ZeroTable& zeros, std::optional<std::size_t> terms) {
  if (!(x >= 2.0)) throw std::invalid_argument("explicit_delta: x must be >= 2");
  const std::size_t n = terms.value_or(zeros.size());
  if (n > zeros.size()) throw std::invalid_argument("explicit_delta: more terms than zeros");
  const double logx = std::log(x);
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = zeros.gammas()[i];
    const double alpha = std::atan(1.0 / (2.0 * g));
    sum += std::sin(g * logx + alpha) / std::sqrt(0.25 + g * g);
  }
  return std::sqrt(x) / logx * (1.0 + 2.0 * sum.value());
}

double variance(const ZeroTable& zeros, std::optional<std::size_t> terms) {
  const std::size_t n = terms.value_or(zeros.size());
  if (n > zeros.size()) throw std::invalid_argument("variance: more terms than zeros");
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = zeros.gammas()[i];
    sum += 2.0 / (0.25 + g * g);
  }
  return sum.value();
}

std::vector<double> li_minus_pi(std::span<const Int> points, const SieveOptions& options) {
  const auto counts = pi_at(points, options);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = logint(static_cast<double>(points[i])) - static_cast<double>(counts[i]);
  }
  return out;
}

std::vector<Int> log_spaced(Int lo, Int hi, std::size_t n) {
  if (lo < 2 || hi < lo || n == 0) throw std::invalid_argument("log_spaced: empty range");
  if (n == 1) return {lo};
  std::vector<Int> out(n);
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = static_cast<Int>(std::llround(std::exp(a + t * (b - a))));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("pearson_correlation: need two equal-length samples");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace chebias
