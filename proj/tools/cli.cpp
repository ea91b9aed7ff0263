#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#ifndef CHEB_BIAS_DATA_DIR
#define CHEB_BIAS_DATA_DIR "data"
#endif

namespace chebias::cli {
namespace {

constexpr const char* kDefaultZeroFile = "zeta_zeros_100.txt";
constexpr Int kTable1Moduli[] = {4, 11, 13, 163};

// Published (q, x) -> delta values: record levels and first negative values.
const std::map<std::pair<Int, Int>, std::int64_t>& champion_anchors() {
  static const std::map<std::pair<Int, Int>, std::int64_t> anchors = {
      {{4, 26861}, -1},     {{4, 359327}, 105},    {{4, 951867937}, -48},
      {{163, 15073}, -1},   {{163, 68491}, 74},    {{163, 174637}, -86},
      {{13, 2083}, -1},     {{13, 263881}, 123},   {{13, 905761}, -40},
      {{11, 638567}, 158},  {{11, 1867321}, -32},
  };
  return anchors;
}

// Published locations of maximal negative bias for q = 4, paired with the
// published sizes of the negative zones around them.
constexpr std::pair<Int, Int> kZoneAnchors4[] = {
    {26861, 2},           {623681, 410},           {12366589, 15358},
    {951867937, 41346},   {6345026833, 42233786},  {18699356321, 416889978},
};

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  CsvWriter& header(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
      if (!first) out_ << ',';
      out_ << n;
      first = false;
    }
    out_ << '\n';
    return *this;
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((emit(fields, first)), ...);
    out_ << '\n';
  }

 private:
  void sep(bool& first) {
    if (!first) out_ << ',';
    first = false;
  }
  void emit(double v, bool& first) {
    sep(first);
    out_ << format_real(v, precision_);
  }
  void emit(const std::string& s, bool& first) {
    sep(first);
    out_ << s;
  }
  void emit(const char* s, bool& first) {
    sep(first);
    out_ << s;
  }
  template <typename I>
    requires std::is_integral_v<I>
  void emit(I v, bool& first) {
    sep(first);
    out_ << v;
  }

  std::ostream& out_;
  int precision_;
};

Int parse_count(const std::string& text) {
  // Accepts plain integers and exact scientific forms such as 1e7 or 2.5e6.
  const char* b = text.data();
  const char* e = b + text.size();
  Int v = 0;
  if (auto [p, ec] = std::from_chars(b, e, v); ec == std::errc{} && p == e) return v;
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(b, e, d); ec == std::errc{} && p == e && d >= 0 &&
                                                d <= static_cast<double>(kMaxScanLimit) &&
                                                d == std::floor(d)) {
    return static_cast<Int>(d);
  }
  throw UsageError("not a nonnegative integer: '" + text + "'");
}

std::string optional_field(std::optional<std::int64_t> v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  if (limit < 3) throw UsageError("--limit must be at least 3");
  if (limit > kMaxScanLimit) throw UsageError("--limit must not exceed 2^62");
  if (!is_supported_modulus(modulus)) {
    throw UsageError("unsupported modulus " + std::to_string(modulus) +
                     " (use 4 or an odd prime)");
  }
  if (precision < 6 || precision > 17) throw UsageError("--precision must be in [6, 17]");
  if (segment_size < 64) throw UsageError("--segment-size must be at least 64");
  if (threads == 0) throw UsageError("--threads must be positive");
}

ScanOptions RunConfig::scan_options() const {
  ScanOptions opts;
  opts.sieve.segment_size = segment_size;
  opts.sieve.threads = threads;
  return opts;
}

std::string format_real(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, p);
}

std::string data_directory() {
  if (const char* env = std::getenv("CHEB_BIAS_DATA"); env != nullptr && *env != '\0') {
    return env;
  }
  return CHEB_BIAS_DATA_DIR;
}

std::string resolve_zero_table(const std::optional<std::string>& requested) {
  namespace fs = std::filesystem;
  if (!requested) return (fs::path(data_directory()) / kDefaultZeroFile).string();
  if (fs::exists(*requested)) return *requested;
  const fs::path bundled = fs::path(data_directory()) / *requested;
  if (fs::exists(bundled)) return bundled.string();
  return *requested;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  CsvWriter csv(out, cfg.precision);
  csv.header({"x", "delta", "delta_reg", "normalized", "fit_2_over_logx"});
  scan(cfg.modulus, cfg.limit, cfg.policy, [&](const BiasPoint& p) {
    csv.row(p.x, p.delta, p.delta_reg, p.normalized, 2.0 / std::log(static_cast<double>(p.x)));
  }, cfg.scan_options());
  return kOk;
}

int cmd_champions(const RunConfig& cfg, std::optional<int> epsilon, std::ostream& out) {
  cfg.validate();
  if (epsilon && *epsilon != 1 && *epsilon != -1) throw UsageError("--epsilon must be 1 or -1");
  const auto set = find_champions(cfg.modulus, cfg.limit, cfg.scan_options());
  CsvWriter csv(out, cfg.precision);
  csv.header({"n", "epsilon", "x", "delta", "delta_reg", "normalized", "fit_2_over_logx",
              "reference_delta"});
  const auto& anchors = champion_anchors();
  for (const auto* list : {&set.positive, &set.negative}) {
    for (const auto& r : *list) {
      if (epsilon && r.epsilon != *epsilon) continue;
      std::optional<std::int64_t> ref;
      if (auto it = anchors.find({cfg.modulus, r.x}); it != anchors.end()) ref = it->second;
      csv.row(r.n, r.epsilon, r.x, r.epsilon * r.n, r.delta_reg, r.normalized,
              2.0 / std::log(static_cast<double>(r.x)), optional_field(ref));
    }
  }
  return kOk;
}

int cmd_zones(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto list = zones(cfg.modulus, cfg.limit, cfg.scan_options());
  CsvWriter csv(out, cfg.precision);
  csv.header({"start", "end", "sign", "length", "prime_count", "reference_location",
              "reference_length"});
  for (const auto& z : list) {
    std::string ref_loc, ref_len;
    if (cfg.modulus == 4 && z.sign < 0) {
      for (const auto& [loc, len] : kZoneAnchors4) {
        if (loc >= z.start && loc < z.end) {
          ref_loc = std::to_string(loc);
          ref_len = std::to_string(len);
        }
      }
    }
    csv.row(z.start, z.end, z.sign, z.length, z.prime_count, ref_loc, ref_len);
  }
  return kOk;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto d = log_density(cfg.modulus, cfg.limit, cfg.scan_options());
  CsvWriter csv(out, cfg.precision);
  csv.header({"modulus", "limit", "d_plus", "d_minus", "d_zero", "harmonic_total"});
  csv.row(cfg.modulus, cfg.limit, d.plus, d.minus, d.zero, d.harmonic_total);
  return kOk;
}

int cmd_bias_sum(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const BiasModulus modulus(cfg.modulus);
  const auto set = find_champions(cfg.modulus, cfg.limit, cfg.scan_options());
  const auto b = bias_sum(modulus, set);
  CsvWriter csv(out, cfg.precision);
  csv.header({"modulus", "limit", "bias_b", "bias_raw", "champions_plus", "champions_minus"});
  csv.row(cfg.modulus, cfg.limit, b.normalized, b.raw, set.positive.size(), set.negative.size());
  return kOk;
}

int cmd_table1(const RunConfig& cfg, const std::vector<std::pair<Int, Int>>& limits,
               std::ostream& out) {
  std::map<Int, Int> per_modulus(limits.begin(), limits.end());
  for (const auto& [q, limit] : per_modulus) {
    if (std::find(std::begin(kTable1Moduli), std::end(kTable1Moduli), q) ==
        std::end(kTable1Moduli)) {
      throw UsageError("table1 covers moduli 4, 11, 13, 163; got " + std::to_string(q));
    }
  }
  CsvWriter csv(out, cfg.precision);
  csv.header({"modulus", "bias_b", "log_density_plus", "limit"});
  for (const Int q : kTable1Moduli) {
    RunConfig c = cfg;
    c.modulus = q;
    if (auto it = per_modulus.find(q); it != per_modulus.end()) c.limit = it->second;
    c.validate();
    const auto b = bias_sum(q, c.limit, c.scan_options());
    const auto d = log_density(q, c.limit, c.scan_options());
    csv.row(q, b.normalized, d.plus, c.limit);
  }
  return kOk;
}

int cmd_explicit(const RunConfig& cfg, Int x_min, Int x_max, std::size_t samples,
                 std::ostream& out) {
  if (cfg.precision < 6 || cfg.precision > 17) throw UsageError("--precision must be in [6, 17]");
  if (x_min < 2 || x_max < x_min || samples == 0) {
    throw UsageError("empty x-range: need 2 <= --x-min <= --x-max and --samples >= 1");
  }
  const std::string path = resolve_zero_table(cfg.zeros_path);
  if (!std::filesystem::exists(path)) throw IoError("cannot open zero table " + path);
  const ZeroTable zeros = ZeroTable::load(path);

  const auto xs = log_spaced(x_min, x_max, samples);
  SieveOptions sieve;
  sieve.segment_size = cfg.segment_size;
  sieve.threads = cfg.threads;
  const auto actual = li_minus_pi(xs, sieve);

  out << "# zeros: " << zeros.label() << " (" << zeros.size() << " ordinates)\n";
  CsvWriter csv(out, cfg.precision);
  csv.header({"x", "predicted", "actual_delta"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv.row(xs[i], explicit_delta(static_cast<double>(xs[i]), zeros), actual[i]);
  }
  return kOk;
}

int cmd_variance(const RunConfig& cfg, std::ostream& out) {
  const std::string path = resolve_zero_table(cfg.zeros_path);
  if (!std::filesystem::exists(path)) throw IoError("cannot open zero table " + path);
  const ZeroTable zeros = ZeroTable::load(path);
  out << "# zeros: " << zeros.label() << '\n';
  CsvWriter csv(out, cfg.precision);
  csv.header({"terms", "variance"});
  for (std::size_t n = 1; n <= zeros.size(); ++n) csv.row(n, variance(zeros, n));
  return kOk;
}

int cmd_pi_approx(const RunConfig& cfg, const std::vector<Int>& xs, std::ostream& out) {
  if (xs.empty()) throw UsageError("pi-approx needs at least one --x");
  for (const Int x : xs) {
    if (x < 2) throw UsageError("pi-approx: x must be >= 2, got " + std::to_string(x));
  }
  std::vector<Int> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  SieveOptions sieve;
  sieve.segment_size = cfg.segment_size;
  sieve.threads = cfg.threads;
  const auto counts = pi_at(sorted, sieve);

  CsvWriter csv(out, cfg.precision);
  csv.header({"x", "pi", "li", "pi_approx", "err_li", "err_approx"});
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = static_cast<double>(counts[i]);
    const double li = logint(static_cast<double>(sorted[i]));
    const double approx = pi_approx(sorted[i], sieve);
    csv.row(sorted[i], counts[i], li, approx, li - p, approx - p);
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, const ScanOptions& base) {
  cfg.validate();
  ScanOptions opts = cfg.scan_options();
  opts.source = base.source;
  const auto report = check_positivity(cfg.modulus, cfg.limit, opts);
  out << "modulus " << cfg.modulus << ", limit " << cfg.limit << ": checked " << report.checked
      << " primes from x = " << report.first_checked << '\n';
  if (report.checked > 0) {
    out << "minimum delta_reg/sqrt(x) = " << format_real(report.min_normalized, cfg.precision)
        << " at x = " << report.min_normalized_at << '\n';
  }
  if (!report.ok) {
    out << "VIOLATION: delta_reg(" << *report.witness << ", " << cfg.modulus
        << ") = " << format_real(report.witness_value, cfg.precision) << " <= 0\n";
    return kViolation;
  }
  out << "OK: delta_reg > 0 at every checked prime\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// Entry point

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev bias, Robin's B-function and the regularized bias"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string modulus_text = "4", limit_text = "1000000";
  std::string policy_text = "champions";
  std::optional<std::string> zeros;
  app.add_option("--modulus", modulus_text, "Modulus q (4 or an odd prime)");
  app.add_option("--limit", limit_text, "Scan limit (integer, 1e7 style accepted)");
  app.add_option("--out", cfg.output_path, "Output file ('-' for stdout)");
  app.add_option("--zeros", zeros, "Zero table file or bundled table name");
  app.add_option("--threads", cfg.threads, "Segments sieved concurrently");
  app.add_option("--segment-size", cfg.segment_size, "Sieve segment length in integers");
  app.add_option("--precision", cfg.precision, "Significant digits for reals (6-17)");

  auto* scan_cmd = app.add_subcommand("scan", "Bias points at champions or at every prime");
  scan_cmd->add_option("--policy", policy_text, "champions | all-primes");
  auto* champions_cmd = app.add_subcommand("champions", "Prime champions of either sign");
  std::optional<int> epsilon;
  champions_cmd->add_option("--epsilon", epsilon, "Restrict to +1 or -1");
  auto* zones_cmd = app.add_subcommand("zones", "Maximal constant-sign intervals of delta");
  auto* density_cmd = app.add_subcommand("density", "Logarithmic densities of the sign sets");
  auto* bias_sum_cmd = app.add_subcommand("bias-sum", "Overall bias measure b(q)");
  auto* table1_cmd = app.add_subcommand("table1", "b(q) and d_plus for q = 4, 11, 13, 163");
  std::vector<std::string> limits_text;
  table1_cmd->add_option("--limits", limits_text, "Per-modulus limits as q=limit");
  auto* explicit_cmd = app.add_subcommand("explicit", "Explicit-formula prediction of li - pi");
  std::string x_min_text = "1000", x_max_text = "10000000";
  std::size_t samples = 200;
  explicit_cmd->add_option("--x-min", x_min_text, "Smallest sample");
  explicit_cmd->add_option("--x-max", x_max_text, "Largest sample");
  explicit_cmd->add_option("--samples", samples, "Number of log-spaced samples");
  auto* variance_cmd = app.add_subcommand("variance", "Partial sums of the variance");
  auto* pi_approx_cmd = app.add_subcommand("pi-approx", "Three-term prime counting function");
  std::vector<std::string> x_text;
  pi_approx_cmd->add_option("--x", x_text, "Evaluation points")->expected(1, -1);
  auto* verify_cmd = app.add_subcommand("verify", "Check delta_reg > 0 at every prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    cfg.modulus = parse_count(modulus_text);
    cfg.limit = parse_count(limit_text);
    cfg.zeros_path = zeros;
    if (policy_text == "champions") {
      cfg.policy = SamplingPolicy::Champions;
    } else if (policy_text == "all-primes") {
      cfg.policy = SamplingPolicy::AllPrimes;
    } else {
      throw UsageError("--policy must be 'champions' or 'all-primes'");
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.output_path != "-") {
      file.open(cfg.output_path, std::ios::binary);
      if (!file) throw IoError("cannot open output file " + cfg.output_path);
      sink = &file;
    }

    int code = kOk;
    if (*scan_cmd) {
      code = cmd_scan(cfg, *sink);
    } else if (*champions_cmd) {
      code = cmd_champions(cfg, epsilon, *sink);
    } else if (*zones_cmd) {
      code = cmd_zones(cfg, *sink);
    } else if (*density_cmd) {
      code = cmd_density(cfg, *sink);
    } else if (*bias_sum_cmd) {
      code = cmd_bias_sum(cfg, *sink);
    } else if (*table1_cmd) {
      if (app.get_option("--limit")->count() == 0 && limits_text.size() < 4) {
        throw UsageError("table1 needs an explicit --limit (or --limits for all four moduli)");
      }
      std::vector<std::pair<Int, Int>> limits;
      for (const auto& item : limits_text) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--limits entries look like q=limit");
        limits.emplace_back(parse_count(item.substr(0, eq)), parse_count(item.substr(eq + 1)));
      }
      code = cmd_table1(cfg, limits, *sink);
    } else if (*explicit_cmd) {
      code = cmd_explicit(cfg, parse_count(x_min_text), parse_count(x_max_text), samples, *sink);
    } else if (*variance_cmd) {
      code = cmd_variance(cfg, *sink);
    } else if (*pi_approx_cmd) {
      std::vector<Int> xs;
      for (const auto& t : x_text) xs.push_back(parse_count(t));
      code = cmd_pi_approx(cfg, xs, *sink);
    } else if (*verify_cmd) {
      code = cmd_verify(cfg, *sink);
    }

    sink->flush();
    if (!*sink) throw IoError("write failed");
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ZeroTableError& e) {
    err << "error: malformed zero table: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace chebias::cli
