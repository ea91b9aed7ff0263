#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chebias/analysis.hpp"

namespace chebias::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kIoError = 3,
};

struct RunConfig {
  Int modulus = 4;
  Int limit = 1000000;
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned threads = 1;
  std::string output_path = "-";
  std::optional<std::string> zeros_path;
  SamplingPolicy policy = SamplingPolicy::Champions;
  int precision = 12;

  // Throws UsageError when an invariant is violated.
  void validate() const;
  ScanOptions scan_options() const;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Locale-independent, '.'-decimal, `precision` significant digits.
std::string format_real(double v, int precision);

// Directory holding the bundled zero tables: $CHEB_BIAS_DATA if set,
// otherwise the directory compiled in at build time.
std::string data_directory();
std::string resolve_zero_table(const std::optional<std::string>& requested);

// Each command writes CSV (or a report) to `out` and returns an ExitCode.
// Errors that map to exit codes are thrown as UsageError / IoError /
// ZeroTableError and translated by run().
int cmd_scan(const RunConfig& cfg, std::ostream& out);
int cmd_champions(const RunConfig& cfg, std::optional<int> epsilon, std::ostream& out);
int cmd_zones(const RunConfig& cfg, std::ostream& out);
int cmd_density(const RunConfig& cfg, std::ostream& out);
int cmd_bias_sum(const RunConfig& cfg, std::ostream& out);
int cmd_table1(const RunConfig& cfg, const std::vector<std::pair<Int, Int>>& limits,
               std::ostream& out);
int cmd_explicit(const RunConfig& cfg, Int x_min, Int x_max, std::size_t samples,
                 std::ostream& out);
int cmd_variance(const RunConfig& cfg, std::ostream& out);
int cmd_pi_approx(const RunConfig& cfg, const std::vector<Int>& xs, std::ostream& out);
// `base` carries an optional injected prime-power source.
int cmd_verify(const RunConfig& cfg, std::ostream& out, const ScanOptions& base = {});

// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chebias::cli
