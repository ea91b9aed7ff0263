#include "chebias/zero_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace chebias {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ZeroTableError::ZeroTableError(const std::string& source, std::size_t line,
                               const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

ZeroTable::ZeroTable(std::string label, std::vector<double> gammas)
    : label_(std::move(label)), gammas_(std::move(gammas)) {
  if (gammas_.empty()) throw std::invalid_argument("zero table is empty");
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    if (!(gammas_[i] > 0.0) || !std::isfinite(gammas_[i])) {
      throw std::invalid_argument("zero table entry " + std::to_string(i + 1) +
                                  " is not a positive number");
    }
    if (i > 0 && !(gammas_[i] > gammas_[i - 1])) {
      throw std::invalid_argument("zero table entry " + std::to_string(i + 1) +
                                  " is not strictly increasing");
    }
  }
}

ZeroTable ZeroTable::parse(std::istream& in, const std::string& source) {
  std::string label;
  std::vector<double> gammas;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("label:", 0) == 0) {
      if (seen_content) throw ZeroTableError(source, line_no, "label must come first");
      label = trim(line.substr(6));
      seen_content = true;
      continue;
    }
    seen_content = true;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw ZeroTableError(source, line_no, "not a decimal number: '" + line + "'");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ZeroTableError(source, line_no, "zero ordinate must be positive");
    }
    if (!gammas.empty() && !(value > gammas.back())) {
      throw ZeroTableError(source, line_no, "entries must be strictly increasing");
    }
    gammas.push_back(value);
  }
  if (gammas.empty()) throw ZeroTableError(source, line_no, "no zeros in table");
  return ZeroTable(label.empty() ? source : label, std::move(gammas));
}

ZeroTable ZeroTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open zero table " + path.string());
  return parse(in, path.string());
}

ZeroTable ZeroTable::prefix(std::size_t n) const {
  if (n == 0 || n > gammas_.size()) {
    throw std::invalid_argument("zero table prefix length out of range");
  }
  return ZeroTable(label_, std::vector<double>(gammas_.begin(), gammas_.begin() + n));
}

}  // namespace chebias
