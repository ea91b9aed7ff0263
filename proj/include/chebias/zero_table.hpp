#pragma once

// Ordinates of non-trivial zeros of zeta or a Dirichlet L-function.
//
// File format: ASCII, one positive decimal per line, strictly increasing.
// Lines starting with '#' and blank lines are ignored. The first
// non-comment line may be "label: <text>".

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebias {

class ZeroTableError : public std::runtime_error {
 public:
  ZeroTableError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ZeroTable {
 public:
  ZeroTable(std::string label, std::vector<double> gammas);

  static ZeroTable parse(std::istream& in, const std::string& source = "<stream>");
  static ZeroTable load(const std::filesystem::path& path);

  const std::string& label() const { return label_; }
  const std::vector<double>& gammas() const { return gammas_; }
  std::size_t size() const { return gammas_.size(); }

  ZeroTable prefix(std::size_t n) const;

 private:
  std::string label_;
  std::vector<double> gammas_;
};

}  // namespace chebias
