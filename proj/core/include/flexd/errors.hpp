#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flexd {

// Raised for invalid scenario/configuration input. `where` names the
// offending field (or link pair and slot) so messages stay actionable.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Raised when a truncated series cannot deliver a trustworthy value
// (insufficient truncation order or a negative intermediate). Carries the
// partial sums seen so far for diagnostics.
class SeriesError : public std::runtime_error {
 public:
  SeriesError(const std::string& what, std::vector<double> partial_sums)
      : std::runtime_error(what), partial_sums_(std::move(partial_sums)) {}

  const std::vector<double>& partial_sums() const noexcept { return partial_sums_; }

 private:
  std::vector<double> partial_sums_;
};

}  // namespace flexd
