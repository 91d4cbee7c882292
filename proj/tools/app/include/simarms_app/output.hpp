#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simarms/runner.hpp"

namespace simarms::app {

inline constexpr std::string_view kRegretCsvHeader = "t,mean_regret,ci_lower,ci_upper";

/// One row per logged round, fixed six-decimal values.
void write_regret_csv(std::ostream& out, const AggregateResult& result, std::span<const std::uint64_t> rounds);

/// Build-time `git describe` string (falls back to the project version).
std::string_view version_string();

/// Ordered key = value lines.
class Manifest {
 public:
  void add(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Writes via a temporary file and a rename.
void write_file(const std::filesystem::path& path, std::string_view content);

std::string fixed6(double v);

}  // namespace simarms::app
