#include "simarms_app/output.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef SIMARMS_VERSION_STRING
#define SIMARMS_VERSION_STRING "unknown"
#endif

namespace simarms::app {

std::string fixed6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

void write_regret_csv(std::ostream& out, const AggregateResult& result, std::span<const std::uint64_t> rounds) {
  out << kRegretCsvHeader << '\n';
  for (std::uint64_t t : rounds) {
    if (t == 0 || t > result.mean.size()) throw std::out_of_range("write_regret_csv: round outside the trace");
    const std::size_t i = t - 1;
    out << t << ',' << fixed6(result.mean[i]) << ',' << fixed6(result.lower[i]) << ',' << fixed6(result.upper[i])
        << '\n';
  }
}

std::string_view version_string() { return SIMARMS_VERSION_STRING; }

void Manifest::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

std::string Manifest::str() const {
  std::string s;
  for (const auto& [k, v] : entries_) s += k + "=" + v + "\n";
  return s;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace simarms::app
