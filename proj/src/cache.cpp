#include "hookdist/cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <unistd.h>

namespace hookdist {

namespace {

constexpr std::string_view kMagic = "hookdist-series";

std::string sanitize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.' || c == '=';
    out.push_back(keep ? c : '_');
  }
  return out;
}

bool expect_field(std::istream& in, std::string_view name, std::string& value) {
  std::string line;
  if (!std::getline(in, line)) return false;
  if (line.size() < name.size() + 1 || line.compare(0, name.size(), name) != 0 || line[name.size()] != ' ')
    return false;
  value = line.substr(name.size() + 1);
  return true;
}

}  // namespace

SeriesCache::SeriesCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<SeriesCache> SeriesCache::from_env() {
  const char* dir = std::getenv(kCacheDirEnv);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return SeriesCache(dir);
}

std::filesystem::path SeriesCache::file_for(std::string_view kind, std::string_view params) const {
  return dir_ / fmt::format("{}-{}.series", sanitize(kind), sanitize(params));
}

std::optional<IntSeries> SeriesCache::load(std::string_view kind, std::string_view params) const {
  const auto path = file_for(kind, params);
  std::ifstream in(path);
  if (!in) return std::nullopt;

  const auto corrupt = [&](std::string_view what) {
    return CacheCorruption(fmt::format("cache file {}: {}", path.string(), what));
  };

  std::string value;
  if (!expect_field(in, kMagic, value)) throw corrupt("missing format header");
  if (value != std::to_string(kFormatVersion)) throw corrupt(fmt::format("unsupported format version '{}'", value));
  if (!expect_field(in, "kind", value) || value != kind) throw corrupt("kind does not match key");
  if (!expect_field(in, "params", value) || value != params) throw corrupt("params do not match key");
  if (!expect_field(in, "order", value)) throw corrupt("missing order");

  std::size_t order = 0;
  try {
    std::size_t used = 0;
    order = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw corrupt("malformed order");
  }

  std::vector<BigInt> coeffs;
  coeffs.reserve(order + 1);
  std::string line;
  while (std::getline(in, line)) {
    BigInt c;
    if (line.empty() || c.set_str(line, 10) != 0) throw corrupt(fmt::format("bad coefficient at line {}", coeffs.size()));
    coeffs.push_back(std::move(c));
  }
  if (coeffs.size() != order + 1) throw corrupt(fmt::format("expected {} coefficients, found {}", order + 1, coeffs.size()));
  return IntSeries(std::move(coeffs));
}

void SeriesCache::store(std::string_view kind, std::string_view params, const IntSeries& series) const {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::create_directories(dir_);
  const auto path = file_for(kind, params);
  auto tmp = path;
  tmp += fmt::format(".tmp.{}.{}", static_cast<long>(::getpid()), counter++);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write cache file {}", tmp.string()));
    out << kMagic << ' ' << kFormatVersion << '\n'
        << "kind " << kind << '\n'
        << "params " << params << '\n'
        << "order " << series.order() << '\n';
    for (const auto& c : series.coeffs()) out << c.get_str(10) << '\n';
    out.flush();
    if (!out) throw std::runtime_error(fmt::format("short write to cache file {}", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

IntSeries SeriesCache::get_or_compute(std::string_view kind, std::string_view params, std::size_t order,
                                      const std::function<IntSeries(std::size_t)>& compute) const {
  if (auto hit = load(kind, params); hit && hit->order() >= order) {
    return hit->order() == order ? std::move(*hit) : hit->truncated(order);
  }
  IntSeries fresh = compute(order);
  store(kind, params, fresh);
  return fresh;
}

}  // namespace hookdist
