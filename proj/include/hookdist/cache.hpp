#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hookdist/series.hpp"

namespace hookdist {

// A cache file exists but cannot be trusted: wrong format version, a
// header that does not match the requested key, or a truncated body.
class CacheCorruption : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "HOOKDIST_CACHE_DIR";

// On-disk store of expensive series expansions, one file per (kind, params)
// key. Files are a short text header followed by one decimal coefficient per
// line. Writes go to a temporary file that is renamed into place.
class SeriesCache {
 public:
  static constexpr int kFormatVersion = 1;

  explicit SeriesCache(std::filesystem::path dir);

  // Cache rooted at $HOOKDIST_CACHE_DIR, or nullopt when it is unset or empty.
  static std::optional<SeriesCache> from_env();

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path file_for(std::string_view kind, std::string_view params) const;

  // nullopt on a miss; throws CacheCorruption on an unreadable file.
  std::optional<IntSeries> load(std::string_view kind, std::string_view params) const;
  void store(std::string_view kind, std::string_view params, const IntSeries& series) const;

  // Serves a stored series of at least `order` (truncated to it), otherwise
  // computes, stores, and returns the fresh expansion.
  IntSeries get_or_compute(std::string_view kind, std::string_view params, std::size_t order,
                           const std::function<IntSeries(std::size_t)>& compute) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace hookdist
