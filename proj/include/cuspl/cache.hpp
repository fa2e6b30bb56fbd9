#pragma once

// Portable on-disk coefficient cache.
//
// Layout (all integers little-endian):
//   8 bytes  magic "CUSPLCF\0"
//   u32      format version
//   u32      weight
//   u64      n_max
//   n_max records, n = 1..n_max: i32 signed byte length L (sign of a(n)),
//            then |L| magnitude bytes, least significant first.

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "cuspl/forms.hpp"

namespace cuspl {

constexpr std::uint32_t kCacheFormatVersion = 1;
constexpr const char* kCacheDirEnv = "CUSPL_CACHE_DIR";

/// $CUSPL_CACHE_DIR, else $XDG_CACHE_HOME/cuspl, else $HOME/.cache/cuspl.
std::filesystem::path cache_directory();

void save_coefficients(const CuspForm& form, const std::filesystem::path& file);

/// Loads the first n_max records (all of them when n_max == 0).
CuspForm load_coefficients(const std::filesystem::path& file, std::size_t n_max = 0);

struct CachedForm {
  CuspForm form;
  std::filesystem::path file;
  std::uint64_t checksum;  // FNV-1a of the cache file
};

/// Serves the form from any cache file of the same weight with enough
/// capacity; otherwise builds it and writes a new cache file.
CachedForm load_or_build(int weight, std::size_t n_max = kDefaultNMax);
CachedForm load_or_build(int weight, std::size_t n_max, const std::filesystem::path& dir);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t file_checksum(const std::filesystem::path& file);

}  // namespace cuspl
