// Persistent moment tables, one JSON document per (nu, b, L, n, method, bits).
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "pivlag/weight.hpp"

namespace pivlag {

class MomentCache {
 public:
  explicit MomentCache(std::filesystem::path dir);

  /// Directory named by PIVLAG_CACHE_DIR, if set and nonempty.
  static std::optional<std::filesystem::path> default_dir();

  const std::filesystem::path& dir() const { return dir_; }

  /// File that holds the table for these fields.
  std::filesystem::path path_for(const ModelParams& p, MomentMethod method, Bits bits) const;

  /// A stored table with at least m + 1 moments, truncated to m + 1.
  std::optional<MomentTable> load(const ModelParams& p, MomentMethod method, Bits bits, long m) const;

  /// Writes to a temporary file in the same directory, then renames.
  void store(const MomentTable& tbl) const;

 private:
  std::filesystem::path dir_;
};

/// Significant digits written for a table at `bits`.
int cache_digits(Bits bits);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& text);

/// moments() with a read-through cache (no cache when `cache` is null).
MomentTable cached_moments(const ModelParams& p, long m, MomentMethod method,
                           const PrecisionContext& ctx, const MomentCache* cache,
                           bool force_recompute = false);

}  // namespace pivlag
