#pragma once

// On-disk cache of generator spectral data.
//
// File layout (all integers and floats little-endian):
//   8 bytes   magic "CAVHGEN\0"
//   u32       format version (kCacheFormatVersion)
//   u32       reserved, zero
//   u64       phase-space dimension D
//   f64 L, i64 N, f64 Omega, f64 lambda, f64 x1, f64 x2
//   D   x (f64 re, f64 im)   eigenvalues
//   D*D x (f64 re, f64 im)   eigenvectors, column-major
//   D*D x (f64 re, f64 im)   inverse eigenvectors, column-major
//
// Files are named gen-<16 hex digits>.bin after the FNV-1a hash of the
// version and config fields. A file whose header does not match is ignored.

#include <cstdint>
#include <filesystem>
#include <optional>

#include "cavharvest/evolution.hpp"

namespace cavharvest {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

std::uint64_t config_hash(const CavityConfig& cfg);

std::filesystem::path cache_file_path(const std::filesystem::path& dir, const CavityConfig& cfg);

/// Writes atomically (temp file + rename). Throws IoError naming the path.
void save_generator(const std::filesystem::path& dir, const PropagatorGenerator& gen);

/// nullopt when absent, truncated, or written for a different config.
std::optional<PropagatorGenerator> load_generator(const std::filesystem::path& dir, const CavityConfig& cfg);

/// Build-or-load front end. Without a directory it always builds.
class GeneratorCache {
public:
    GeneratorCache() = default;
    explicit GeneratorCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

    PropagatorGenerator get(const CavityConfig& cfg) const;
    const std::optional<std::filesystem::path>& directory() const { return dir_; }

private:
    std::optional<std::filesystem::path> dir_;
};

}  // namespace cavharvest
