#pragma once

namespace cavharvest {

/// Environment variable consulted for the generator cache directory when
/// --cache-dir is not given.
inline constexpr const char* kCacheDirEnv = "CAVHARVEST_CACHE_DIR";

/// Entry point of the `cavharvest` tool. Returns 0 on success, 1 when a
/// figure assertion or validation check fails (or the computation itself
/// fails), 2 for usage errors, unreadable configs and invalid input.
int run_cli(int argc, const char* const* argv);

}  // namespace cavharvest
