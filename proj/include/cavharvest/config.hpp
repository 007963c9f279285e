#pragma once

// JSON sweep configuration.
//
//   {
//     "schema_version": 1,
//     "cavity": {"length": 100, "n_modes": 80, "detector_frequency": 1.2566, "coupling": 0.05},
//     "t": {"min": 0, "max": 14, "count": 200},
//     "r": 3,
//     "T": {"values": [0, 0.1, 0.15, 0.2]},
//     "output": {"path": "fig2.csv", "format": "csv", "precision": 12}
//   }
//
// Every cavity field and the output block are optional (cavity defaults to
// the reference cavity). Axes are a number, a {min, max, count} grid or a
// {values} list. Unknown keys are rejected at every level.

#include <filesystem>
#include <string_view>

#include "cavharvest/sweep.hpp"

namespace cavharvest {

inline constexpr int kConfigSchemaVersion = 1;

/// Throws ValidationError describing the offending key.
SweepSpec parse_sweep_config(std::string_view json_text);

/// Throws IoError naming the path if it cannot be read.
SweepSpec load_sweep_config(const std::filesystem::path& path);

}  // namespace cavharvest
