#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cavharvest/cavity.hpp"
#include "cavharvest/correlations.hpp"

namespace cavharvest {

/// One sweep coordinate: a fixed value, a uniform grid, or an explicit list.
struct Axis {
    enum class Kind { fixed, grid, list };

    Kind kind = Kind::fixed;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;
    std::vector<double> list;

    static Axis fixed(double value);
    static Axis grid(double min, double max, std::size_t count);
    static Axis of(std::vector<double> values);

    /// Throws ValidationError for grids with count < 2 or max < min, empty
    /// lists, or non-finite values; `name` is used in the message.
    void validate(const std::string& name) const;
    bool varies() const { return kind != Kind::fixed; }
    std::vector<double> values() const;
};

enum class OutputFormat { csv, json };

struct SweepSpec {
    CavityConfig cavity = CavityConfig::reference();
    Axis t = Axis::fixed(0.0);
    Axis r = Axis::fixed(4.0);
    Axis temperature = Axis::fixed(0.0);
    std::string output;  // empty: standard output
    OutputFormat format = OutputFormat::csv;
    int precision = 12;

    /// At least one axis must vary; negative r or T values and precisions
    /// outside [1, 17] are rejected.
    void validate() const;
};

struct SweepOptions {
    unsigned threads = 1;
    std::optional<std::filesystem::path> cache_dir;
};

/// Evaluates the Cartesian product of the axes. One generator per distinct r,
/// one set of detector rows per (r, t) shared by every T. Rows come back
/// sorted by (r, T, t) whatever the thread count.
std::vector<CorrelationReport> run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Reports for one (r, t) pair at several temperatures, from a prebuilt generator.
std::vector<CorrelationReport> evaluate_point(const PropagatorGenerator& gen, double t,
                                              const std::vector<double>& temperatures);

/// Largest relative change of each emitted measure between two aligned sweeps.
struct DriftReport {
    double log_negativity = 0.0;
    double mutual_information = 0.0;
    double discord = 0.0;
    double nu1 = 0.0;
    double nu2 = 0.0;
    double max() const;
};

/// Entries whose magnitude in `base` is below `floor` are compared absolutely.
DriftReport relative_drift(const std::vector<CorrelationReport>& base,
                           const std::vector<CorrelationReport>& refined, double floor = 1e-9);

}  // namespace cavharvest
