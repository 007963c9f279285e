#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cavharvest/correlations.hpp"
#include "cavharvest/sweep.hpp"

namespace cavharvest {

struct AssertionResult {
    std::string description;
    bool passed = false;
    std::string detail;  // measured values behind the verdict
};

/// A preset sweep over the reference cavity plus the qualitative claims its
/// output must satisfy.
struct FigureRecipe {
    std::string name;    // fig1 .. fig8
    std::string title;
    std::string notes;   // grid choices not fixed by the figure itself
    SweepSpec spec;
    std::function<std::vector<AssertionResult>(const std::vector<CorrelationReport>&)> check;
};

const std::vector<FigureRecipe>& figure_recipes();

/// Throws ValidationError listing the known names.
const FigureRecipe& find_recipe(std::string_view name);

/// Frozen lower bound on D/I in the vacuum at r = 4 for t in [1, 14].
inline constexpr double kVacuumDiscordRatioFloor = 0.5;

// Shared by the recipes and the acceptance checks.

/// Reports matching the given temperature and separation, in t order.
std::vector<CorrelationReport> select(const std::vector<CorrelationReport>& reports, double temperature, double r);

/// Report closest to t (within 1e-9), or throws ValidationError.
const CorrelationReport& at_time(const std::vector<CorrelationReport>& series, double t);

/// Spearman rank correlation; ties get their average rank.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Indices i with v[i-1] < v[i] > v[i+1] (and the mirrored condition for minima).
std::vector<std::size_t> local_maxima(const std::vector<double>& v);
std::vector<std::size_t> local_minima(const std::vector<double>& v);

}  // namespace cavharvest
