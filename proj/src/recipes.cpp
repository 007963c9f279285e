#include "cavharvest/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "cavharvest/errors.hpp"

namespace cavharvest {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

AssertionResult verdict(std::string description, bool passed, std::string detail) {
    return {std::move(description), passed, std::move(detail)};
}

std::vector<double> column(const std::vector<CorrelationReport>& reps, double CorrelationReport::*member) {
    std::vector<double> out;
    out.reserve(reps.size());
    for (const auto& r : reps) {
        out.push_back(r.*member);
    }
    return out;
}

double max_of(const std::vector<CorrelationReport>& reps, double CorrelationReport::*member) {
    double m = 0.0;
    for (const auto& r : reps) {
        m = std::max(m, r.*member);
    }
    return m;
}

SweepSpec reference_spec(Axis t, Axis r, Axis temperature) {
    SweepSpec s;
    s.cavity = CavityConfig::reference();
    s.t = std::move(t);
    s.r = std::move(r);
    s.temperature = std::move(temperature);
    return s;
}

std::vector<AssertionResult> check_surface_common(const std::vector<CorrelationReport>& reps) {
    bool finite = true;
    double worst_excess = 0.0;
    double min_nu = 1.0;
    for (const auto& r : reps) {
        finite = finite && std::isfinite(r.log_negativity) && std::isfinite(r.mutual_information) &&
                 std::isfinite(r.discord);
        worst_excess = std::max(worst_excess, r.discord - r.mutual_information);
        min_nu = std::min({min_nu, r.nu1, r.nu2});
    }
    return {
        verdict("all measures finite", finite, ""),
        verdict("D <= I everywhere", worst_excess <= 1e-9, "max(D - I) = " + fmt(worst_excess)),
        verdict("detector symplectic eigenvalues >= 1", min_nu >= 1.0 - 1e-9, "min nu = " + fmt(min_nu)),
    };
}

std::vector<AssertionResult> check_fig1(const std::vector<CorrelationReport>& reps) {
    auto out = check_surface_common(reps);
    const double peak = max_of(reps, &CorrelationReport::log_negativity);
    out.push_back(verdict("vacuum entanglement is harvested somewhere in the window", peak > 0.0,
                          "max E_N = " + fmt(peak)));
    bool zero_at_start = true;
    for (const auto& r : reps) {
        zero_at_start = zero_at_start && (r.t != 0.0 || r.log_negativity == 0.0);
    }
    out.push_back(verdict("E_N = 0 at t = 0", zero_at_start, ""));
    return out;
}

std::vector<AssertionResult> check_fig2(const std::vector<CorrelationReport>& reps) {
    const double m0 = max_of(select(reps, 0.0, 3.0), &CorrelationReport::log_negativity);
    const double m1 = max_of(select(reps, 0.1, 3.0), &CorrelationReport::log_negativity);
    const double m15 = max_of(select(reps, 0.15, 3.0), &CorrelationReport::log_negativity);
    const double m2 = max_of(select(reps, 0.2, 3.0), &CorrelationReport::log_negativity);
    return {
        verdict("max E_N > 0 at T = 0", m0 > 0.0, "max E_N(T=0) = " + fmt(m0)),
        verdict("0 < max E_N(T=0.1) < max E_N(T=0)", m1 > 0.0 && m1 < m0, "max E_N(T=0.1) = " + fmt(m1)),
        verdict("max E_N(T=0.15) < max E_N(T=0.1)", m15 < m1, "max E_N(T=0.15) = " + fmt(m15)),
        verdict("E_N < 1e-12 for every sample at T = 0.2", m2 < 1e-12, "max E_N(T=0.2) = " + fmt(m2)),
    };
}

std::vector<AssertionResult> check_fig3(const std::vector<CorrelationReport>& reps) {
    auto out = check_surface_common(reps);
    double min_positive_t = 1e300;
    for (const auto& r : reps) {
        if (r.t > 0.0) {
            min_positive_t = std::min(min_positive_t, r.mutual_information);
        }
    }
    out.push_back(verdict("I > 0 for every t > 0", min_positive_t > 0.0, "min I = " + fmt(min_positive_t)));
    return out;
}

std::vector<AssertionResult> check_fig4(const std::vector<CorrelationReport>& reps) {
    const auto vac = select(reps, 0.0, 4.0);
    const auto hot = select(reps, 10.0, 4.0);
    const auto& v2 = at_time(vac, 2.0);
    const auto& h2 = at_time(hot, 2.0);
    const double ri = h2.mutual_information / v2.mutual_information;
    const double rd = h2.discord / v2.discord;

    double min_ratio = 1e300;
    double min_ratio_t = 0.0;
    for (const auto& r : vac) {
        if (r.t >= 1.0 - 1e-9) {
            const double q = r.discord / r.mutual_information;
            if (q < min_ratio) {
                min_ratio = q;
                min_ratio_t = r.t;
            }
        }
    }

    bool hotter = true;
    for (std::size_t i = 0; i < vac.size(); ++i) {
        if (vac[i].t > 0.0) {
            hotter = hotter && hot[i].mutual_information > vac[i].mutual_information;
        }
    }
    return {
        verdict("I(T=10) / I(T=0) >= 10 at t = 2", ri >= 10.0, "ratio = " + fmt(ri)),
        verdict("D(T=10) / D(T=0) >= 10 at t = 2", rd >= 10.0, "ratio = " + fmt(rd)),
        verdict("vacuum D / I >= " + fmt(kVacuumDiscordRatioFloor) + " for t in [1, 14]",
                min_ratio >= kVacuumDiscordRatioFloor, "min D/I = " + fmt(min_ratio) + " at t = " + fmt(min_ratio_t)),
        verdict("I(T=10) > I(T=0) for every t > 0", hotter, ""),
    };
}

std::vector<AssertionResult> check_fig5(const std::vector<CorrelationReport>& reps) {
    const auto series = select(reps, -1.0, 4.0);
    bool increasing = true;
    for (std::size_t i = 1; i < series.size(); ++i) {
        increasing = increasing && series[i].mutual_information > series[i - 1].mutual_information;
    }
    const auto peak = std::max_element(series.begin(), series.end(), [](const auto& a, const auto& b) {
        return a.discord < b.discord;
    });
    const double t_peak = peak->temperature;
    return {
        verdict("I strictly increasing in T up to T = 60", increasing,
                "I(60) = " + fmt(series.back().mutual_information)),
        verdict("D attains its maximum at a grid temperature in [4, 8]", t_peak >= 4.0 && t_peak <= 8.0,
                "argmax T = " + fmt(t_peak) + ", D = " + fmt(peak->discord)),
    };
}

std::vector<AssertionResult> check_fig6(const std::vector<CorrelationReport>& reps) {
    std::vector<double> gap;
    std::vector<double> info;
    for (const auto& r : reps) {
        gap.push_back(std::abs(r.nu1 - r.nu2));
        info.push_back(r.mutual_information);
    }
    const double rho = spearman(gap, info);
    return {verdict("|nu1 - nu2| tracks I in time (Spearman >= 0.95)", rho >= 0.95, "Spearman = " + fmt(rho))};
}

std::vector<AssertionResult> check_fig7(const std::vector<CorrelationReport>& reps) {
    bool nu_up = true;
    bool gap_up = true;
    for (std::size_t i = 1; i < reps.size(); ++i) {
        nu_up = nu_up && reps[i].nu1 > reps[i - 1].nu1 && reps[i].nu2 > reps[i - 1].nu2;
        gap_up = gap_up && std::abs(reps[i].nu_plus - reps[i].nu_minus) >
                               std::abs(reps[i - 1].nu_plus - reps[i - 1].nu_minus);
    }
    const double gap_end = std::abs(reps.back().nu_plus - reps.back().nu_minus);
    return {
        verdict("nu1 and nu2 strictly increasing in T", nu_up, ""),
        verdict("|nu+ - nu-| strictly increasing in T", gap_up, "|nu+ - nu-|(T=10) = " + fmt(gap_end)),
    };
}

std::vector<AssertionResult> check_fig8(const std::vector<CorrelationReport>& reps) {
    std::vector<CorrelationReport> slice;
    for (const auto& r : reps) {
        if (std::abs(r.t - 14.0) < 1e-9) {
            slice.push_back(r);
        }
    }
    std::sort(slice.begin(), slice.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
    const auto info = column(slice, &CorrelationReport::mutual_information);
    const auto rs = column(slice, &CorrelationReport::r);
    const auto index_of = [&](double r) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (std::abs(rs[i] - r) < 1e-9) {
                return static_cast<std::ptrdiff_t>(i);
            }
        }
        return -1;
    };
    const auto maxima = local_maxima(info);
    const auto is_max = [&](double r) {
        const auto i = index_of(r);
        return i >= 0 && std::find(maxima.begin(), maxima.end(), static_cast<std::size_t>(i)) != maxima.end();
    };

    const auto i25 = index_of(2.5);
    const auto i5 = index_of(5.0);
    bool band_order = i25 >= 0 && i5 >= 0 && info[i5] > info[i25];
    double nearest_min = 0.0;
    bool have_min = false;
    if (band_order) {
        // Nearest local minimum on each side of r = 2.5 within (0, 5).
        std::ptrdiff_t below = -1;
        std::ptrdiff_t above = -1;
        for (auto m : local_minima(info)) {
            const auto mi = static_cast<std::ptrdiff_t>(m);
            if (mi < i25 && mi > 0) {
                below = std::max(below, mi);
            }
            if (mi > i25 && mi < i5 && (above < 0 || mi < above)) {
                above = mi;
            }
        }
        for (auto m : {below, above}) {
            if (m >= 0) {
                band_order = band_order && info[i25] > info[m];
                nearest_min = have_min ? std::max(nearest_min, info[m]) : info[m];
                have_min = true;
            }
        }
        band_order = band_order && have_min;
    }
    return {
        verdict("local maximum of I(r) at r = 5 (t = 14)", is_max(5.0), i5 >= 0 ? "I(5) = " + fmt(info[i5]) : ""),
        verdict("local maximum of I(r) at r = 10 (t = 14)", is_max(10.0),
                index_of(10.0) >= 0 ? "I(10) = " + fmt(info[index_of(10.0)]) : ""),
        verdict("I(5) > I(2.5) > neighbouring minima (t = 14)", band_order,
                i25 >= 0 ? "I(2.5) = " + fmt(info[i25]) + ", minimum = " + fmt(nearest_min) : ""),
    };
}

std::vector<FigureRecipe> build_recipes() {
    const std::string window = "t in [0, 14], r in [0, 50]: desk-scale window matching the plotted surfaces";
    std::vector<FigureRecipe> out;
    out.push_back({"fig1", "logarithmic negativity over (t, r), vacuum field", window,
                   reference_spec(Axis::grid(0, 14, 57), Axis::grid(0, 50, 51), Axis::fixed(0)), check_fig1});
    out.push_back({"fig2", "logarithmic negativity vs t at r = 3 for T in {0, 0.1, 0.15, 0.2}",
                   "200 samples over t in [0, 14]",
                   reference_spec(Axis::grid(0, 14, 200), Axis::fixed(3), Axis::of({0, 0.1, 0.15, 0.2})), check_fig2});
    out.push_back({"fig3", "mutual information over (t, r), vacuum field", window,
                   reference_spec(Axis::grid(0, 14, 57), Axis::grid(0, 50, 51), Axis::fixed(0)), check_fig3});
    out.push_back({"fig4", "mutual information and discord vs t at r = 4 for T in {0, 1, 10}",
                   "dt = 0.1 over t in [0, 14]",
                   reference_spec(Axis::grid(0, 14, 141), Axis::fixed(4), Axis::of({0, 1, 10})), check_fig4});
    out.push_back({"fig5", "mutual information and discord vs T at r = 4, t = 2", "61 temperatures over [0, 60]",
                   reference_spec(Axis::fixed(2), Axis::fixed(4), Axis::grid(0, 60, 61)), check_fig5});
    out.push_back({"fig6", "|nu1 - nu2| vs t at r = 4, vacuum field", "dt = 0.1 over t in [0, 14]",
                   reference_spec(Axis::grid(0, 14, 141), Axis::fixed(4), Axis::fixed(0)), check_fig6});
    out.push_back({"fig7", "nu1 and nu2 vs T at r = 4, t = 2", "41 temperatures over [0, 10]",
                   reference_spec(Axis::fixed(2), Axis::fixed(4), Axis::grid(0, 10, 41)), check_fig7});
    out.push_back({"fig8", "mutual information over (t, r) at T = 2 (resonance bands)",
                   "t in [0, 14] (57 samples), r in [0, 15] step 0.25",
                   reference_spec(Axis::grid(0, 14, 57), Axis::grid(0, 15, 61), Axis::fixed(2)), check_fig8});
    return out;
}

}  // namespace

const std::vector<FigureRecipe>& figure_recipes() {
    static const std::vector<FigureRecipe> recipes = build_recipes();
    return recipes;
}

const FigureRecipe& find_recipe(std::string_view name) {
    std::string known;
    for (const auto& r : figure_recipes()) {
        if (r.name == name) {
            return r;
        }
        known += (known.empty() ? "" : ", ") + r.name;
    }
    throw ValidationError("unknown figure \"" + std::string(name) + "\" (known: " + known + ")");
}

std::vector<CorrelationReport> select(const std::vector<CorrelationReport>& reports, double temperature, double r) {
    std::vector<CorrelationReport> out;
    for (const auto& rep : reports) {
        const bool t_ok = temperature < 0.0 || std::abs(rep.temperature - temperature) < 1e-12;
        const bool r_ok = r < 0.0 || std::abs(rep.r - r) < 1e-12;
        if (t_ok && r_ok) {
            out.push_back(rep);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.t, a.temperature) < std::tie(b.t, b.temperature);
    });
    return out;
}

const CorrelationReport& at_time(const std::vector<CorrelationReport>& series, double t) {
    for (const auto& r : series) {
        if (std::abs(r.t - t) < 1e-9) {
            return r;
        }
    }
    throw ValidationError("no sample at t = " + fmt(t));
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw DimensionError("spearman needs two equal-length series of at least two points");
    }
    const auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
        std::vector<double> r(v.size());
        for (std::size_t k = 0; k < idx.size();) {
            std::size_t e = k;
            while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[k]]) {
                ++e;
            }
            const double avg = 0.5 * static_cast<double>(k + e);
            for (std::size_t m = k; m <= e; ++m) {
                r[idx[m]] = avg;
            }
            k = e + 1;
        }
        return r;
    };
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] < v[i - 1] && v[i] < v[i + 1]) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace cavharvest
