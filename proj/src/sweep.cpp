#include "cavharvest/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <tuple>

#include "cavharvest/errors.hpp"
#include "cavharvest/generator_cache.hpp"

namespace cavharvest {

namespace {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = n;
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

double relative_change(double a, double b, double floor) {
    const double scale = std::abs(a);
    return scale < floor ? std::abs(b - a) : std::abs(b - a) / scale;
}

}  // namespace

Axis Axis::fixed(double value) {
    Axis a;
    a.kind = Kind::fixed;
    a.min = a.max = value;
    a.count = 1;
    return a;
}

Axis Axis::grid(double min, double max, std::size_t count) {
    Axis a;
    a.kind = Kind::grid;
    a.min = min;
    a.max = max;
    a.count = count;
    return a;
}

Axis Axis::of(std::vector<double> values) {
    Axis a;
    a.kind = Kind::list;
    a.list = std::move(values);
    a.count = a.list.size();
    return a;
}

void Axis::validate(const std::string& name) const {
    switch (kind) {
    case Kind::fixed:
        if (!std::isfinite(min)) {
            throw ValidationError("axis " + name + ": value must be finite");
        }
        break;
    case Kind::grid:
        if (!std::isfinite(min) || !std::isfinite(max)) {
            throw ValidationError("axis " + name + ": grid bounds must be finite");
        }
        if (count < 2) {
            throw ValidationError("axis " + name + ": grid count must be at least 2");
        }
        if (max < min) {
            throw ValidationError("axis " + name + ": grid max is below min");
        }
        break;
    case Kind::list:
        if (list.empty()) {
            throw ValidationError("axis " + name + ": value list is empty");
        }
        for (double v : list) {
            if (!std::isfinite(v)) {
                throw ValidationError("axis " + name + ": values must be finite");
            }
        }
        break;
    }
}

std::vector<double> Axis::values() const {
    switch (kind) {
    case Kind::fixed:
        return {min};
    case Kind::list:
        return list;
    case Kind::grid:
        break;
    }
    std::vector<double> out(count);
    const double span = max - min;
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = min + span * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    out.back() = max;
    return out;
}

void SweepSpec::validate() const {
    cavity.validate();
    t.validate("t");
    r.validate("r");
    temperature.validate("T");
    if (!t.varies() && !r.varies() && !temperature.varies()) {
        throw ValidationError("sweep needs at least one grid or list axis");
    }
    for (double v : r.values()) {
        if (v < 0.0) {
            throw ValidationError("axis r: separations must be non-negative");
        }
    }
    for (double v : temperature.values()) {
        if (v < 0.0) {
            throw ValidationError("axis T: temperatures must be non-negative");
        }
    }
    if (precision < 1 || precision > 17) {
        throw ValidationError("precision must be between 1 and 17 significant digits");
    }
}

std::vector<CorrelationReport> evaluate_point(const PropagatorGenerator& gen, double t,
                                              const std::vector<double>& temperatures) {
    const Eigen::MatrixXd rows = gen.detector_rows(t);
    const double r = gen.config().x2 - gen.config().x1;
    std::vector<CorrelationReport> out;
    out.reserve(temperatures.size());
    for (double temp : temperatures) {
        const auto diag = initial_state_diagonal(gen.config(), FieldTemperature(temp));
        out.push_back(correlation_report(detector_state(rows, diag), {t, r, temp}));
    }
    return out;
}

std::vector<CorrelationReport> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    spec.validate();
    const auto ts = spec.t.values();
    const auto rs = spec.r.values();
    const auto temps = spec.temperature.values();
    const GeneratorCache cache(options.cache_dir);

    // results[(ri * nt + ti) * nT + Ti]
    std::vector<CorrelationReport> results(rs.size() * ts.size() * temps.size());
    const auto store = [&](std::size_t ri, std::size_t ti, std::vector<CorrelationReport> reps) {
        for (std::size_t k = 0; k < reps.size(); ++k) {
            auto& slot = results[(ri * ts.size() + ti) * temps.size() + k];
            slot = reps[k];
            slot.r = rs[ri];
        }
    };

    if (rs.size() >= std::max(2u, options.threads)) {
        parallel_for(rs.size(), options.threads, [&](std::size_t ri) {
            const auto gen = cache.get(spec.cavity.at_separation(rs[ri]));
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                store(ri, ti, evaluate_point(gen, ts[ti], temps));
            }
        });
    } else {
        for (std::size_t ri = 0; ri < rs.size(); ++ri) {
            const auto gen = cache.get(spec.cavity.at_separation(rs[ri]));
            parallel_for(ts.size(), options.threads,
                         [&](std::size_t ti) { store(ri, ti, evaluate_point(gen, ts[ti], temps)); });
        }
    }

    std::stable_sort(results.begin(), results.end(), [](const CorrelationReport& a, const CorrelationReport& b) {
        return std::tie(a.r, a.temperature, a.t) < std::tie(b.r, b.temperature, b.t);
    });
    return results;
}

double DriftReport::max() const {
    return std::max({log_negativity, mutual_information, discord, nu1, nu2});
}

DriftReport relative_drift(const std::vector<CorrelationReport>& base,
                           const std::vector<CorrelationReport>& refined, double floor) {
    if (base.size() != refined.size()) {
        throw DimensionError("drift comparison needs sweeps of equal length");
    }
    DriftReport d;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto& a = base[i];
        const auto& b = refined[i];
        d.log_negativity = std::max(d.log_negativity, relative_change(a.log_negativity, b.log_negativity, floor));
        d.mutual_information =
            std::max(d.mutual_information, relative_change(a.mutual_information, b.mutual_information, floor));
        d.discord = std::max(d.discord, relative_change(a.discord, b.discord, floor));
        d.nu1 = std::max(d.nu1, relative_change(a.nu1, b.nu1, floor));
        d.nu2 = std::max(d.nu2, relative_change(a.nu2, b.nu2, floor));
    }
    return d;
}

}  // namespace cavharvest
