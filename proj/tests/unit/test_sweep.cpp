#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <tuple>

#include "cavharvest/emit.hpp"
#include "cavharvest/errors.hpp"
#include "cavharvest/generator_cache.hpp"
#include "cavharvest/sweep.hpp"

using namespace cavharvest;

namespace {

SweepSpec small_spec() {
    SweepSpec s;
    s.cavity = CavityConfig::reference();
    s.cavity.n_modes = 10;
    s.t = Axis::grid(0.0, 6.0, 7);
    s.r = Axis::of({5.0, 2.0});
    s.temperature = Axis::of({1.0, 0.0});
    return s;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::path(CAVHARVEST_TEST_TMP) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("axis values") {
    CHECK(Axis::fixed(2.5).values() == std::vector<double>{2.5});
    const auto g = Axis::grid(0.0, 15.0, 61).values();
    REQUIRE(g.size() == 61);
    CHECK(g.front() == 0.0);
    CHECK(g[10] == 2.5);
    CHECK(g[20] == 5.0);
    CHECK(g.back() == 15.0);
    CHECK(Axis::of({3.0, 1.0}).values() == std::vector<double>{3.0, 1.0});
    CHECK_FALSE(Axis::fixed(1.0).varies());
    CHECK(Axis::grid(0, 1, 2).varies());
}

TEST_CASE("axis and sweep validation") {
    CHECK_THROWS_AS(Axis::grid(0, 1, 1).validate("t"), ValidationError);
    CHECK_THROWS_AS(Axis::grid(2, 1, 5).validate("t"), ValidationError);
    CHECK_THROWS_AS(Axis::of({}).validate("t"), ValidationError);
    CHECK_THROWS_AS(Axis::fixed(std::nan("")).validate("t"), ValidationError);

    SweepSpec s = small_spec();
    CHECK_NOTHROW(s.validate());
    s.t = Axis::fixed(1.0);
    s.r = Axis::fixed(1.0);
    s.temperature = Axis::fixed(0.0);
    CHECK_THROWS_AS(s.validate(), ValidationError);  // nothing varies

    s = small_spec();
    s.temperature = Axis::of({-1.0, 0.0});
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_spec();
    s.r = Axis::grid(-1.0, 1.0, 3);
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_spec();
    s.precision = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_spec();
    s.cavity.n_modes = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("t = 0 gives an all-zero row") {
    SweepSpec s = small_spec();
    s.t = Axis::fixed(0.0);
    s.r = Axis::fixed(4.0);
    s.temperature = Axis::of({0.0, 5.0});
    const auto reps = run_sweep(s);
    REQUIRE(reps.size() == 2);
    for (const auto& r : reps) {
        CHECK(r.log_negativity == 0.0);
        CHECK(r.mutual_information == 0.0);
        CHECK(r.discord == 0.0);
        CHECK(r.nu1 == 1.0);
        CHECK(r.nu2 == 1.0);
    }
}

TEST_CASE("sweep output is sorted by (r, T, t)") {
    const auto reps = run_sweep(small_spec());
    REQUIRE(reps.size() == 2 * 2 * 7);
    CHECK(reps.front().r == 2.0);
    CHECK(reps.front().temperature == 0.0);
    CHECK(reps.front().t == 0.0);
    CHECK(reps[7].temperature == 1.0);
    CHECK(reps[14].r == 5.0);
    for (std::size_t i = 1; i < reps.size(); ++i) {
        const auto& a = reps[i - 1];
        const auto& b = reps[i];
        CHECK(std::tie(a.r, a.temperature, a.t) < std::tie(b.r, b.temperature, b.t));
    }
}

TEST_CASE("sweeps are bit-identical across thread counts") {
    const auto base = to_csv(run_sweep(small_spec(), {1, {}}), 17);
    for (unsigned threads : {2u, 3u, 8u}) {
        CHECK(to_csv(run_sweep(small_spec(), {threads, {}}), 17) == base);
    }
    // A single r with many threads takes the per-t path.
    SweepSpec one = small_spec();
    one.r = Axis::fixed(3.0);
    CHECK(to_csv(run_sweep(one, {4, {}}), 17) == to_csv(run_sweep(one, {1, {}}), 17));
}

TEST_CASE("shared generators and rows give the same numbers as fresh ones") {
    const auto s = small_spec();
    const auto reps = run_sweep(s);
    for (const auto& rep : reps) {
        const auto gen = PropagatorGenerator::build(s.cavity.at_separation(rep.r));
        const auto fresh = evaluate_point(gen, rep.t, {rep.temperature}).front();
        CHECK(fresh.mutual_information == rep.mutual_information);
        CHECK(fresh.discord == rep.discord);
        CHECK(fresh.log_negativity == rep.log_negativity);
    }
}

TEST_CASE("generator cache round-trips bit for bit") {
    const auto dir = fresh_dir("cache_roundtrip");
    CavityConfig cfg = CavityConfig::reference(4.0);
    cfg.n_modes = 6;
    CHECK_FALSE(load_generator(dir, cfg).has_value());

    const auto gen = PropagatorGenerator::build(cfg);
    save_generator(dir, gen);
    CHECK(std::filesystem::exists(cache_file_path(dir, cfg)));
    const auto loaded = load_generator(dir, cfg);
    REQUIRE(loaded.has_value());
    CHECK(loaded->spectrum().eigenvalues == gen.spectrum().eigenvalues);
    CHECK(loaded->spectrum().eigenvectors == gen.spectrum().eigenvectors);
    CHECK(loaded->spectrum().inverse_eigenvectors == gen.spectrum().inverse_eigenvectors);
    CHECK(loaded->propagator(2.0) == gen.propagator(2.0));

    // A different config never reads this file.
    CavityConfig other = cfg;
    other.coupling = 0.04;
    CHECK(config_hash(other) != config_hash(cfg));
    CHECK_FALSE(load_generator(dir, other).has_value());
}

TEST_CASE("damaged cache files are ignored and rebuilt") {
    const auto dir = fresh_dir("cache_damaged");
    CavityConfig cfg = CavityConfig::reference(4.0);
    cfg.n_modes = 5;
    {
        std::ofstream out(cache_file_path(dir, cfg), std::ios::binary);
        out << "CAVHGEN";
    }
    CHECK_FALSE(load_generator(dir, cfg).has_value());

    const GeneratorCache cache(dir);
    const auto gen = cache.get(cfg);
    const auto cached = load_generator(dir, cfg);
    REQUIRE(cached.has_value());

    // Truncate a valid file.
    const auto path = cache_file_path(dir, cfg);
    const auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 16);
    CHECK_FALSE(load_generator(dir, cfg).has_value());
}

TEST_CASE("cached and uncached sweeps emit identical bytes") {
    const auto dir = fresh_dir("cache_sweep");
    const auto plain = to_csv(run_sweep(small_spec(), {2, {}}));
    const auto cold = to_csv(run_sweep(small_spec(), {2, dir}));
    const auto warm = to_csv(run_sweep(small_spec(), {2, dir}));
    CHECK(cold == plain);
    CHECK(warm == plain);
}

TEST_CASE("relative drift") {
    CorrelationReport a;
    a.mutual_information = 0.1;
    a.discord = 1e-12;
    CorrelationReport b = a;
    b.mutual_information = 0.101;
    b.discord = 2e-12;
    const auto d = relative_drift({a}, {b});
    CHECK(d.mutual_information == doctest::Approx(0.01));
    CHECK(d.discord == doctest::Approx(1e-12));
    CHECK(d.max() == doctest::Approx(0.01));
    CHECK_THROWS_AS(relative_drift({a}, {}), DimensionError);
}
