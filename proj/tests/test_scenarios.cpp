#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thermal_link/scenarios.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace thermal_link;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

TimeGridSpec coarse_times(double hi = 1e6, int ppd = 4) {
    TimeGridSpec t;
    t.lo = 1e-2;
    t.hi = hi;
    t.points_per_decade = ppd;
    return t;
}

double plateau_concurrence(const PointResult& point) {
    return point.records.back().concurrence;
}

}  // namespace

TEST_CASE("unknown scenario names are usage errors listing the catalog") {
    try {
        builtin_scenario("fig9");
        FAIL("expected usage_error");
    } catch (const usage_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("fig2c") != std::string::npos);
        CHECK(msg.find("fig6b") != std::string::npos);
    }
}

TEST_CASE("every built-in scenario resolves to a non-empty sweep") {
    for (const auto& name : scenario_names()) {
        const ScenarioSpec spec = builtin_scenario(name);
        CHECK(!spec.points.empty());
        for (const auto& point : spec.points) CHECK(validate(point.params).ok());
    }
}

TEST_CASE("cold baths give identically zero concurrence") {
    RunOptions opts;
    opts.nbar_override = 0.0;
    opts.times = coarse_times();
    const SweepResult result = run_scenario_data("fig2c", opts);
    REQUIRE(result.points.size() == 1);
    for (const auto& record : result.points[0].records) {
        CHECK(record.concurrence == 0.0);
        CHECK(record.p000 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sweeping nothing reproduces the scenario result") {
    RunOptions opts;
    opts.nbar_override = 0.5;
    opts.times = coarse_times(1e4);
    const SweepResult via_scenario = run_scenario_data("fig2c", opts);

    ParamsFile base;
    base.params.delta = 0.1 * base.params.omega_a;
    base.nbar_target = 0.5;
    const SweepResult via_sweep = execute(make_sweep(base, {}, *opts.times), 1);
    REQUIRE(via_sweep.points.size() == 1);
    REQUIRE(via_scenario.points.size() == 1);
    for (std::size_t s = 0; s < via_sweep.points[0].records.size(); ++s) {
        CHECK(via_sweep.points[0].records[s].concurrence ==
              via_scenario.points[0].records[s].concurrence);
        CHECK(via_sweep.points[0].records[s].discord ==
              via_scenario.points[0].records[s].discord);
    }
}

TEST_CASE("fiber-bath sweep: plateau grows with T3; cavity baths stay flat") {
    ParamsFile base;
    base.params.delta = 0.1 * base.params.omega_a;
    TimeGridSpec times;
    times.explicit_times = {1e6, 1e7};

    const SweepResult fiber =
        execute(make_sweep(base, {{"T3", {0.0, 3.0e6, 6.0e6}}}, times), 2);
    REQUIRE(fiber.points.size() == 3);
    const double c0 = plateau_concurrence(fiber.points[0]);
    const double c1 = plateau_concurrence(fiber.points[1]);
    const double c2 = plateau_concurrence(fiber.points[2]);
    CHECK(c0 == 0.0);
    CHECK(c1 > 0.1);
    CHECK(c2 > c1);

    const SweepResult cavities =
        execute(make_sweep(base, {{"T1", {3.0e6, 6.0e6}}, {"T2", {3.0e6, 6.0e6}}}, times), 2);
    REQUIRE(cavities.points.size() == 4);
    for (const auto& point : cavities.points)
        CHECK(plateau_concurrence(point) < 0.05);
}

TEST_CASE("sweep rejects unknown keys and empty products") {
    ParamsFile base;
    CHECK_THROWS_AS(make_sweep(base, {{"coupling", {1.0}}}, TimeGridSpec{}), usage_error);
    CHECK_THROWS_AS(make_sweep(base, {{"g1", {}}}, TimeGridSpec{}), validation_error);
}

TEST_CASE("cartesian sweep order is row-major in the declared keys") {
    ParamsFile base;
    const ScenarioSpec spec =
        make_sweep(base, {{"g1", {1.0, 2.0}}, {"nu", {7.0, 8.0, 9.0}}}, TimeGridSpec{});
    REQUIRE(spec.points.size() == 6);
    CHECK(spec.points[0].params.g1 == 1.0);
    CHECK(spec.points[0].params.nu == 7.0);
    CHECK(spec.points[1].params.nu == 8.0);
    CHECK(spec.points[3].params.g1 == 2.0);
    CHECK(spec.points[3].params.nu == 7.0);
    CHECK(spec.points[5].params.nu == 9.0);
}

TEST_CASE("csv layout: exact header, key prefix, blank-line blocks, determinism") {
    namespace fs = std::filesystem;
    const fs::path dir_a = fs::temp_directory_path() / "thermal_link_csv_a";
    const fs::path dir_b = fs::temp_directory_path() / "thermal_link_csv_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    RunOptions opts;
    opts.times = coarse_times(1e3, 3);
    opts.out_dir = dir_a.string();
    opts.workers = 1;
    run_scenario("fig4a", opts);
    opts.out_dir = dir_b.string();
    opts.workers = 4;
    run_scenario("fig4a", opts);

    const std::string a = slurp((dir_a / "fig4a.csv").string());
    const std::string b = slurp((dir_b / "fig4a.csv").string());
    CHECK(a == b);  // byte-identical regardless of worker count

    std::istringstream lines(a);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# scenario=fig4a", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("# delta_convention=", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "nbar3,gamma_t,C,E,QD,CC,I,P000");
    int blanks = 0;
    while (std::getline(lines, line))
        if (line.empty()) ++blanks;
    CHECK(blanks == 12);  // 13 sweep points, one separator between blocks

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("fig4c emits the alternate-side discord diagnostic column") {
    RunOptions opts;
    opts.nbar_override = 1.0;
    opts.times = coarse_times(1e2, 2);
    const ScenarioSpec spec = builtin_scenario("fig4c", opts);
    CHECK(spec.asymmetric_diagnostic);
    const SweepResult result = execute(spec, 1);
    std::ostringstream out;
    write_sweep_csv(result, out);
    const std::string text = out.str();
    CHECK(text.find("nbar1,nbar2,nbar3,gamma_t,C,E,QD,CC,I,P000,QD_alt") != std::string::npos);
    // atom-symmetric dynamics: both measurement sides agree closely
    for (const auto& record : result.points[0].records)
        CHECK(std::abs(record.discord - record.discord_alt) <= 1e-8);
}

TEST_CASE("dump files and diagnose output") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "thermal_link_dumps";
    fs::remove_all(dir);
    RunOptions opts;
    opts.nbar_override = 1.0;
    opts.times = coarse_times(1e2, 2);
    opts.out_dir = dir.string();
    opts.dump_spectrum = true;
    opts.dump_rates = true;
    const auto written = run_scenario("fig2c", opts);
    CHECK(written.size() == 3);
    const std::string spectrum = slurp((dir / "fig2c_spectrum.csv").string());
    CHECK(spectrum.rfind("k,Omega_k,c_1k,c_2k,c_3k,c_4k,c_5k,c_6k\n", 0) == 0);
    const std::string rates = slurp((dir / "fig2c_rates.csv").string());
    CHECK(rates.rfind("k,Omega_k,down_k,up_k,w_c1,w_fib,w_c2\n", 0) == 0);
    fs::remove_all(dir);

    ParamsFile file;
    file.params.delta = 0.1 * file.params.omega_a;
    file.nbar_target = 1.0;
    std::ostringstream report;
    diagnose(file, report);
    const std::string text = report.str();
    CHECK(text.find("RWA check") != std::string::npos);
    CHECK(text.find("KMS ratios") != std::string::npos);
    CHECK(text.find("steady state:") != std::string::npos);
    CHECK(text.find("oracle residual") != std::string::npos);
    CHECK(text.find("warning: near-degenerate") != std::string::npos);

    ParamsFile closed;
    closed.params.gamma1 = closed.params.gamma2 = closed.params.gamma3 = 0.0;
    std::ostringstream closed_report;
    diagnose(closed, closed_report);
    CHECK(closed_report.str().find("none (unitary)") != std::string::npos);
}

namespace {

// Plateau record (gamma_t = 1e7) for one resolved sweep point.
CorrelationRecord plateau_record(const std::array<BathSetting, 3>& baths) {
    SweepPoint point;
    point.labels = {{"probe", 0.0}};
    point.params.delta = 0.1 * point.params.omega_a;
    point.baths = baths;
    ScenarioSpec spec;
    spec.name = "probe";
    spec.times.explicit_times = {1e7};
    spec.points = {point};
    return execute(spec, 1).points[0].records[0];
}

}  // namespace

TEST_CASE("heating only the fiber keeps the vacuum more likely at equal plateau C") {
    const CorrelationRecord fiber = plateau_record(
        {BathSetting::temp(0.0), BathSetting::temp(0.0), BathSetting::occupancy(0.4)});
    REQUIRE(fiber.concurrence > 0.1);

    // bisect the common-temperature occupancy that matches the plateau height
    double lo = 0.05, hi = 3.0;
    CorrelationRecord matched;
    for (int iter = 0; iter < 40; ++iter) {
        const double mid = 0.5 * (lo + hi);
        matched = plateau_record({BathSetting::occupancy(mid), BathSetting::occupancy(mid),
                                  BathSetting::occupancy(mid)});
        (matched.concurrence < fiber.concurrence ? lo : hi) = mid;
    }
    REQUIRE(std::abs(matched.concurrence - fiber.concurrence) < 1e-3);
    CHECK(fiber.p000 > matched.p000 + 0.1);
}

TEST_CASE("fig2c sweep: the largest plateau concurrence is about 0.2 at high occupancy") {
    RunOptions opts;
    TimeGridSpec times;
    times.lo = 1e-2;
    times.hi = 1e7;
    times.points_per_decade = 4;
    opts.times = times;
    const SweepResult result = run_scenario_data("fig2c", opts);
    double best = 0.0;
    double best_nbar = 0.0;
    for (const auto& point : result.points) {
        const double c = point.records.back().concurrence;
        if (c > best) {
            best = c;
            best_nbar = point.labels[0].second;
        }
    }
    CHECK(best >= 0.15);
    CHECK(best <= 0.25);
    CHECK(best_nbar >= 0.9);
}

TEST_CASE("fig5 inset companion evaluates one late time across the occupancy grid") {
    const ScenarioSpec fig5 = builtin_scenario("fig5");
    CHECK(fig5.with_inset);
    CHECK(fig5.points.size() == 1);
    const ScenarioSpec inset = inset_companion(fig5);
    CHECK(inset.points.size() == 13);
    REQUIRE(inset.times.explicit_times.size() == 1);
    CHECK(inset.times.explicit_times[0] == doctest::Approx(6.283185307179586e6));
}
