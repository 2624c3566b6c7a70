// thermal-link — scenario-driven sweeps of the thermally pumped two-atom
// cavity-fiber chain. Subcommands: run, sweep, diagnose.
//
// Exit codes: 0 ok, 2 usage, 3 validation, 4 numerical failure.

#include "thermal_link/scenarios.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace thermal_link;

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_error("cannot parse " + what + " entry '" + item + "'");
        }
    }
    if (values.empty()) throw usage_error(what + " list is empty");
    return values;
}

TimeGridSpec parse_times(const std::string& text) {
    const std::vector<double> v = parse_double_list(text, "--times");
    if (v.size() != 3) throw usage_error("--times expects lo,hi,points_per_decade");
    TimeGridSpec spec;
    spec.lo = v[0];
    spec.hi = v[1];
    spec.points_per_decade = static_cast<int>(v[2]);
    if (!(spec.lo > 0.0) || !(spec.hi > spec.lo) || spec.points_per_decade < 1)
        throw usage_error("--times expects 0 < lo < hi and points_per_decade >= 1");
    return spec;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"thermal correlation sweeps for two atoms in fiber-coupled cavities"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "run a built-in scenario and write CSV sweeps");
    std::string scenario;
    RunOptions run_opts;
    std::string nbar_arg, temps_arg, times_arg;
    run->add_option("scenario", scenario, "scenario name")->required();
    run->add_option("--out", run_opts.out_dir, "output directory");
    run->add_option("--nbar", nbar_arg, "single thermal occupancy instead of the sweep");
    run->add_option("--temps", temps_arg, "raw bath temperatures T1,T2,T3");
    run->add_option("--times", times_arg, "time grid lo,hi,points_per_decade");
    run->add_option("--workers", run_opts.workers, "max concurrent sweep points");
    run->add_flag("--dump-spectrum", run_opts.dump_spectrum, "emit eigensystem CSV");
    run->add_flag("--dump-rates", run_opts.dump_rates, "emit transition-rate CSV");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "Cartesian sweep over parameter keys");
    std::string params_path, sweep_out = ".";
    std::vector<std::string> vary_args;
    std::string sweep_times_arg;
    int sweep_workers = 0;
    sweep->add_option("params", params_path, "parameter file (key=value lines)")->required();
    sweep->add_option("--vary", vary_args, "key=v1,v2,... (repeatable)");
    sweep->add_option("--times", sweep_times_arg, "time grid lo,hi,points_per_decade");
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--workers", sweep_workers, "max concurrent sweep points");

    // --- diagnose ---
    auto* diag = app.add_subcommand("diagnose", "print spectrum, rates, and health checks");
    std::string diag_path;
    diag->add_option("params", diag_path, "parameter file (key=value lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run->parsed()) {
        if (!nbar_arg.empty() && !temps_arg.empty())
            throw usage_error("--nbar and --temps are mutually exclusive");
        if (!nbar_arg.empty())
            run_opts.nbar_override = parse_double_list(nbar_arg, "--nbar").at(0);
        if (!temps_arg.empty()) {
            const auto temps = parse_double_list(temps_arg, "--temps");
            if (temps.size() != 3) throw usage_error("--temps expects T1,T2,T3");
            run_opts.temps_override = {temps[0], temps[1], temps[2]};
        }
        if (!times_arg.empty()) run_opts.times = parse_times(times_arg);
        for (const std::string& path : run_scenario(scenario, run_opts))
            std::cout << "wrote " << path << '\n';
        return 0;
    }

    if (sweep->parsed()) {
        const ParamsFile base = parse_params_file(params_path);
        std::vector<std::pair<std::string, std::vector<double>>> vary;
        for (const std::string& arg : vary_args) {
            const auto eq = arg.find('=');
            if (eq == std::string::npos)
                throw usage_error("--vary expects key=v1,v2,...; got '" + arg + "'");
            vary.emplace_back(arg.substr(0, eq),
                              parse_double_list(arg.substr(eq + 1), "--vary"));
        }
        TimeGridSpec times;
        if (!sweep_times_arg.empty()) times = parse_times(sweep_times_arg);
        const SweepResult result = execute(make_sweep(base, vary, times), sweep_workers);

        namespace fs = std::filesystem;
        fs::create_directories(sweep_out);
        const fs::path path = fs::path(sweep_out) / "sweep.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw validation_error("cannot open '" + path.string() + "'");
        write_sweep_csv(result, out);
        std::cout << "wrote " << path.string() << '\n';
        return 0;
    }

    diagnose(parse_params_file(diag_path), std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
