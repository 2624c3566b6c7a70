#include "thermal_link/scenarios.hpp"

#include "thermal_link/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace thermal_link {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

SystemParams baseline_params() {
    SystemParams p;
    p.omega_a = 4.0e6;
    p.delta = 0.0;
    p.g1 = p.g2 = 5.0;
    p.nu = 5.0;
    p.gamma1 = p.gamma2 = p.gamma3 = 1.0;
    p.T1 = p.T2 = p.T3 = 0.0;
    return p;
}

std::vector<double> default_occupancy_grid() {
    std::vector<double> grid(13);
    for (int i = 0; i < 13; ++i) grid[i] = i / 10.0;
    return grid;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double resolve_bath(const BathSetting& setting, double omega_bar) {
    if (setting.kind == BathSetting::Kind::temperature) return setting.value;
    if (setting.value == 0.0) return 0.0;  // zero occupancy means a cold bath
    return temperature_for_occupation(setting.value, omega_bar);
}

PointResult run_point(const SweepPoint& point, const std::vector<double>& times,
                      bool with_alt) {
    SystemParams params = point.params;
    {
        const ValidationReport report = validate(params);
        if (!report.ok()) {
            std::string joined;
            for (const auto& p : report.problems) joined += p + "; ";
            throw validation_error("invalid parameters: " + joined);
        }
    }
    const DressedBasis basis = dressed_basis(params);
    const double omega_bar = basis.omega_bar_65();
    params.T1 = resolve_bath(point.baths[0], omega_bar);
    params.T2 = resolve_bath(point.baths[1], omega_bar);
    params.T3 = resolve_bath(point.baths[2], omega_bar);

    const TransitionRates rates = transition_rates(basis, params);
    const Trajectory trajectory =
        propagate(DensityMatrix::ground(), basis, rates, times);

    PointResult result;
    result.labels = point.labels;
    result.resolved_params = params;
    result.times = trajectory.times;
    result.records.reserve(times.size());
    result.min_population = 1.0;
    for (const DensityMatrix& state : trajectory.states) {
        result.max_trace_error =
            std::max(result.max_trace_error, std::abs(state.trace_real() - 1.0));
        double offdiag = 0.0;
        for (int m = 0; m < kDim; ++m) {
            result.min_population = std::min(result.min_population, state.m(m, m).real());
            for (int n = m + 1; n < kDim; ++n)
                offdiag = std::max(offdiag, std::abs(state.m(m, n)));
        }
        result.max_offdiagonal = std::max(result.max_offdiagonal, offdiag);
        const DensityMatrix bare = to_bare(state, basis);
        result.records.push_back(correlation_record(reduce_atoms(bare), with_alt));
    }
    return result;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "fig2a", "fig2b", "fig2c", "fig3", "fig4a",
        "fig4b", "fig4c", "fig5",  "fig6a", "fig6b"};
    return names;
}

namespace {

ScenarioSpec equal_bath_scenario(const std::string& name, double delta, double nu,
                                 const std::vector<double>& grid) {
    ScenarioSpec spec;
    spec.name = name;
    for (double n : grid) {
        SweepPoint point;
        point.labels = {{"nbar", n}};
        point.params = baseline_params();
        point.params.delta = delta;
        point.params.nu = nu;
        point.baths = {BathSetting::occupancy(n), BathSetting::occupancy(n),
                       BathSetting::occupancy(n)};
        spec.points.push_back(std::move(point));
    }
    return spec;
}

ScenarioSpec fiber_bath_scenario(const std::string& name, const std::vector<double>& grid) {
    ScenarioSpec spec;
    spec.name = name;
    for (double n : grid) {
        SweepPoint point;
        point.labels = {{"nbar3", n}};
        point.params = baseline_params();
        point.params.delta = 0.1 * point.params.omega_a;
        point.baths = {BathSetting::temp(0.0), BathSetting::temp(0.0),
                       BathSetting::occupancy(n)};
        spec.points.push_back(std::move(point));
    }
    return spec;
}

ScenarioSpec cavity_bath_scenario(const std::string& name, const std::vector<double>& grid) {
    ScenarioSpec spec;
    spec.name = name;
    for (double n : grid) {
        SweepPoint point;
        point.labels = {{"nbar12", n}};
        point.params = baseline_params();
        point.params.delta = 0.1 * point.params.omega_a;
        point.baths = {BathSetting::occupancy(n), BathSetting::occupancy(n),
                       BathSetting::temp(0.0)};
        spec.points.push_back(std::move(point));
    }
    return spec;
}

ScenarioSpec mixed_bath_scenario(const std::string& name, const std::vector<double>& grid) {
    ScenarioSpec spec;
    spec.name = name;
    spec.asymmetric_diagnostic = true;
    for (double n : grid) {
        SweepPoint point;
        point.labels = {{"nbar1", n / 4.0}, {"nbar2", n / 2.0}, {"nbar3", n}};
        point.params = baseline_params();
        point.params.delta = 0.1 * point.params.omega_a;
        point.baths = {BathSetting::occupancy(n / 4.0), BathSetting::occupancy(n / 2.0),
                       BathSetting::occupancy(n)};
        spec.points.push_back(std::move(point));
    }
    return spec;
}

}  // namespace

ScenarioSpec builtin_scenario(const std::string& name, const RunOptions& options) {
    std::vector<double> grid = default_occupancy_grid();
    if (options.nbar_override) grid = {*options.nbar_override};

    ScenarioSpec spec;
    const double omega_a = baseline_params().omega_a;
    if (name == "fig2a") {
        spec = equal_bath_scenario(name, 0.0, 5.0, grid);
    } else if (name == "fig2b") {
        spec = equal_bath_scenario(name, 1e-4 * omega_a, 5.0, grid);
    } else if (name == "fig2c" || name == "fig6a") {
        spec = equal_bath_scenario(name, 0.1 * omega_a, 5.0, grid);
        spec.name = name;
    } else if (name == "fig3") {
        spec = equal_bath_scenario(name, 0.1 * omega_a, 100.0, grid);
    } else if (name == "fig4a" || name == "fig6b") {
        spec = fiber_bath_scenario(name, grid);
        spec.name = name;
    } else if (name == "fig4b") {
        spec = cavity_bath_scenario(name, grid);
    } else if (name == "fig4c") {
        spec = mixed_bath_scenario(name, grid);
    } else if (name == "fig5") {
        spec = equal_bath_scenario(name, 0.1 * omega_a,
                                   5.0, {options.nbar_override.value_or(1.0)});
        spec.with_inset = true;
    } else {
        std::ostringstream msg;
        msg << "unknown scenario '" << name << "'; known:";
        for (const auto& n : scenario_names()) msg << ' ' << n;
        throw usage_error(msg.str());
    }

    if (options.temps_override) {
        const auto& temps = *options.temps_override;
        for (SweepPoint& point : spec.points) {
            point.labels = {{"T1", temps[0]}, {"T2", temps[1]}, {"T3", temps[2]}};
            point.baths = {BathSetting::temp(temps[0]), BathSetting::temp(temps[1]),
                           BathSetting::temp(temps[2])};
        }
        if (spec.points.size() > 1) spec.points.resize(1);
    }
    if (options.times) spec.times = *options.times;
    return spec;
}

ScenarioSpec inset_companion(const ScenarioSpec& spec) {
    ScenarioSpec inset = equal_bath_scenario(spec.name + "_inset", 0.1 * baseline_params().omega_a,
                                             5.0, default_occupancy_grid());
    inset.times.explicit_times = {kTwoPi * 1e6};  // one second of laboratory time
    return inset;
}

SweepResult execute(const ScenarioSpec& spec, int workers) {
    if (spec.points.empty()) throw validation_error("scenario resolves to no sweep points");
    const std::vector<double> times = spec.times.make();

    SweepResult result;
    result.scenario = spec.name;
    result.asymmetric_diagnostic = spec.asymmetric_diagnostic;
    for (const auto& label : spec.points.front().labels)
        result.key_names.push_back(label.first);
    {
        Fnv1a h;
        for (const SweepPoint& point : spec.points) {
            h.feed(point.params.hash());
            for (const BathSetting& bath : point.baths) {
                h.feed(static_cast<std::uint64_t>(bath.kind));
                h.feed(bath.value);
            }
        }
        result.params_hash = h.state;
    }

    result.points.resize(spec.points.size());
    std::vector<std::exception_ptr> failures(spec.points.size());

    int n_workers = workers > 0 ? workers
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::clamp<int>(n_workers, 1, static_cast<int>(spec.points.size()));

    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.points.size()) return;
            try {
                result.points[i] = run_point(spec.points[i], times, spec.asymmetric_diagnostic);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return result;
}

SweepResult run_scenario_data(const std::string& name, const RunOptions& options) {
    return execute(builtin_scenario(name, options), options.workers);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "# scenario=" << result.scenario << " version=" << kToolVersion
        << " params_hash=" << std::hex << result.params_hash << std::dec << '\n';
    out << "# delta_convention=atom_minus_cavity\n";
    for (const auto& key : result.key_names) out << key << ',';
    out << "gamma_t,C,E,QD,CC,I,P000";
    if (result.asymmetric_diagnostic) out << ",QD_alt";
    out << '\n';

    bool first_block = true;
    for (const PointResult& point : result.points) {
        if (!first_block) out << '\n';
        first_block = false;
        for (std::size_t s = 0; s < point.times.size(); ++s) {
            const CorrelationRecord& rec = point.records[s];
            for (const auto& label : point.labels) out << format_value(label.second) << ',';
            out << format_value(point.times[s]) << ',' << format_value(rec.concurrence)
                << ',' << format_value(rec.entanglement) << ',' << format_value(rec.discord)
                << ',' << format_value(rec.classical) << ',' << format_value(rec.mutual_info)
                << ',' << format_value(rec.p000);
            if (result.asymmetric_diagnostic) out << ',' << format_value(rec.discord_alt);
            out << '\n';
        }
    }
}

void write_spectrum_csv(const DressedBasis& dressed, std::ostream& out) {
    out << "k,Omega_k,c_1k,c_2k,c_3k,c_4k,c_5k,c_6k\n";
    for (int k = 0; k < kDim; ++k) {
        out << k + 1 << ',' << format_value(dressed.omega[k]);
        for (int i = 0; i < kDim; ++i) out << ',' << format_value(dressed.coeff(i, k));
        out << '\n';
    }
}

void write_rates_csv(const DressedBasis& dressed, const TransitionRates& rates,
                     std::ostream& out) {
    out << "k,Omega_k,down_k,up_k,w_c1,w_fib,w_c2\n";
    for (int k = 0; k < 5; ++k) {
        out << k + 1 << ',' << format_value(dressed.omega[k]) << ','
            << format_value(rates.down[k]) << ',' << format_value(rates.up[k]) << ','
            << format_value(rates.weights[kWeightCavity1][k]) << ','
            << format_value(rates.weights[kWeightFiber][k]) << ','
            << format_value(rates.weights[kWeightCavity2][k]) << '\n';
    }
}

std::vector<std::string> run_scenario(const std::string& name, const RunOptions& options) {
    const ScenarioSpec spec = builtin_scenario(name, options);
    const SweepResult result = execute(spec, options.workers);

    namespace fs = std::filesystem;
    fs::create_directories(options.out_dir);
    std::vector<std::string> written;

    auto write_file = [&](const std::string& filename, auto&& writer) {
        const fs::path path = fs::path(options.out_dir) / filename;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw validation_error("cannot open '" + path.string() + "' for writing");
        writer(out);
        written.push_back(path.string());
    };

    write_file(name + ".csv", [&](std::ostream& out) { write_sweep_csv(result, out); });

    if (spec.with_inset) {
        const SweepResult inset = execute(inset_companion(spec), options.workers);
        write_file(name + "_inset.csv",
                   [&](std::ostream& out) { write_sweep_csv(inset, out); });
    }
    if (options.dump_spectrum || options.dump_rates) {
        const SystemParams& params = result.points.front().resolved_params;
        const DressedBasis basis = dressed_basis(params);
        if (options.dump_spectrum) {
            write_file(name + "_spectrum.csv",
                       [&](std::ostream& out) { write_spectrum_csv(basis, out); });
        }
        if (options.dump_rates) {
            const TransitionRates rates = transition_rates(basis, params);
            write_file(name + "_rates.csv",
                       [&](std::ostream& out) { write_rates_csv(basis, rates, out); });
        }
    }
    return written;
}

ScenarioSpec make_sweep(const ParamsFile& base,
                        const std::vector<std::pair<std::string, std::vector<double>>>& vary,
                        const TimeGridSpec& times) {
    static const std::vector<std::string> known_keys = {
        "omega_a", "delta", "g1", "g2", "nu",    "gamma1", "gamma2", "gamma3",
        "T1",      "T2",    "T3", "nbar", "nbar1", "nbar2",  "nbar3"};
    for (const auto& [key, values] : vary) {
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
            throw usage_error("unknown sweep key '" + key + "'");
        if (values.empty())
            throw validation_error("empty value list for sweep key '" + key + "'");
    }

    SweepPoint prototype;
    prototype.params = base.params;
    if (base.nbar_target) {
        const double n = *base.nbar_target;
        prototype.baths = {BathSetting::occupancy(n), BathSetting::occupancy(n),
                           BathSetting::occupancy(n)};
    } else {
        prototype.baths = {BathSetting::temp(base.params.T1), BathSetting::temp(base.params.T2),
                           BathSetting::temp(base.params.T3)};
    }

    auto apply = [](SweepPoint& point, const std::string& key, double value) {
        auto& p = point.params;
        if (key == "omega_a")      p.omega_a = value;
        else if (key == "delta")   p.delta = value;
        else if (key == "g1")      p.g1 = value;
        else if (key == "g2")      p.g2 = value;
        else if (key == "nu")      p.nu = value;
        else if (key == "gamma1")  p.gamma1 = value;
        else if (key == "gamma2")  p.gamma2 = value;
        else if (key == "gamma3")  p.gamma3 = value;
        else if (key == "T1")      point.baths[0] = BathSetting::temp(value);
        else if (key == "T2")      point.baths[1] = BathSetting::temp(value);
        else if (key == "T3")      point.baths[2] = BathSetting::temp(value);
        else if (key == "nbar") {
            point.baths = {BathSetting::occupancy(value), BathSetting::occupancy(value),
                           BathSetting::occupancy(value)};
        } else if (key == "nbar1") point.baths[0] = BathSetting::occupancy(value);
        else if (key == "nbar2")   point.baths[1] = BathSetting::occupancy(value);
        else if (key == "nbar3")   point.baths[2] = BathSetting::occupancy(value);
        point.labels.emplace_back(key, value);
    };

    ScenarioSpec spec;
    spec.name = "sweep";
    spec.times = times;
    std::vector<std::size_t> counter(vary.size(), 0);
    for (;;) {
        SweepPoint point = prototype;
        for (std::size_t i = 0; i < vary.size(); ++i)
            apply(point, vary[i].first, vary[i].second[counter[i]]);
        spec.points.push_back(std::move(point));
        // Odometer increment, last key fastest.
        std::size_t pos = vary.size();
        while (pos > 0) {
            --pos;
            if (++counter[pos] < vary[pos].second.size()) break;
            counter[pos] = 0;
            if (pos == 0) return spec;
        }
        if (vary.empty()) return spec;
    }
}

void diagnose(const ParamsFile& input, std::ostream& out) {
    SystemParams params = input.params;
    {
        const ValidationReport report = validate(params);
        if (!report.ok()) {
            std::string joined;
            for (const auto& p : report.problems) joined += p + "; ";
            throw validation_error("invalid parameters: " + joined);
        }
    }
    const DressedBasis basis = dressed_basis(params);
    if (input.nbar_target) {
        const double t = *input.nbar_target > 0.0
                             ? temperature_for_occupation(*input.nbar_target,
                                                          basis.omega_bar_65())
                             : 0.0;
        params.T1 = params.T2 = params.T3 = t;
    }

    out << "spectrum (dressed levels, gamma units)\n";
    write_spectrum_csv(basis, out);
    for (const auto& warning : basis.warnings) out << "warning: " << warning << '\n';

    const TransitionRates rates = transition_rates(basis, params);
    out << "\ntransition rates\n";
    write_rates_csv(basis, rates, out);

    const CheckReport rwa = rwa_check(basis, rates, params);
    out << "\nRWA check: " << rwa.message << (rwa.warn ? "  [WARN]" : "  [ok]") << '\n';

    out << "\nKMS ratios (up_k/down_k)\n";
    for (int k = 0; k < 5; ++k) {
        out << "  k=" << k + 1 << "  "
            << (rates.down[k] > 0.0 ? format_value(rates.up[k] / rates.down[k])
                                    : std::string("-"));
        if (params.T1 == params.T2 && params.T2 == params.T3 && params.T1 > 0.0)
            out << "  expected exp(-Omega_k/T) = "
                << format_value(std::exp(-basis.omega[k] / params.T1));
        out << '\n';
    }

    const bool dissipative =
        std::any_of(rates.down.begin(), rates.down.end(), [](double d) { return d > 0.0; });
    out << "\nsteady state: ";
    if (!dissipative) {
        out << "none (unitary)\n";
        return;
    }
    Vec6 steady = Vec6::Zero();
    steady[kGround] = 1.0;
    for (int k = 0; k < 5; ++k)
        steady[k] = rates.down[k] > 0.0 ? rates.up[k] / rates.down[k] : 0.0;
    steady /= steady.sum();
    for (int k = 0; k < kDim; ++k) out << format_value(steady[k]) << (k + 1 < kDim ? ' ' : '\n');

    const VectorizedGenerator generator = build_generator(basis, rates);
    const double stationarity =
        (generator.matrix * vectorize(DensityMatrix::diagonal(steady).m))
            .cwiseAbs()
            .maxCoeff();
    out << "stationarity residual |L rho_ss|_inf: " << format_value(stationarity) << '\n';

    // Cross-check the exact propagator against the reference exponential.
    const std::vector<double> probe_times = {0.1, 1.0, 10.0, 100.0};
    const Trajectory trajectory =
        propagate(DensityMatrix::ground(), basis, rates, probe_times);
    double residual = 0.0;
    for (std::size_t i = 0; i < probe_times.size(); ++i) {
        const DensityMatrix reference =
            expm_propagate(generator, DensityMatrix::ground(), probe_times[i]);
        residual = std::max(residual,
                            (trajectory.states[i].m - reference.m).cwiseAbs().maxCoeff());
    }
    out << "oracle residual (propagate vs expm, ground start): " << format_value(residual)
        << '\n';
}

}  // namespace thermal_link
