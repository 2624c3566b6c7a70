// params.hpp — system parameters, unit bookkeeping, validation, and the
// temperature <-> thermal-occupation conversion shared by every module.
//
// All frequencies, rates and temperatures are expressed in units of the
// damping rate gamma (hbar = k_B = 1); UnitSystem converts to SI only at
// the CLI boundary.

#pragma once

#include "thermal_link/common.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thermal_link {

// Sign convention for the stored detuning. The default reads
// delta = omega_a - omega_0 (cavities red-detuned for delta > 0).
enum class DeltaConvention { atom_minus_cavity, cavity_minus_atom };

struct SystemParams {
    double omega_a = 4.0e6;  // atomic and fiber angular frequency
    double delta = 0.0;      // atom-cavity detuning
    double g1 = 5.0;         // atom-1 <-> cavity-1 coupling
    double g2 = 5.0;         // atom-2 <-> cavity-2 coupling
    double nu = 5.0;         // fiber <-> cavity coupling
    double gamma1 = 1.0;     // cavity-1 damping rate
    double gamma2 = 1.0;     // cavity-2 damping rate
    double gamma3 = 1.0;     // fiber damping rate
    double T1 = 0.0;         // cavity-1 bath temperature
    double T2 = 0.0;         // cavity-2 bath temperature
    double T3 = 0.0;         // fiber bath temperature
    DeltaConvention delta_convention = DeltaConvention::atom_minus_cavity;

    double omega_0() const {
        return delta_convention == DeltaConvention::atom_minus_cavity
                   ? omega_a - delta
                   : omega_a + delta;
    }
    std::array<double, 3> bath_gammas() const { return {gamma1, gamma2, gamma3}; }
    std::array<double, 3> bath_temperatures() const { return {T1, T2, T3}; }

    std::uint64_t hash() const;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Report-style admissibility check; never throws.
ValidationReport validate(const SystemParams& params);

// Inverse of the Bose-Einstein occupation: T = omega / ln(1 + 1/nbar).
// Callers treat nbar == 0 (zero temperature) as a special case themselves.
double temperature_for_occupation(double nbar, double omega);

// SI conversion at the CLI boundary; one gamma unit equals gamma_hz rad/s.
struct UnitSystem {
    double gamma_hz = 2.0 * 3.14159265358979323846 * 1.0e6;

    double gamma_time_from_seconds(double seconds) const { return gamma_hz * seconds; }
    double seconds_from_gamma_time(double gamma_time) const { return gamma_time / gamma_hz; }
    // k_B/hbar in rad/(s K); temperatures in gamma units of energy.
    double temperature_from_kelvin(double kelvin) const {
        return kelvin * 1.3091927e11 / gamma_hz;
    }
    double kelvin_from_temperature(double temperature) const {
        return temperature * gamma_hz / 1.3091927e11;
    }
};

// Plain-text key=value parameter files ('#' starts a comment).
struct ParamsFile {
    SystemParams params;
    std::optional<double> nbar_target;  // resolved at omega_bar_65 by the caller
};

ParamsFile parse_params_file(const std::string& path);
ParamsFile parse_params_text(std::istream& in, const std::string& origin);

}  // namespace thermal_link
