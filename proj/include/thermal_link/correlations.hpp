// correlations.hpp — two-qubit X state extracted from the field vacuum and
// the correlation measures computed on it: concurrence, entanglement of
// formation, mutual information, classical correlations, quantum discord.
// All entropies are in bits.

#pragma once

#include "thermal_link/common.hpp"
#include "thermal_link/dynamics.hpp"

#include <limits>
#include <span>

namespace thermal_link {

// Normalized two-qubit X state in the basis {|gg>, |ge>, |eg>, |ee>} with
// r44 = 0 structurally and a real coherence between |ge> and |eg>.
struct XState {
    double r11 = 1.0;
    double r22 = 0.0;
    double r33 = 0.0;
    double r23 = 0.0;
    double p000 = 1.0;  // success probability of the vacuum projection
};

// Throws validation_error when the X-state invariants are violated.
void validate_xstate(const XState& x);

// Condition on finding all field modes empty; entries are normalized by the
// projection probability. Throws when that probability vanishes.
XState project_vacuum(const DensityMatrix& rho_bare);

// Trace out the field modes instead of projecting: |gg> absorbs the
// photon-carrying populations and the coherence keeps its bare weight.
// p000 still records the vacuum probability.
XState reduce_atoms(const DensityMatrix& rho_bare);

XState swap_qubits(const XState& x);

double binary_entropy(double p);
double spectral_entropy(std::span<const double> weights);

double concurrence(const XState& x);  // 2|r23|, clipped to [0, 1]
double entanglement_of_formation(double concurrence_value);
double mutual_information(const XState& x);

// S(rho_A) minus the smallest averaged conditional entropy over projective
// measurements on qubit B. The minimization evaluates the analytic candidate
// at the balanced (sigma_x type) measurement plus a dense Bloch-angle grid
// with one golden-section refinement pass.
double classical_correlation(const XState& x);

struct DiscordResult {
    double value = 0.0;        // I - CC with the grid-backed minimization
    double closed_form = 0.0;  // independent conditional-entropy expression
    double gap() const { return value > closed_form ? value - closed_form : closed_form - value; }
};

// Throws numerical_error when the two discord routes disagree beyond 1e-4.
DiscordResult quantum_discord_checked(const XState& x);
double quantum_discord(const XState& x);

struct CorrelationRecord {
    double concurrence = 0.0;
    double entanglement = 0.0;
    double discord = 0.0;
    double classical = 0.0;
    double mutual_info = 0.0;
    double p000 = 1.0;
    // Diagnostics (not part of the CSV contract)
    double discord_closed_form = 0.0;
    double classical_sigma_half = 0.0;  // CC evaluated at the 1/2 measurement only
    double discord_alt = std::numeric_limits<double>::quiet_NaN();
};

// with_alt additionally reports the discord with the measured qubit swapped
// (diagnostic column for asymmetric-temperature scenarios).
CorrelationRecord correlation_record(const XState& x, bool with_alt = false);

}  // namespace thermal_link
