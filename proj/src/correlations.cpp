#include "thermal_link/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace thermal_link {

namespace {

constexpr double kPi = 3.14159265358979323846;

double entropy_term(double w) { return w > 0.0 ? -w * std::log2(w) : 0.0; }

double entropy2(double a, double b) {
    return entropy_term(std::max(a, 0.0)) + entropy_term(std::max(b, 0.0));
}

// Marginals: A = atom 1 (rows of the X block), B = atom 2.
double marginal_entropy_a(const XState& x) { return binary_entropy(x.r33); }
double marginal_entropy_b(const XState& x) { return binary_entropy(x.r22); }

double joint_entropy(const XState& x) {
    const double mean = 0.5 * (x.r22 + x.r33);
    const double disc = std::hypot(0.5 * (x.r22 - x.r33), x.r23);
    return entropy_term(x.r11) + entropy2(mean + disc, mean - disc);
}

// Averaged conditional entropy of atom 1 after measuring atom 2 along the
// Bloch direction (theta, phi). The projector |w> = cos(t/2)|g> +
// e^{i phi} sin(t/2)|e> gives the unnormalized conditional block
//   [[r11 |a|^2 + r22 |b|^2 ,  r23 b* a], [r23 a* b ,  r33 |a|^2]].
double conditional_entropy(const XState& x, double theta, double phi) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double off_re = x.r23 * c * s * std::cos(phi);
    const double off_im = x.r23 * c * s * std::sin(phi);
    const double off2 = off_re * off_re + off_im * off_im;

    double total = 0.0;
    const double a2[2] = {c * c, s * s};
    for (int outcome = 0; outcome < 2; ++outcome) {
        const double u = a2[outcome];
        const double v = 1.0 - u;
        const double d1 = x.r11 * u + x.r22 * v;
        const double d2 = x.r33 * u;
        const double p = d1 + d2;
        if (p < 1e-300) continue;
        const double disc = std::sqrt(0.25 * (d1 - d2) * (d1 - d2) + off2);
        total += p * entropy2((0.5 * (d1 + d2) + disc) / p, (0.5 * (d1 + d2) - disc) / p);
    }
    return total;
}

// Analytic conditional entropy of the balanced (sigma_x type) measurement.
double conditional_entropy_sigma_half(const XState& x) {
    const double r = std::hypot(x.r11 + x.r22 - x.r33, 2.0 * x.r23);
    return binary_entropy(0.5 * (1.0 + r));
}

// Computational-basis measurement on atom 2 (|ge> outcome leaves atom 1 pure).
double conditional_entropy_sigma_z(const XState& x) {
    const double pg = x.r11 + x.r33;
    if (pg <= 0.0) return 0.0;
    return pg * binary_entropy(x.r11 / pg);
}

struct MeasurementScan {
    double minimum;
    double sigma_half;
};

constexpr int kPolar = 181;
constexpr int kAzimuth = 91;

struct AngleTables {
    double cos_half[kPolar];
    double sin_half[kPolar];
    double phi_re[kAzimuth];
    double phi_im[kAzimuth];
};

const AngleTables& angle_tables() {
    static const AngleTables tables = [] {
        AngleTables t;
        for (int i = 0; i < kPolar; ++i) {
            const double theta = kPi * i / (kPolar - 1);
            t.cos_half[i] = std::cos(0.5 * theta);
            t.sin_half[i] = std::sin(0.5 * theta);
        }
        for (int j = 0; j < kAzimuth; ++j) {
            const double phi = 2.0 * kPi * j / kAzimuth;
            t.phi_re[j] = std::cos(phi);
            t.phi_im[j] = std::sin(phi);
        }
        return t;
    }();
    return tables;
}

MeasurementScan scan_measurements(const XState& x) {
    const AngleTables& tables = angle_tables();

    double best = conditional_entropy(x, 0.0, 0.0);
    double best_theta = 0.0;
    double best_phi = 0.0;
    for (int i = 0; i < kPolar; ++i) {
        const double c = tables.cos_half[i];
        const double s = tables.sin_half[i];
        const double cs_r23 = x.r23 * c * s;
        const double u = c * c;
        const double v = 1.0 - u;
        const double d1_plus = x.r11 * u + x.r22 * v;
        const double d2_plus = x.r33 * u;
        const double d1_minus = x.r11 * v + x.r22 * u;
        const double d2_minus = x.r33 * v;
        const double p_plus = d1_plus + d2_plus;
        const double p_minus = d1_minus + d2_minus;
        for (int j = 0; j < kAzimuth; ++j) {
            const double off_re = cs_r23 * tables.phi_re[j];
            const double off_im = cs_r23 * tables.phi_im[j];
            const double off2 = off_re * off_re + off_im * off_im;
            double value = 0.0;
            if (p_plus >= 1e-300) {
                const double disc =
                    std::sqrt(0.25 * (d1_plus - d2_plus) * (d1_plus - d2_plus) + off2);
                value += p_plus * entropy2((0.5 * p_plus + disc) / p_plus,
                                           (0.5 * p_plus - disc) / p_plus);
            }
            if (p_minus >= 1e-300) {
                const double disc =
                    std::sqrt(0.25 * (d1_minus - d2_minus) * (d1_minus - d2_minus) + off2);
                value += p_minus * entropy2((0.5 * p_minus + disc) / p_minus,
                                            (0.5 * p_minus - disc) / p_minus);
            }
            if (value < best) {
                best = value;
                best_theta = kPi * i / (kPolar - 1);
                best_phi = 2.0 * kPi * j / kAzimuth;
            }
        }
    }

    // One golden-section pass over theta around the winning grid node.
    const double step = kPi / (kPolar - 1);
    double lo = std::max(0.0, best_theta - step);
    double hi = std::min(kPi, best_theta + step);
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = conditional_entropy(x, c, best_phi);
    double fd = conditional_entropy(x, d, best_phi);
    for (int iter = 0; iter < 80; ++iter) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = conditional_entropy(x, c, best_phi);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = conditional_entropy(x, d, best_phi);
        }
    }
    best = std::min({best, fc, fd});

    MeasurementScan scan;
    scan.sigma_half = conditional_entropy_sigma_half(x);
    scan.minimum = std::min(best, scan.sigma_half);
    return scan;
}

}  // namespace

void validate_xstate(const XState& x) {
    std::ostringstream msg;
    const double sum = x.r11 + x.r22 + x.r33;
    if (std::abs(sum - 1.0) > 1e-10) {
        msg << "X state not normalized (sum = " << sum << ")";
        throw validation_error(msg.str());
    }
    if (x.r11 < -1e-12 || x.r22 < -1e-12 || x.r33 < -1e-12)
        throw validation_error("X state has a negative population");
    if (std::abs(x.r23) > std::sqrt(std::max(x.r22 * x.r33, 0.0)) + 1e-10)
        throw validation_error("X-state coherence violates block positivity");
}

namespace {

double real_coherence(const DensityMatrix& rho) {
    const std::complex<double> z = rho.m(kAtom2, kAtom1);
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
        throw validation_error("projected state is not X-form (complex coherence)");
    return z.real();
}

}  // namespace

XState project_vacuum(const DensityMatrix& rho_bare) {
    if (rho_bare.basis != Basis::bare)
        throw validation_error("project_vacuum: expected a bare-basis state");
    const double pop_eg = rho_bare.m(kAtom1, kAtom1).real();
    const double pop_ge = rho_bare.m(kAtom2, kAtom2).real();
    const double pop_gg = rho_bare.m(kGround, kGround).real();
    const double p000 = pop_eg + pop_ge + pop_gg;
    if (p000 < 1e-14)
        throw numerical_error("vacuum projection has vanishing probability");

    XState x;
    x.r11 = pop_gg / p000;
    x.r22 = pop_ge / p000;
    x.r33 = pop_eg / p000;
    x.r23 = real_coherence(rho_bare) / p000;
    x.p000 = p000;
    validate_xstate(x);
    return x;
}

XState reduce_atoms(const DensityMatrix& rho_bare) {
    if (rho_bare.basis != Basis::bare)
        throw validation_error("reduce_atoms: expected a bare-basis state");
    XState x;
    x.r22 = rho_bare.m(kAtom2, kAtom2).real();
    x.r33 = rho_bare.m(kAtom1, kAtom1).real();
    x.r11 = rho_bare.m(kCavity1, kCavity1).real() + rho_bare.m(kFiber, kFiber).real() +
            rho_bare.m(kCavity2, kCavity2).real() + rho_bare.m(kGround, kGround).real();
    x.r23 = real_coherence(rho_bare);
    x.p000 = x.r33 + x.r22 + rho_bare.m(kGround, kGround).real();
    validate_xstate(x);
    return x;
}

XState swap_qubits(const XState& x) {
    XState y = x;
    std::swap(y.r22, y.r33);
    return y;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double spectral_entropy(std::span<const double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-12) throw std::invalid_argument("spectral_entropy: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("spectral_entropy: weights must sum to 1");
    double s = 0.0;
    for (double w : weights) s += entropy_term(std::max(w, 0.0));
    return s;
}

double concurrence(const XState& x) {
    return std::clamp(2.0 * std::abs(x.r23), 0.0, 1.0);
}

double entanglement_of_formation(double concurrence_value) {
    if (concurrence_value < -1e-9 || concurrence_value > 1.0 + 1e-9)
        throw std::invalid_argument("entanglement_of_formation: concurrence outside [0,1]");
    const double c = std::clamp(concurrence_value, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double mutual_information(const XState& x) {
    validate_xstate(x);
    return marginal_entropy_a(x) + marginal_entropy_b(x) - joint_entropy(x);
}

double classical_correlation(const XState& x) {
    validate_xstate(x);
    return marginal_entropy_a(x) - scan_measurements(x).minimum;
}

DiscordResult quantum_discord_checked(const XState& x) {
    validate_xstate(x);
    const MeasurementScan scan = scan_measurements(x);
    DiscordResult result;
    result.value = mutual_information(x) - (marginal_entropy_a(x) - scan.minimum);
    result.closed_form =
        marginal_entropy_b(x) - joint_entropy(x) +
        std::min(conditional_entropy_sigma_z(x), conditional_entropy_sigma_half(x));
    if (result.gap() > 1e-4) throw numerical_error("discord algorithms diverge");
    return result;
}

double quantum_discord(const XState& x) { return quantum_discord_checked(x).value; }

CorrelationRecord correlation_record(const XState& x, bool with_alt) {
    validate_xstate(x);
    const MeasurementScan scan = scan_measurements(x);
    const double sa = marginal_entropy_a(x);
    const double sb = marginal_entropy_b(x);
    const double sab = joint_entropy(x);

    CorrelationRecord record;
    record.concurrence = concurrence(x);
    record.entanglement = entanglement_of_formation(record.concurrence);
    record.mutual_info = sa + sb - sab;
    record.classical = sa - scan.minimum;
    record.discord = record.mutual_info - record.classical;
    record.p000 = x.p000;
    record.discord_closed_form =
        sb - sab + std::min(conditional_entropy_sigma_z(x), conditional_entropy_sigma_half(x));
    record.classical_sigma_half = sa - scan.sigma_half;
    if (std::abs(record.discord - record.discord_closed_form) > 1e-4)
        throw numerical_error("discord algorithms diverge");
    if (with_alt) {
        const XState swapped = swap_qubits(x);
        const MeasurementScan alt = scan_measurements(swapped);
        const double mutual_alt = marginal_entropy_a(swapped) + marginal_entropy_b(swapped) -
                                  joint_entropy(swapped);
        record.discord_alt = mutual_alt - (marginal_entropy_a(swapped) - alt.minimum);
    }
    return record;
}

}  // namespace thermal_link
