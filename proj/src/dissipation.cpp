#include "thermal_link/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace thermal_link {

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw std::invalid_argument("positive Bohr frequency required");
    if (temperature <= 0.0) return 0.0;
    const double x = omega / temperature;
    if (x > 700.0) return std::exp(-x);  // expm1 would overflow; error < 1e-300
    return 1.0 / std::expm1(x);
}

TransitionRates transition_rates(const DressedBasis& dressed, const SystemParams& params) {
    for (int k = 0; k < 5; ++k) {
        if (!(dressed.omega[k] > 0.0)) {
            std::ostringstream msg;
            msg << "excited dressed level below ground (Omega_" << k + 1 << " = "
                << dressed.omega[k] << ")";
            throw numerical_error(msg.str());
        }
    }

    struct Channel {
        int bare_row;
        int weight_row;
        double gamma;
        double temperature;
    };
    // Bath 1 damps cavity 1, bath 2 cavity 2, bath 3 the fiber.
    const Channel channels[3] = {
        {kCavity1, kWeightCavity1, params.gamma1, params.T1},
        {kCavity2, kWeightCavity2, params.gamma2, params.T2},
        {kFiber, kWeightFiber, params.gamma3, params.T3},
    };

    TransitionRates rates;
    for (int k = 0; k < 5; ++k) {
        const double bohr = dressed.bohr(kGround, k);  // = Omega_k
        for (const Channel& ch : channels) {
            const double amp = dressed.coeff(ch.bare_row, k);
            const double weight = amp * amp;
            const double occupation = thermal_occupation(bohr, ch.temperature);
            rates.weights[ch.weight_row][k] = weight;
            rates.nbar[ch.weight_row][k] = occupation;
            rates.down[k] += weight * ch.gamma * (occupation + 1.0);
            rates.up[k] += weight * ch.gamma * occupation;
        }
        if (!std::isfinite(rates.down[k]) || !std::isfinite(rates.up[k]))
            throw numerical_error("non-finite transition rate");
    }
    return rates;
}

CheckReport rwa_check(const DressedBasis&, const TransitionRates& rates,
                      const SystemParams& params) {
    const double min_coupling = std::min({params.g1, params.g2, params.nu});
    const double max_down = *std::max_element(rates.down.begin(), rates.down.end());

    CheckReport report;
    report.ratio = max_down > 0.0 ? 2.0 * min_coupling / max_down
                                  : std::numeric_limits<double>::infinity();
    report.warn = report.ratio < 10.0;
    std::ostringstream msg;
    msg << "2 min(g1,g2,nu) / max_k gamma_{k->6} = " << report.ratio;
    if (report.warn) msg << " (below 10: rotating-wave treatment questionable)";
    report.message = msg.str();
    return report;
}

}  // namespace thermal_link
