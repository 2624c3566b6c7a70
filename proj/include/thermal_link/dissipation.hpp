// dissipation.hpp — thermal occupations, photonic overlap weights, and
// KMS-balanced transition rates between the excited dressed levels and the
// ground state.

#pragma once

#include "thermal_link/common.hpp"
#include "thermal_link/params.hpp"
#include "thermal_link/spectral.hpp"

#include <array>
#include <string>

namespace thermal_link {

// Bose-Einstein occupation 1/(e^{omega/T} - 1); exactly 0 at T = 0.
double thermal_occupation(double omega, double temperature);

// Weight rows follow the photonic bare states in chain order.
inline constexpr int kWeightCavity1 = 0;
inline constexpr int kWeightFiber = 1;
inline constexpr int kWeightCavity2 = 2;

struct TransitionRates {
    std::array<double, 5> down{};  // gamma_{k->6}
    std::array<double, 5> up{};    // gamma_{6->k}
    // weights[j][k] = |<bare photon j | dressed k>|^2, j in {cavity1, fiber, cavity2}
    std::array<std::array<double, 5>, 3> weights{};
    // nbar[j][k] = occupation of bath j at the Bohr frequency Omega_k
    std::array<std::array<double, 5>, 3> nbar{};

    std::uint64_t hash() const {
        Fnv1a h;
        h.feed_range(down.begin(), down.end());
        h.feed_range(up.begin(), up.end());
        for (const auto& row : weights) h.feed_range(row.begin(), row.end());
        return h.state;
    }
};

// down[k] = sum_j w_jk gamma_j (nbar_j(Omega_k) + 1), up[k] from the KMS
// relation. Throws numerical_error if an excited level lies at or below the
// ground energy.
TransitionRates transition_rates(const DressedBasis& dressed, const SystemParams& params);

struct CheckReport {
    double ratio = 0.0;  // 2 min(g1,g2,nu) / max_k down[k]
    bool warn = false;
    std::string message;
};

// Rotating-wave sanity: flags ratios below 10.
CheckReport rwa_check(const DressedBasis& dressed, const TransitionRates& rates,
                      const SystemParams& params);

}  // namespace thermal_link
