// test_helpers.hpp — shared generators for the unit and acceptance suites.

#pragma once

#include "thermal_link/dynamics.hpp"
#include "thermal_link/params.hpp"

#include <random>

namespace thermal_link::testing {

// Random complex PSD matrix with unit trace (dressed basis).
inline DensityMatrix random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMat6 a;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) a(i, j) = {normal(rng), normal(rng)};
    CMat6 rho = a * a.adjoint();
    rho /= rho.trace();
    DensityMatrix out;
    out.m = 0.5 * (rho + rho.adjoint().eval());
    out.basis = Basis::dressed;
    return out;
}

// Admissible parameters with moderate scales so the reference exponential
// stays cheap and well-conditioned.
inline SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SystemParams p;
    p.omega_a = 100.0 + 300.0 * uni(rng);
    p.delta = -10.0 + 20.0 * uni(rng);
    p.g1 = 0.5 + 3.5 * uni(rng);
    p.g2 = 0.5 + 3.5 * uni(rng);
    p.nu = 0.5 + 3.5 * uni(rng);
    p.gamma1 = 0.2 + 1.3 * uni(rng);
    p.gamma2 = 0.2 + 1.3 * uni(rng);
    p.gamma3 = 0.2 + 1.3 * uni(rng);
    p.T1 = 20.0 + 500.0 * uni(rng);
    p.T2 = 20.0 + 500.0 * uni(rng);
    p.T3 = 20.0 + 500.0 * uni(rng);
    return p;
}

}  // namespace thermal_link::testing
