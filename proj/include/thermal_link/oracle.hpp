// oracle.hpp — brute-force reference dynamics: the full vectorized generator
// assembled term by term from the equation of motion, exponentiated with
// scaling-and-squaring. Test/diagnostic path only; the sweep engine never
// calls it.

#pragma once

#include "thermal_link/common.hpp"
#include "thermal_link/dissipation.hpp"
#include "thermal_link/dynamics.hpp"
#include "thermal_link/spectral.hpp"

namespace thermal_link {

struct VectorizedGenerator {
    // Acts on [Re vec(rho); Im vec(rho)] with row-major vec, so 72x72.
    Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(2 * kDim * kDim, 2 * kDim * kDim);
};

// Right-hand side of the equation of motion applied to an arbitrary matrix.
CMat6 master_equation_rhs(const DressedBasis& dressed, const TransitionRates& rates,
                          const CMat6& rho);

VectorizedGenerator build_generator(const DressedBasis& dressed,
                                    const TransitionRates& rates);

Eigen::VectorXd vectorize(const CMat6& rho);
CMat6 unvectorize(const Eigen::VectorXd& v);

// e^{t L} vec(rho0); Hermiticity restored by symmetrization. The deviation
// before symmetrization is written to *hermiticity_defect when non-null.
DensityMatrix expm_propagate(const VectorizedGenerator& generator,
                             const DensityMatrix& rho0, double t,
                             double* hermiticity_defect = nullptr);

// Diagonal dressed-basis state with p_k proportional to e^{-Omega_k / T}.
DensityMatrix gibbs_reference(const DressedBasis& dressed, double temperature);

}  // namespace thermal_link
