#include "thermal_link/oracle.hpp"

#include "thermal_link/expm.hpp"

#include <cmath>
#include <complex>

namespace thermal_link {

CMat6 master_equation_rhs(const DressedBasis& dressed, const TransitionRates& rates,
                          const CMat6& rho) {
    const std::complex<double> i_unit(0.0, 1.0);
    CMat6 out = CMat6::Zero();
    for (int m = 0; m < kDim; ++m) {
        for (int n = 0; n < kDim; ++n) {
            // omega_bar_{n,m} = Omega_m - Omega_n
            std::complex<double> value =
                -i_unit * (dressed.omega[m] - dressed.omega[n]) * rho(m, n);
            for (int k = 0; k < 5; ++k) {
                const double down = rates.down[k];
                std::complex<double> term = 0.0;
                if (m == kGround && n == kGround) term += 2.0 * rho(k, k);
                if (m == k) term -= rho(k, n);
                if (n == k) term -= rho(m, k);
                value += 0.5 * down * term;

                const double up = rates.up[k];
                std::complex<double> pump = 0.0;
                if (m == k && n == k) pump += 2.0 * rho(kGround, kGround);
                if (m == kGround) pump -= rho(kGround, n);
                if (n == kGround) pump -= rho(m, kGround);
                value += 0.5 * up * pump;
            }
            out(m, n) = value;
        }
    }
    return out;
}

Eigen::VectorXd vectorize(const CMat6& rho) {
    Eigen::VectorXd v(2 * kDim * kDim);
    for (int m = 0; m < kDim; ++m) {
        for (int n = 0; n < kDim; ++n) {
            v[m * kDim + n] = rho(m, n).real();
            v[kDim * kDim + m * kDim + n] = rho(m, n).imag();
        }
    }
    return v;
}

CMat6 unvectorize(const Eigen::VectorXd& v) {
    CMat6 rho;
    for (int m = 0; m < kDim; ++m)
        for (int n = 0; n < kDim; ++n)
            rho(m, n) = {v[m * kDim + n], v[kDim * kDim + m * kDim + n]};
    return rho;
}

VectorizedGenerator build_generator(const DressedBasis& dressed,
                                    const TransitionRates& rates) {
    VectorizedGenerator gen;
    const int dim2 = kDim * kDim;
    for (int col = 0; col < 2 * dim2; ++col) {
        Eigen::VectorXd basis = Eigen::VectorXd::Zero(2 * dim2);
        basis[col] = 1.0;
        gen.matrix.col(col) = vectorize(master_equation_rhs(dressed, rates, unvectorize(basis)));
    }
    return gen;
}

DensityMatrix expm_propagate(const VectorizedGenerator& generator,
                             const DensityMatrix& rho0, double t,
                             double* hermiticity_defect) {
    if (t < 0.0) throw validation_error("expm_propagate: negative time");
    const Eigen::MatrixXd propagator = expm(generator.matrix * t);
    const CMat6 raw = unvectorize(propagator * vectorize(rho0.m));

    if (hermiticity_defect) {
        *hermiticity_defect =
            (raw - raw.adjoint().eval()).cwiseAbs().maxCoeff();
    }
    DensityMatrix out;
    out.basis = rho0.basis;
    out.m = 0.5 * (raw + raw.adjoint().eval());
    return out;
}

DensityMatrix gibbs_reference(const DressedBasis& dressed, double temperature) {
    if (!(temperature > 0.0))
        throw validation_error("gibbs_reference: temperature must be positive");
    Vec6 populations;
    double z = 0.0;
    for (int k = 0; k < kDim; ++k) {
        populations[k] = std::exp(-dressed.omega[k] / temperature);
        z += populations[k];
    }
    populations /= z;
    return DensityMatrix::diagonal(populations, Basis::dressed);
}

}  // namespace thermal_link
