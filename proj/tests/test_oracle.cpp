#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thermal_link/oracle.hpp"
#include "test_helpers.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <random>

using namespace thermal_link;
using thermal_link::testing::random_density;
using thermal_link::testing::random_params;

namespace {

SystemParams equal_temperature_params(double nbar) {
    SystemParams p;
    p.omega_a = 200.0;
    p.delta = 5.0;
    p.g1 = p.g2 = p.nu = 2.0;
    const DressedBasis basis = dressed_basis(p);
    p.T1 = p.T2 = p.T3 = temperature_for_occupation(nbar, basis.omega_bar_65());
    return p;
}

}  // namespace

TEST_CASE("generator columns reproduce the equation of motion") {
    std::mt19937_64 rng(3);
    const SystemParams p = random_params(rng);
    const DressedBasis basis = dressed_basis(p);
    const TransitionRates rates = transition_rates(basis, p);
    const VectorizedGenerator gen = build_generator(basis, rates);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density(rng);
        const Eigen::VectorXd lhs = gen.matrix * vectorize(rho.m);
        const Eigen::VectorXd rhs = vectorize(master_equation_rhs(basis, rates, rho.m));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * p.omega_a);
    }
}

TEST_CASE("rate-free generator is the pure commutator") {
    SystemParams p;
    p.omega_a = 100.0;
    p.g1 = p.g2 = p.nu = 1.5;
    p.gamma1 = p.gamma2 = p.gamma3 = 0.0;
    const DressedBasis basis = dressed_basis(p);
    const TransitionRates rates = transition_rates(basis, p);
    const VectorizedGenerator gen = build_generator(basis, rates);

    // i and j index dressed levels; unitary evolution rotates each rho_mn at
    // the Bohr frequency, so the spectrum is {+-i(Omega_m - Omega_n)}.
    Eigen::EigenSolver<Eigen::MatrixXd> eig(gen.matrix);
    for (int i = 0; i < gen.matrix.rows(); ++i)
        CHECK(std::abs(eig.eigenvalues()[i].real()) <= 1e-9);

    std::mt19937_64 rng(17);
    const DensityMatrix rho = random_density(rng);
    const CMat6 rhs = master_equation_rhs(basis, rates, rho.m);
    const std::complex<double> i_unit(0.0, 1.0);
    CMat6 commutator = CMat6::Zero();
    for (int m = 0; m < kDim; ++m)
        for (int n = 0; n < kDim; ++n)
            commutator(m, n) =
                -i_unit * (basis.omega[m] - basis.omega[n]) * rho.m(m, n);
    CHECK((rhs - commutator).cwiseAbs().maxCoeff() <= 1e-12 * p.omega_a);
}

TEST_CASE("trace functional annihilates the generator") {
    std::mt19937_64 rng(29);
    const SystemParams p = random_params(rng);
    const DressedBasis basis = dressed_basis(p);
    const TransitionRates rates = transition_rates(basis, p);
    const VectorizedGenerator gen = build_generator(basis, rates);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = random_density(rng);
        const CMat6 dot = master_equation_rhs(basis, rates, rho.m);
        CHECK(std::abs(dot.trace()) <= 1e-12 * p.omega_a);
        const Eigen::VectorXd v = gen.matrix * vectorize(rho.m);
        double diag_sum = 0.0;
        for (int k = 0; k < kDim; ++k) diag_sum += v[k * kDim + k];
        CHECK(std::abs(diag_sum) <= 1e-12 * p.omega_a);
    }
}

TEST_CASE("dressed Gibbs state is stationary at equal bath temperatures") {
    const SystemParams p = equal_temperature_params(0.8);
    const DressedBasis basis = dressed_basis(p);
    const TransitionRates rates = transition_rates(basis, p);
    const VectorizedGenerator gen = build_generator(basis, rates);
    const DensityMatrix gibbs = gibbs_reference(basis, p.T1);
    CHECK((gen.matrix * vectorize(gibbs.m)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("generator spectrum: no growth, one stationary mode at T > 0") {
    const SystemParams p = equal_temperature_params(0.5);
    const DressedBasis basis = dressed_basis(p);
    const TransitionRates rates = transition_rates(basis, p);

    // Density matrices live in the Hermitian sector; build the generator on
    // an orthonormal Hermitian basis (the realified 72x72 operator would list
    // every eigenvalue together with its conjugate partner).
    std::vector<CMat6> hermitian_basis;
    for (int k = 0; k < kDim; ++k) {
        CMat6 e = CMat6::Zero();
        e(k, k) = 1.0;
        hermitian_basis.push_back(e);
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int m = 0; m < kDim; ++m) {
        for (int n = m + 1; n < kDim; ++n) {
            CMat6 re = CMat6::Zero();
            re(m, n) = re(n, m) = inv_sqrt2;
            hermitian_basis.push_back(re);
            CMat6 im = CMat6::Zero();
            im(m, n) = {0.0, inv_sqrt2};
            im(n, m) = {0.0, -inv_sqrt2};
            hermitian_basis.push_back(im);
        }
    }
    const int dim = static_cast<int>(hermitian_basis.size());
    Eigen::MatrixXd sector(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const CMat6 rhs = master_equation_rhs(basis, rates, hermitian_basis[col]);
        for (int row = 0; row < dim; ++row) {
            sector(row, col) =
                (hermitian_basis[row].adjoint() * rhs).trace().real();
        }
    }

    Eigen::EigenSolver<Eigen::MatrixXd> eig(sector);
    int near_zero = 0;
    for (int i = 0; i < dim; ++i) {
        CHECK(eig.eigenvalues()[i].real() <= 1e-10);
        if (std::abs(eig.eigenvalues()[i]) <= 1e-9) ++near_zero;
    }
    CHECK(near_zero == 1);

    // the stationary eigenvector, normalized to unit trace, is the long-time
    // propagated state
    int index = 0;
    for (int i = 0; i < dim; ++i)
        if (std::abs(eig.eigenvalues()[i]) < std::abs(eig.eigenvalues()[index])) index = i;
    CMat6 steady = CMat6::Zero();
    for (int b = 0; b < dim; ++b)
        steady += eig.eigenvectors().col(index).real()[b] * hermitian_basis[b];
    steady /= steady.trace();
    const VectorizedGenerator gen = build_generator(basis, rates);
    const DensityMatrix late = expm_propagate(gen, DensityMatrix::ground(), 1.0e6);
    CHECK((steady - late.m).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("expm propagation basics") {
    const SystemParams p = equal_temperature_params(1.0);
    const DressedBasis basis = dressed_basis(p);
    const TransitionRates rates = transition_rates(basis, p);
    const VectorizedGenerator gen = build_generator(basis, rates);

    std::mt19937_64 rng(31);
    const DensityMatrix rho0 = random_density(rng);
    const DensityMatrix same = expm_propagate(gen, rho0, 0.0);
    CHECK((same.m - rho0.m).cwiseAbs().maxCoeff() <= 1e-13);

    double defect = 0.0;
    const DensityMatrix late = expm_propagate(gen, rho0, 1.0e6, &defect);
    CHECK(defect <= 1e-9);
    const DensityMatrix gibbs = gibbs_reference(basis, p.T1);
    CHECK((late.m - gibbs.m).cwiseAbs().maxCoeff() <= 1e-6);

    CHECK_THROWS_AS(expm_propagate(gen, rho0, -1.0), validation_error);
}

TEST_CASE("gibbs reference limits") {
    const SystemParams p = equal_temperature_params(1.0);
    const DressedBasis basis = dressed_basis(p);
    const DensityMatrix flat = gibbs_reference(basis, 1.0e15);
    for (int k = 0; k < kDim; ++k)
        CHECK(flat.m(k, k).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-10));

    const DensityMatrix boltz = gibbs_reference(basis, p.omega_a);
    const double ratio = boltz.m(kGround, kGround).real() / boltz.m(2, 2).real();
    CHECK(ratio == doctest::Approx(std::exp(basis.omega[2] / p.omega_a)).epsilon(1e-12));

    CHECK_THROWS_AS(gibbs_reference(basis, 0.0), validation_error);
    CHECK_THROWS_AS(gibbs_reference(basis, -1.0), validation_error);
}
