// dynamics.hpp — exact propagation of the dressed-basis density matrix under
// the thermal rate equations, plus transforms back to the bare basis.

#pragma once

#include "thermal_link/common.hpp"
#include "thermal_link/dissipation.hpp"
#include "thermal_link/spectral.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace thermal_link {

enum class Basis { dressed, bare };

struct DensityMatrix {
    CMat6 m = CMat6::Zero();
    Basis basis = Basis::dressed;

    static DensityMatrix ground(Basis b = Basis::dressed) {
        DensityMatrix rho;
        rho.m(kGround, kGround) = 1.0;
        rho.basis = b;
        return rho;
    }
    static DensityMatrix diagonal(const Vec6& populations, Basis b = Basis::dressed) {
        DensityMatrix rho;
        for (int k = 0; k < kDim; ++k) rho.m(k, k) = populations[k];
        rho.basis = b;
        return rho;
    }

    double trace_real() const { return m.trace().real(); }
    bool is_hermitian(double tol = 1e-12) const {
        return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }
};

struct Trajectory {
    std::vector<double> times;          // gamma*t, strictly increasing
    std::vector<DensityMatrix> states;  // dressed basis
    std::uint64_t params_hash = 0;
    std::uint64_t rates_hash = 0;
};

// Exact solution of the rate equations: the population block evolves under
// the 6x6 generator (eigendecomposition via detailed-balance symmetrization,
// closed form at zero temperature, scaling-and-squaring fallback otherwise);
// every off-diagonal element decays independently with its own complex rate.
Trajectory propagate(const DensityMatrix& rho0, const DressedBasis& dressed,
                     const TransitionRates& rates, std::span<const double> times);

// Populations-only fast path used by propagate; p0 must sum to 1.
std::vector<Vec6> propagate_populations(const Vec6& p0, const TransitionRates& rates,
                                        std::span<const double> times);

DensityMatrix to_bare(const DensityMatrix& rho, const DressedBasis& dressed);

// Log-spaced grid covering [lo, hi] with points_per_decade samples per decade.
std::vector<double> log_time_grid(double lo, double hi, int points_per_decade);

// gamma_t, rho11..rho66 (dressed populations), 12 significant digits.
void write_populations_csv(const Trajectory& trajectory, std::ostream& out);

// Row-major little-endian doubles per sample: gamma_t, then re,im for each of
// the 36 dressed-matrix entries.
void write_binary_dump(const Trajectory& trajectory, const std::string& path);
Trajectory read_binary_dump(const std::string& path);

}  // namespace thermal_link
