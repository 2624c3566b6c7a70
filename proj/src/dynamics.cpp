#include "thermal_link/dynamics.hpp"

#include "thermal_link/expm.hpp"
#include "thermal_link/jacobi.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

namespace thermal_link {

namespace {

Mat6 population_generator(const TransitionRates& rates) {
    Mat6 m = Mat6::Zero();
    double up_total = 0.0;
    for (int k = 0; k < 5; ++k) {
        m(k, k) = -rates.down[k];
        m(k, kGround) = rates.up[k];
        m(kGround, k) = rates.down[k];
        up_total += rates.up[k];
    }
    m(kGround, kGround) = -up_total;
    return m;
}

}  // namespace

std::vector<Vec6> propagate_populations(const Vec6& p0, const TransitionRates& rates,
                                        std::span<const double> times) {
    std::vector<int> active;
    bool any_up = false;
    bool symmetrizable = true;
    for (int k = 0; k < 5; ++k) {
        if (rates.down[k] > 0.0) {
            active.push_back(k);
            if (rates.up[k] > 0.0) {
                any_up = true;
                if (rates.up[k] / rates.down[k] < 1e-280) symmetrizable = false;
            } else {
                symmetrizable = false;
            }
        } else if (rates.up[k] > 0.0) {
            symmetrizable = false;  // pumped but undamped: no detailed balance
            any_up = true;
            active.push_back(k);
        }
    }

    std::vector<Vec6> out(times.size(), p0);

    if (active.empty()) return out;  // fully decoupled populations

    if (!any_up) {
        // Zero-temperature baths: every excited level decays one way into the
        // ground state.
        for (std::size_t i = 0; i < times.size(); ++i) {
            double drained = 0.0;
            for (int k : active) {
                const double decayed = p0[k] * std::exp(-rates.down[k] * times[i]);
                out[i][k] = decayed;
                drained += p0[k] - decayed;
            }
            out[i][kGround] = p0[kGround] + drained;
        }
        return out;
    }

    if (symmetrizable) {
        // Detailed balance: pi_k = up_k/down_k (pi_ground = 1) makes
        // D^{-1/2} M D^{1/2} symmetric, so the spectrum is real and the
        // eigenproblem perfectly conditioned.
        // The entries are assembled in extended precision: the exact matrix
        // annihilates sqrt(pi), and double rounding here would mix the
        // stationary mode with slowly decaying ones.
        const int n = static_cast<int>(active.size()) + 1;
        Eigen::VectorXd sigma(n);
        for (int i = 0; i + 1 < n; ++i)
            sigma[i] = std::sqrt(rates.up[active[i]] / rates.down[active[i]]);
        sigma[n - 1] = 1.0;

        long double sym[kJacobiMaxN][kJacobiMaxN] = {};
        long double up_total = 0.0L;
        for (int i = 0; i + 1 < n; ++i) {
            const int k = active[i];
            const long double up = rates.up[k];
            const long double down = rates.down[k];
            sym[i][i] = -down;
            sym[i][n - 1] = sym[n - 1][i] = std::sqrt(up * down);
            up_total += up;
        }
        sym[n - 1][n - 1] = -up_total;

        JacobiResult eig = jacobi_eigensystem_core(n, sym);
        // The stationary direction is exact by detailed balance; rounding in
        // the assembled entries shifts its eigenvalue by ~1e-16, which would
        // integrate into a visible trace drift over nine decades of time.
        {
            int zero_index = 0;
            double magnitude = std::abs(eig.values[0]);
            double largest = magnitude;
            for (int i = 1; i < n; ++i) {
                const double a = std::abs(eig.values[i]);
                largest = std::max(largest, a);
                if (a < magnitude) {
                    magnitude = a;
                    zero_index = i;
                }
            }
            if (magnitude <= 1e-10 * std::max(largest, 1e-300))
                eig.values[zero_index] = 0.0;
        }

        Eigen::VectorXd y0(n);
        for (int i = 0; i + 1 < n; ++i) y0[i] = p0[active[i]] / sigma[i];
        y0[n - 1] = p0[kGround];
        const Eigen::VectorXd coeff = eig.vectors.transpose() * y0;

        for (std::size_t s = 0; s < times.size(); ++s) {
            Eigen::VectorXd scaled(n);
            for (int i = 0; i < n; ++i)
                scaled[i] = coeff[i] * std::exp(eig.values[i] * times[s]);
            const Eigen::VectorXd y = eig.vectors * scaled;
            for (int i = 0; i + 1 < n; ++i) out[s][active[i]] = sigma[i] * y[i];
            out[s][kGround] = y[n - 1];
        }
        return out;
    }

    // Mixed exact zeros (some levels damped but never pumped alongside pumped
    // ones): no detailed-balance factorization; exponentiate directly.
    const Mat6 gen = population_generator(rates);
    for (std::size_t s = 0; s < times.size(); ++s) {
        const Eigen::MatrixXd prop = expm(gen * times[s]);
        out[s] = prop * p0;
    }
    return out;
}

Trajectory propagate(const DensityMatrix& rho0, const DressedBasis& dressed,
                     const TransitionRates& rates, std::span<const double> times) {
    if (rho0.basis != Basis::dressed)
        throw validation_error("propagate: initial state must be in the dressed basis");
    if (!rho0.is_hermitian(1e-10))
        throw validation_error("propagate: initial state is not Hermitian");
    for (int k = 0; k < 5; ++k) {
        if (!std::isfinite(rates.down[k]) || !std::isfinite(rates.up[k]))
            throw numerical_error("propagate: non-finite transition rate");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw validation_error("propagate: time grid must be strictly increasing");
    }

    Vec6 p0;
    for (int k = 0; k < kDim; ++k) p0[k] = rho0.m(k, k).real();
    const std::vector<Vec6> populations = propagate_populations(p0, rates, times);

    double up_total = 0.0;
    for (int k = 0; k < 5; ++k) up_total += rates.up[k];

    Trajectory trajectory;
    trajectory.times.assign(times.begin(), times.end());
    trajectory.rates_hash = rates.hash();
    trajectory.params_hash = dressed.hash();
    trajectory.states.resize(times.size());

    for (std::size_t s = 0; s < times.size(); ++s) {
        DensityMatrix& rho = trajectory.states[s];
        rho.basis = Basis::dressed;
        for (int k = 0; k < kDim; ++k) rho.m(k, k) = populations[s][k];
        const double t = times[s];
        for (int m = 0; m < kDim; ++m) {
            for (int n = m + 1; n < kDim; ++n) {
                const std::complex<double> z0 = rho0.m(m, n);
                if (z0 == std::complex<double>(0.0, 0.0)) continue;
                const double decay =
                    n == kGround ? rates.down[m] + up_total : rates.down[m] + rates.down[n];
                const std::complex<double> factor = std::exp(
                    std::complex<double>(-0.5 * decay * t,
                                         -(dressed.omega[m] - dressed.omega[n]) * t));
                rho.m(m, n) = z0 * factor;
                rho.m(n, m) = std::conj(z0 * factor);
            }
        }
    }
    return trajectory;
}

DensityMatrix to_bare(const DensityMatrix& rho, const DressedBasis& dressed) {
    if (rho.basis != Basis::dressed)
        throw validation_error("to_bare: expected a dressed-basis state");
    DensityMatrix out;
    out.basis = Basis::bare;
    out.m = dressed.coeff.cast<std::complex<double>>() * rho.m *
            dressed.coeff.transpose().cast<std::complex<double>>();
    return out;
}

std::vector<double> log_time_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo) || points_per_decade < 1)
        throw validation_error("log_time_grid: need 0 < lo < hi and points_per_decade >= 1");
    const double decades = std::log10(hi / lo);
    const int n = static_cast<int>(std::ceil(decades * points_per_decade - 1e-9));
    std::vector<double> grid(n + 1);
    const double log_lo = std::log10(lo);
    for (int i = 0; i < n; ++i)
        grid[i] = std::pow(10.0, log_lo + static_cast<double>(i) / points_per_decade);
    grid[n] = hi;
    return grid;
}

void write_populations_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "gamma_t,rho11,rho22,rho33,rho44,rho55,rho66\n";
    char buf[64];
    for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
        std::snprintf(buf, sizeof(buf), "%.12g", trajectory.times[s]);
        out << buf;
        for (int k = 0; k < kDim; ++k) {
            std::snprintf(buf, sizeof(buf), ",%.12g", trajectory.states[s].m(k, k).real());
            out << buf;
        }
        out << '\n';
    }
}

void write_binary_dump(const Trajectory& trajectory, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot open '" + path + "' for writing");
    auto put = [&out](double x) { out.write(reinterpret_cast<const char*>(&x), 8); };
    for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
        put(trajectory.times[s]);
        for (int m = 0; m < kDim; ++m) {
            for (int n = 0; n < kDim; ++n) {
                put(trajectory.states[s].m(m, n).real());
                put(trajectory.states[s].m(m, n).imag());
            }
        }
    }
}

Trajectory read_binary_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open '" + path + "' for reading");
    Trajectory trajectory;
    for (;;) {
        double record[1 + 2 * kDim * kDim];
        in.read(reinterpret_cast<char*>(record), sizeof(record));
        if (in.gcount() == 0 && in.eof()) break;
        if (in.gcount() != sizeof(record))
            throw validation_error("truncated binary dump '" + path + "'");
        trajectory.times.push_back(record[0]);
        DensityMatrix rho;
        rho.basis = Basis::dressed;
        for (int m = 0; m < kDim; ++m)
            for (int n = 0; n < kDim; ++n)
                rho.m(m, n) = {record[1 + 2 * (m * kDim + n)],
                               record[2 + 2 * (m * kDim + n)]};
        trajectory.states.push_back(rho);
    }
    return trajectory;
}

}  // namespace thermal_link
