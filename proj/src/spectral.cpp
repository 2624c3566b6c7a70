#include "thermal_link/spectral.hpp"

#include "thermal_link/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace thermal_link {

Mat6 build_hamiltonian(const SystemParams& params) {
    const double omega_0 = params.omega_0();
    Mat6 h = Mat6::Zero();
    h(kAtom1, kAtom1) = params.omega_a;
    h(kCavity1, kCavity1) = omega_0;
    h(kFiber, kFiber) = params.omega_a;
    h(kCavity2, kCavity2) = omega_0;
    h(kAtom2, kAtom2) = params.omega_a;

    h(kAtom1, kCavity1) = h(kCavity1, kAtom1) = params.g1;
    h(kCavity1, kFiber) = h(kFiber, kCavity1) = params.nu;
    h(kFiber, kCavity2) = h(kCavity2, kFiber) = params.nu;
    h(kCavity2, kAtom2) = h(kAtom2, kCavity2) = params.g2;
    return h;
}

namespace {

// Order a near-degenerate cluster by descending overlap with |1>, then |2>, ...
void order_cluster(std::vector<int>& idx, const Eigen::MatrixXd& vectors,
                   int begin, int end) {
    std::sort(idx.begin() + begin, idx.begin() + end, [&](int a, int b) {
        for (int row = 0; row < 5; ++row) {
            const double wa = vectors(row, a) * vectors(row, a);
            const double wb = vectors(row, b) * vectors(row, b);
            if (std::abs(wa - wb) > 1e-12) return wa > wb;
        }
        return a < b;
    });
}

}  // namespace

DressedBasis eigensystem(const Mat6& hamiltonian) {
    const double scale = hamiltonian.cwiseAbs().maxCoeff();
    if ((hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(scale, 1.0)) {
        throw validation_error("eigensystem: matrix is not symmetric");
    }

    // The ground state is exactly decoupled; diagonalize the excited block.
    Eigen::MatrixXd block = hamiltonian.topLeftCorner<5, 5>();
    const JacobiResult jac = jacobi_eigensystem(block);

    std::vector<int> idx(5);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return jac.values[a] > jac.values[b]; });

    DressedBasis out;
    const double degeneracy_tol = 1e-9 * std::max(scale, 1.0);
    int cluster_begin = 0;
    for (int k = 1; k <= 5; ++k) {
        const bool closes = k == 5 || jac.values[idx[k - 1]] - jac.values[idx[k]] >
                                          degeneracy_tol;
        if (closes) {
            if (k - cluster_begin > 1) {
                std::ostringstream msg;
                msg << "near-degenerate eigenvalue cluster (levels " << cluster_begin + 1
                    << ".." << k << ", gap below " << degeneracy_tol
                    << "); ordering by bare-state overlap";
                out.warnings.push_back(msg.str());
                order_cluster(idx, jac.vectors, cluster_begin, k);
            }
            cluster_begin = k;
        }
    }

    for (int k = 0; k < 5; ++k) {
        out.omega[k] = jac.values[idx[k]];
        Eigen::VectorXd column = jac.vectors.col(idx[k]);
        int imax = 0;
        for (int i = 1; i < 5; ++i)
            if (std::abs(column[i]) > std::abs(column[imax])) imax = i;
        if (column[imax] < 0.0) column = -column;
        out.coeff.col(k).head<5>() = column;
        out.coeff(kGround, k) = 0.0;
    }
    out.omega[5] = 0.0;
    out.coeff.col(5).setZero();
    out.coeff(kGround, 5) = 1.0;
    return out;
}

}  // namespace thermal_link
