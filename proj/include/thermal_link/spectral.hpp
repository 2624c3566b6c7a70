// spectral.hpp — single-excitation Hamiltonian of the atom-cavity-fiber chain
// and its sorted dressed eigensystem.

#pragma once

#include "thermal_link/common.hpp"
#include "thermal_link/params.hpp"

#include <string>
#include <vector>

namespace thermal_link {

// 6x6 real symmetric matrix in the bare basis; ground row/column are zero.
Mat6 build_hamiltonian(const SystemParams& params);

struct DressedBasis {
    // omega[k] = Omega_{k+1}, sorted descending; omega[5] = 0 (ground).
    Vec6 omega = Vec6::Zero();
    // coeff column k holds dressed state |k~> in the bare basis; column 5 is
    // the unit vector on |gg000>.
    Mat6 coeff = Mat6::Identity();
    // Non-fatal diagnostics (near-degenerate clusters).
    std::vector<std::string> warnings;

    double bohr(int alpha, int beta) const { return omega[beta] - omega[alpha]; }
    // Gap between the lowest excited level and the ground state.
    double omega_bar_65() const { return omega[4] - omega[5]; }

    std::uint64_t hash() const {
        Fnv1a h;
        for (int k = 0; k < kDim; ++k) h.feed(omega[k]);
        for (int i = 0; i < kDim; ++i)
            for (int k = 0; k < kDim; ++k) h.feed(coeff(i, k));
        return h.state;
    }
};

// Eigenvalues sorted descending (near-degenerate clusters ordered by bare
// overlaps), eigenvector signs fixed so the largest-magnitude component is
// positive. Throws validation_error if H is not symmetric.
DressedBasis eigensystem(const Mat6& hamiltonian);

inline DressedBasis dressed_basis(const SystemParams& params) {
    return eigensystem(build_hamiltonian(params));
}

}  // namespace thermal_link
