// jacobi.hpp — cyclic Jacobi eigensolver for small dense symmetric matrices.
//
// Runs the rotations in extended precision: the excited block of the chain
// Hamiltonian carries nearly degenerate triples split by ~1e-10 of the
// diagonal scale, and double-precision backward error would mix those
// eigenvectors enough to corrupt the small photonic overlap weights that
// set the slow thermal rates.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>

namespace thermal_link {

struct JacobiResult {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // column k pairs with values[k]
    int sweeps = 0;
};

inline constexpr int kJacobiMaxN = 8;

// Core routine; `a` is overwritten. Entries may be prepared in extended
// precision by the caller when the source data allows it.
inline JacobiResult jacobi_eigensystem_core(int n, long double a[][kJacobiMaxN]) {
    constexpr int kMaxSweeps = 50;

    long double v[kJacobiMaxN][kJacobiMaxN];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[i][j] = (i == j) ? 1.0L : 0.0L;

    long double scale = 0.0L;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale += a[i][j] * a[i][j];
    const long double stop = scale * 1e-60L;

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        long double off = 0.0L;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0L) continue;
                const long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
                const long double sign = theta >= 0.0L ? 1.0L : -1.0L;
                const long double t = sign / (sign * theta + std::sqrt(theta * theta + 1.0L));
                const long double c = 1.0L / std::sqrt(t * t + 1.0L);
                const long double s = t * c;
                const long double tau = s / (1.0L + c);

                const long double apq = a[p][q];
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = a[q][p] = 0.0L;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const long double arp = a[r][p];
                        const long double arq = a[r][q];
                        a[r][p] = a[p][r] = arp - s * (arq + tau * arp);
                        a[r][q] = a[q][r] = arq + s * (arp - tau * arq);
                    }
                    const long double vrp = v[r][p];
                    const long double vrq = v[r][q];
                    v[r][p] = vrp - s * (vrq + tau * vrp);
                    v[r][q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    JacobiResult out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = static_cast<double>(a[i][i]);
        for (int j = 0; j < n; ++j) out.vectors(i, j) = static_cast<double>(v[i][j]);
    }
    return out;
}

inline JacobiResult jacobi_eigensystem(const Eigen::MatrixXd& matrix) {
    const int n = static_cast<int>(matrix.rows());
    long double a[kJacobiMaxN][kJacobiMaxN];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = static_cast<long double>(0.5 * (matrix(i, j) + matrix(j, i)));
    return jacobi_eigensystem_core(n, a);
}

}  // namespace thermal_link
