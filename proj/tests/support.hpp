#pragma once

// Dirac-matrix helpers shared by the unit and acceptance tests.

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "nqa/solver.hpp"

namespace nqa::test {

using Matrix4 = Eigen::Matrix4cd;

// Dirac representation.
inline Matrix4 gamma0()
{
    Matrix4 g = Matrix4::Zero();
    g.diagonal() << 1.0, 1.0, -1.0, -1.0;
    return g;
}

inline Matrix4 gamma_k(int k)
{
    using C = std::complex<double>;
    Eigen::Matrix2cd s;
    if (k == 0) {
        s << 0.0, 1.0, 1.0, 0.0;
    } else if (k == 1) {
        s << 0.0, C(0.0, -1.0), C(0.0, 1.0), 0.0;
    } else {
        s << 1.0, 0.0, 0.0, -1.0;
    }
    Matrix4 g = Matrix4::Zero();
    g.topRightCorner<2, 2>() = s;
    g.bottomLeftCorner<2, 2>() = -s;
    return g;
}

// ||f (pslash - m2)^T|| / (||f|| ||pslash - m2||) with pslash = gamma^0 E - gamma . p.
inline double auxiliary_residual(const RadialSolution& s, std::size_t node, const Eigen::Vector3d& direction)
{
    const Eigen::Vector3d n = direction.normalized();
    const double p = s.grid->nodes[node];
    const double m2 = s.xi;
    const double E = std::hypot(p, m2);
    Matrix4 op = E * gamma0() - m2 * Matrix4::Identity();
    for (int k = 0; k < 3; ++k) {
        op -= p * n[k] * gamma_k(k);
    }
    const Matrix4 f = reconstruct_wavefunction(s, node, n);
    const double scale = f.norm() * op.norm();
    return scale > 0.0 ? (f * op.transpose()).norm() / scale : 0.0;
}

// ||gamma^0 f(-p) gamma^0T - (-1)^L f(p)|| / ||f(p)||.
inline double parity_residual(const RadialSolution& s, std::size_t node, const Eigen::Vector3d& direction)
{
    const Eigen::Vector3d n = direction.normalized();
    const Matrix4 f = reconstruct_wavefunction(s, node, n);
    const Matrix4 fm = reconstruct_wavefunction(s, node, -n);
    const double sign = s.state.L % 2 == 0 ? 1.0 : -1.0;
    const Matrix4 g0 = gamma0();
    const double scale = f.norm();
    return scale > 0.0 ? (g0 * fm * g0.transpose() - sign * f).norm() / scale : 0.0;
}

} // namespace nqa::test
