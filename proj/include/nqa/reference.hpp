#pragma once

#include <memory>

#include "nqa/grid.hpp"
#include "nqa/kernel.hpp"
#include "nqa/solver.hpp"
#include "nqa/system.hpp"

namespace nqa {

/// Dirac-Coulomb level of a particle of mass mu with j = twice_j / 2.
struct DiracLevel {
    int n = 1;
    int twice_j = 1;
    double mu = 0.0;
    double alpha = 0.0;
    double energy = 0.0; ///< binding energy, same units as mu
};

/// mu [ (1 + alpha^2 / (n - k + sqrt(k^2 - alpha^2))^2)^{-1/2} - 1 ],  k = j + 1/2.
/// Throws DomainError unless j is a positive half-integer, n >= k and alpha k < 1.
double dirac_coulomb_energy(int n, double j, double mu, double alpha);
DiracLevel dirac_level(int n, int twice_j, double mu, double alpha);

/// The large-m2 reduction of the radial equations:
///   eps g = -p h + int dp' p'^2 v_L g'
///   eps h = -2 M h - p g + int dp' p'^2 sum (C)^2 v_L' h'
/// with the Dirac mass M given in units of system.m1() (1 for the strict limit,
/// the reduced mass for the reduced-mass comparison).
DiscretizedOperator dirac_limit_operator(const TwoBodySystem& system, double mass, const QuantumState& state,
                                         std::shared_ptr<const MomentumGrid> grid,
                                         Execution exec = Execution::parallel);

/// sqrt(p^2 + m2^2) - m2 + sqrt(p^2 + m1^2) - m1, evaluated without cancellation.
double kinetic_eigenvalue_exact(double p, double m1, double m2);
/// sqrt(p^2 + mu^2) - mu.
double kinetic_eigenvalue_reduced(double p, double mu);

/// p^4 Taylor coefficients of the two kinetic eigenvalues: -(m1^3 + m2^3) / (8 m1^3 m2^3)
/// and -1 / (8 mu^3).
double kinetic_p4_coefficient_exact(double m1, double m2);
double kinetic_p4_coefficient_reduced(double mu);

/// Upper/lower radial functions of the Dirac-limit operator with mass `mass`
/// (units of system.m1()) on the given grid, selected by node count and
/// normalized like solver::normalize's default.
RadialSolution dirac_reference_wavefunction(const TwoBodySystem& system, double mass, const QuantumState& state,
                                            std::shared_ptr<const MomentumGrid> grid);

} // namespace nqa
