#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nqa/grid.hpp"

namespace nqa {

/// Serial loops are the reference implementation; parallel ones must agree bit for bit.
enum class Execution { serial, parallel };

/// Partial-wave projection of the momentum-space Coulomb potential -1/|p - p'|^2,
///   V_L(p, p') = pi^2 * int_{-1}^{1} dx P_L(x) V(p, p') = -(pi^2 / (p p')) Q_L(y),
///   y = (p^2 + p'^2) / (2 p p').
///
/// Throws SingularityError at p == p' and DomainError for nonpositive momenta.
double coulomb_partial_wave(int L, double p, double p_prime);

/// V_0 ... V_{out.size()-1} at one (p, p') pair.
void coulomb_partial_waves(double p, double p_prime, std::span<double> out);

/// Off-diagonal values V_L(p_i, p_j) on a grid, stored row-major. The
/// diagonal is left at zero: it never enters the subtracted quadrature.
struct PartialWaveKernel {
    int L = 0;
    std::size_t n = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

PartialWaveKernel build_kernel(int L, const MomentumGrid& grid, Execution exec = Execution::parallel);

/// Kernels for L = 0 ... L_max sharing one Legendre recursion per node pair.
std::vector<PartialWaveKernel> build_kernels(int L_max, const MomentumGrid& grid,
                                             Execution exec = Execution::parallel);

/// Radial measure mu(p') multiplying the kernel inside the integral, e.g. p'^2 / (2 E_p').
using Measure = std::function<double(double)>;

/// Row integral of the bare kernel, int_0^inf dp' V_L(p, p'), split at the
/// logarithmic singularity p' = p and evaluated by double-exponential quadrature.
/// The integral is exactly proportional to 1/p, so it is computed once per L.
struct RowIntegral {
    double value = 0.0;
    double error = 0.0;
};
RowIntegral kernel_row_integral(int L, double p);

/// Singular-point (Lande) subtraction for int dp' mu(p') V_L(p_i, p') f(p').
///
/// With F = mu f, the discretized integral is
///   sum_{j != i} w_j V_ij (F_j - F_i) + F_i int_0^inf dp' V_L(p_i, p'),
/// i.e. the subtraction function is r_i(p') = mu(p_i) / mu(p') and the
/// reference integral s_i = int dp' mu V_L r_i = mu(p_i) int dp' V_L(p_i, p').
/// In operator form row i reads sum_{j != i} w_j mu_j V_ij f_j + diagonal_i f_i.
struct LandeCorrection {
    std::vector<double> reference;       ///< s_i
    std::vector<double> discrete;        ///< mu(p_i) sum_{j != i} w_j V_ij
    std::vector<double> diagonal;        ///< s_i - discrete_i
    std::vector<double> reference_error; ///< quadrature error estimate of s_i
    std::vector<std::size_t> flagged_rows; ///< rows whose reference integral missed 1e-10
};

inline constexpr double kReferenceTolerance = 1e-10;

LandeCorrection lande_subtraction(const PartialWaveKernel& kernel, const MomentumGrid& grid,
                                  const Measure& measure, Execution exec = Execution::parallel);

/// Applies the subtracted discretization of int dp' mu V_L f to nodal values f.
std::vector<double> apply_subtracted(const PartialWaveKernel& kernel, const MomentumGrid& grid,
                                     const Measure& measure, const LandeCorrection& correction,
                                     std::span<const double> f);

/// Debug dumps of a kernel matrix: CSV with 17 significant digits, or raw
/// row-major little-endian float64 preceded by two uint64 dimensions.
void write_kernel_csv(std::ostream& out, const PartialWaveKernel& kernel);
void write_kernel_binary(std::ostream& out, const PartialWaveKernel& kernel);

} // namespace nqa
