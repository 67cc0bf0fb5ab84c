#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "nqa/angular.hpp"
#include "nqa/grid.hpp"
#include "nqa/kernel.hpp"
#include "nqa/system.hpp"

namespace nqa {

/// Block of the 2N x 2N radial operator an integral term acts in.
enum class Block { gg, hh };

/// One integral term  strength * c_i * sum_L w_L int dp' mu(p') V_L(p_i, p') f(p').
struct RadialTerm {
    Block block = Block::gg;
    std::vector<double> row_factor; ///< c_i
    std::vector<double> measure;    ///< mu(p_j)
    std::map<int, double> weights;  ///< w_L
};

/// Everything needed to assemble
///   [ diag_g + K_gg      coupling      ] [g]
///   [ coupling           diag_h + K_hh ] [h]
/// where the coupling blocks are diagonal.
struct RadialOperatorSpec {
    std::shared_ptr<const MomentumGrid> grid;
    std::vector<double> diag_g;
    std::vector<double> diag_h;
    std::vector<double> coupling;
    std::vector<RadialTerm> terms;
    double strength = 0.0;
};

struct DiscretizedOperator {
    Eigen::MatrixXd matrix; ///< A, acting on (g, h) nodal values
    /// t_i with T A T^{-1} symmetric for T = diag(t, t); empty if no such t was found.
    Eigen::VectorXd symmetrizer;
    std::shared_ptr<const MomentumGrid> grid;
    QuantumState channel;
    TwoBodySystem system;
    /// m2 / m1 of the wave-function ansatz; infinite for the large-m2 limit.
    double xi = 0.0;
    bool include_small_terms = true;
    ChannelWeights weights;
    /// Grid rows whose subtraction reference integral missed its tolerance.
    std::vector<std::size_t> flagged_rows;

    std::size_t grid_size() const { return grid->size(); }
};

/// Assembles a radial operator from its spec. Rows are independent, so the
/// parallel path is bitwise identical to the serial one.
DiscretizedOperator build_radial_operator(const RadialOperatorSpec& spec, Execution exec = Execution::parallel);

/// 1 / (2 pi^2) from the partial-wave normalization times 2 / pi from the
/// radial equations, times alpha: the coefficient of int dp' mu V_L.
double coulomb_strength(double alpha);

struct AssemblyOptions {
    bool include_small_terms = true;
    Execution exec = Execution::parallel;
    /// Replaces the weights contracted from the coupling tables (test hook).
    std::optional<ChannelWeights> weights_override;
};

/// Rational map with scale alpha * mu, the Bohr momentum. Falls back to mu when alpha = 0.
GridMapping default_mapping(const TwoBodySystem& system);

DiscretizedOperator assemble(const TwoBodySystem& system, const QuantumState& state,
                             std::shared_ptr<const MomentumGrid> grid, const AssemblyOptions& options = {});

enum class NormConvention { discrete_l2, covariant };

struct RadialSolution {
    double epsilon = 0.0; ///< binding energy in units of m1
    std::vector<double> g;
    std::vector<double> h;
    std::shared_ptr<const MomentumGrid> grid;
    int node_count = 0;
    NormConvention norm = NormConvention::discrete_l2;
    double residual = 0.0; ///< ||(A - eps) v|| / ||v||
    bool flagged = false;  ///< residual above tolerance
    TwoBodySystem system{1.0, 1.0, 0.0};
    QuantumState state;
    double xi = 0.0;

    double epsilon_ev() const { return system.to_ev(epsilon); }
};

struct SolveOptions {
    double window_lo = -0.5;
    double window_hi = 0.0;
    double residual_tolerance = 1e-8;
};

/// Eigenpairs with epsilon in (window_lo, window_hi), ascending. Each is
/// back-transformed to (g, h), sign-fixed (g > 0 at the smallest node),
/// node-counted and normalized with the discrete L2 convention.
std::vector<RadialSolution> solve_bound_states(const DiscretizedOperator& op, const SolveOptions& options = {});

/// Sign changes of g, ignoring entries below 1e-8 of max |g|.
int count_nodes(const std::vector<double>& g);

/// Solution with n - L - 1 nodes; falls back to energy order when that is
/// not unique. Throws NotFoundError when the state is absent.
RadialSolution select_state(const std::vector<RadialSolution>& solutions, int n, int L);

/// Discrete L2: sum w p^2 (g^2 + h^2) = 1. Covariant: covariant_overlap(f, f)
/// equals 2 m_b with m_b = m1 + m2 + epsilon. Both fix g(p_min) > 0.
/// Throws DegenerateInputError for a zero vector.
RadialSolution normalize(const RadialSolution& sol, NormConvention convention = NormConvention::discrete_l2);

/// Covariant overlap of two solutions on the same grid and channel:
///   int d^3p (m2 / E_p) Tr[fbar_a gamma^0 f_b]
/// with the angular integral taken numerically over reconstructed 4x4 amplitudes.
double covariant_overlap(const RadialSolution& a, const RadialSolution& b);

/// The 4x4 amplitude at grid node i along a unit direction, built from the
/// spin-angle function of sol.state and S(p) = p / (E_p + m2).
Eigen::Matrix4cd reconstruct_wavefunction(const RadialSolution& sol, std::size_t node,
                                          const Eigen::Vector3d& direction);

/// Grid, assemble, solve, select and normalize in one call.
RadialSolution solve_state(const TwoBodySystem& system, const QuantumState& state, std::size_t grid_size,
                           const AssemblyOptions& assembly = {}, const SolveOptions& solve = {},
                           std::optional<GridMapping> mapping = std::nullopt);

struct RefineResult {
    double epsilon_best = 0.0; ///< from the largest grid
    double sigma = 0.0;        ///< max pairwise spread, units of m1
    std::vector<std::pair<std::size_t, double>> per_size;
    RadialSolution best;
};

/// Throws DomainError for fewer than two grid sizes.
RefineResult refine_uncertainty(const TwoBodySystem& system, const QuantumState& state,
                                const std::vector<std::size_t>& grid_sizes, const AssemblyOptions& assembly = {},
                                std::optional<GridMapping> mapping = std::nullopt);

struct MassInterchangeReport {
    double epsilon = 0.0;         ///< original order, units of the original m1
    double epsilon_swapped = 0.0; ///< swapped order, converted to the original m1
    double delta = 0.0;           ///< |epsilon - epsilon_swapped|
    double sigma = 0.0;           ///< grid-refinement sigma of the original order
    double delta_in_sigma = 0.0;  ///< delta / sigma (infinite if sigma is zero and delta is not)
};

MassInterchangeReport mass_interchange_check(const TwoBodySystem& system, const QuantumState& state,
                                             const std::vector<std::size_t>& grid_sizes);

struct SmallTermsReport {
    bool bound = true; ///< false when neither variant has a bound state (alpha = 0)
    double epsilon_full = 0.0;
    double epsilon_dropped = 0.0;
    double delta = 0.0;
    /// alpha^2 (m1/m2)^2 |epsilon|: the expected size of the dropped terms.
    double expected_scale = 0.0;
};

SmallTermsReport drop_small_terms_check(const TwoBodySystem& system, const QuantumState& state,
                                        std::size_t grid_size = 1200);

} // namespace nqa
