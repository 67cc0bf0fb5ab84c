#include "nqa/reference.hpp"

#include <cmath>
#include <limits>

#include "nqa/angular.hpp"
#include "nqa/errors.hpp"

namespace nqa {

double dirac_coulomb_energy(int n, double j, double mu, double alpha)
{
    const double k = j + 0.5;
    if (!(j > 0.0) || std::abs(2.0 * j - std::round(2.0 * j)) > 0.0 || static_cast<long>(std::round(2.0 * j)) % 2 == 0) {
        throw DomainError("dirac_coulomb_energy: j must be a positive half-integer");
    }
    if (n < k) {
        throw DomainError("dirac_coulomb_energy: need n >= j + 1/2");
    }
    const double arg = k * k - alpha * alpha;
    if (!(arg > 0.0)) {
        throw DomainError("dirac_coulomb_energy: alpha (j + 1/2) must be below 1");
    }
    const double d = n - k + std::sqrt(arg);
    const double x = alpha * alpha / (d * d);
    // (1 + x)^{-1/2} - 1 without cancellation for small x
    return -mu * x / (std::sqrt(1.0 + x) * (1.0 + std::sqrt(1.0 + x)));
}

DiracLevel dirac_level(int n, int twice_j, double mu, double alpha)
{
    return {n, twice_j, mu, alpha, dirac_coulomb_energy(n, 0.5 * twice_j, mu, alpha)};
}

DiscretizedOperator dirac_limit_operator(const TwoBodySystem& system, double mass, const QuantumState& state,
                                         std::shared_ptr<const MomentumGrid> grid, Execution exec)
{
    state.validate();
    if (!(mass > 0.0)) {
        throw DomainError("dirac_limit_operator: mass must be positive");
    }
    const std::size_t n = grid->size();
    const ChannelWeights w = contract_channel_weights(state.F, state.mF, state.L, state.S);

    RadialOperatorSpec spec;
    spec.grid = grid;
    spec.strength = coulomb_strength(system.alpha());
    spec.diag_g.assign(n, 0.0);
    spec.diag_h.assign(n, -2.0 * mass);
    spec.coupling.resize(n);
    std::vector<double> measure(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = grid->nodes[i];
        spec.coupling[i] = -p;
        measure[i] = p * p;
    }
    const std::vector<double> ones(n, 1.0);
    spec.terms.push_back({Block::gg, ones, measure, {{state.L, 1.0}}});
    spec.terms.push_back({Block::hh, ones, measure, w.h_main});

    DiscretizedOperator op = build_radial_operator(spec, exec);
    op.channel = state;
    op.system = system;
    op.xi = std::numeric_limits<double>::infinity();
    op.include_small_terms = false;
    op.weights = w;
    op.weights.g_main = {{state.L, 1.0}};
    op.weights.g_small.clear();
    op.weights.h_small.clear();
    return op;
}

namespace {
double kinetic(double p, double m)
{
    return p * p / (std::hypot(p, m) + m);
}
} // namespace

double kinetic_eigenvalue_exact(double p, double m1, double m2)
{
    return kinetic(p, m1) + kinetic(p, m2);
}

double kinetic_eigenvalue_reduced(double p, double mu)
{
    return kinetic(p, mu);
}

double kinetic_p4_coefficient_exact(double m1, double m2)
{
    const double a = m1 * m1 * m1;
    const double b = m2 * m2 * m2;
    return -(a + b) / (8.0 * a * b);
}

double kinetic_p4_coefficient_reduced(double mu)
{
    return -1.0 / (8.0 * mu * mu * mu);
}

RadialSolution dirac_reference_wavefunction(const TwoBodySystem& system, double mass, const QuantumState& state,
                                            std::shared_ptr<const MomentumGrid> grid)
{
    const DiscretizedOperator op = dirac_limit_operator(system, mass, state, std::move(grid));
    return normalize(select_state(solve_bound_states(op), state.n, state.L));
}

} // namespace nqa
