#include "nqa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include "nqa/errors.hpp"

namespace nqa {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

bool same_ratio(const std::vector<double>& a, const std::vector<double>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-13 * std::abs(a[i])) {
            return false;
        }
    }
    return true;
}

// t_i^2 = w_i mu_i / c_i makes c_i w_j mu_j V_ij symmetric after T A T^{-1};
// it exists when every term shares the ratio mu / c.
Eigen::VectorXd find_symmetrizer(const RadialOperatorSpec& spec)
{
    const std::size_t n = spec.grid->size();
    std::vector<double> ratio;
    for (const RadialTerm& t : spec.terms) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(t.row_factor[i] > 0.0) || !(t.measure[i] > 0.0)) {
                return {};
            }
            r[i] = t.measure[i] / t.row_factor[i];
        }
        if (ratio.empty()) {
            ratio = std::move(r);
        } else if (!same_ratio(ratio, r)) {
            return {};
        }
    }
    Eigen::VectorXd t(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        t[static_cast<Eigen::Index>(i)] = std::sqrt(spec.grid->weights[i] * (ratio.empty() ? 1.0 : ratio[i]));
    }
    return t;
}

double energy(double p, double m)
{
    return std::hypot(p, m);
}

// E_p - m without cancellation.
double kinetic(double p, double m)
{
    return p * p / (energy(p, m) + m);
}

double lower_factor(double p, double xi)
{
    return std::isinf(xi) ? 0.0 : p / (energy(p, xi) + xi);
}

void fix_sign_and_normalize(RadialSolution& s)
{
    const auto& grid = *s.grid;
    long double norm = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const long double p2 = static_cast<long double>(grid.nodes[i]) * grid.nodes[i];
        norm += grid.weights[i] * p2 * (static_cast<long double>(s.g[i]) * s.g[i] +
                                        static_cast<long double>(s.h[i]) * s.h[i]);
    }
    if (!(norm > 0.0L) || !std::isfinite(static_cast<double>(norm))) {
        throw DegenerateInputError("normalize: zero-norm radial function");
    }
    double scale = static_cast<double>(1.0L / std::sqrt(norm));
    const auto first = std::find_if(s.g.begin(), s.g.end(), [](double v) { return v != 0.0; });
    if (first != s.g.end() && *first < 0.0) {
        scale = -scale;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s.g[i] *= scale;
        s.h[i] *= scale;
    }
    s.norm = NormConvention::discrete_l2;
}

// Unit-sphere rule exact for the products of spherical harmonics that appear
// in |Y|^2 with Y of order L + 1: Gauss-Legendre in cos(theta), uniform in phi.
struct SphereRule {
    std::vector<Eigen::Vector3d> directions;
    std::vector<double> weights;
};

SphereRule sphere_rule(int L)
{
    const auto n_theta = static_cast<std::size_t>(L + 4);
    const int n_phi = 2 * L + 8;
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(n_theta, -1.0, 1.0, x, w);
    SphereRule r;
    for (std::size_t a = 0; a < n_theta; ++a) {
        const double st = std::sqrt(std::max(0.0, 1.0 - x[a] * x[a]));
        for (int b = 0; b < n_phi; ++b) {
            const double phi = 2.0 * std::numbers::pi * (b + 0.5) / n_phi;
            r.directions.emplace_back(st * std::cos(phi), st * std::sin(phi), x[a]);
            r.weights.push_back(w[a] * 2.0 * std::numbers::pi / n_phi);
        }
    }
    return r;
}

} // namespace

double coulomb_strength(double alpha)
{
    return alpha / (std::numbers::pi * std::numbers::pi * std::numbers::pi);
}

DiscretizedOperator build_radial_operator(const RadialOperatorSpec& spec, Execution exec)
{
    const MomentumGrid& grid = *spec.grid;
    const std::size_t n = grid.size();
    if (spec.diag_g.size() != n || spec.diag_h.size() != n || spec.coupling.size() != n) {
        throw DomainError("build_radial_operator: diagonal sizes differ from the grid");
    }
    for (const RadialTerm& t : spec.terms) {
        if (t.row_factor.size() != n || t.measure.size() != n) {
            throw DomainError("build_radial_operator: term sizes differ from the grid");
        }
    }

    DiscretizedOperator op{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n)),
                           {},
                           spec.grid,
                           {},
                           TwoBodySystem(1.0, 1.0, 0.0),
                           0.0,
                           true,
                           {},
                           {}};
    Eigen::MatrixXd& A = op.matrix;
    const auto N = static_cast<Eigen::Index>(n);
    for (Eigen::Index i = 0; i < N; ++i) {
        A(i, i) = spec.diag_g[static_cast<std::size_t>(i)];
        A(N + i, N + i) = spec.diag_h[static_cast<std::size_t>(i)];
        A(i, N + i) = spec.coupling[static_cast<std::size_t>(i)];
        A(N + i, i) = spec.coupling[static_cast<std::size_t>(i)];
    }
    op.symmetrizer = find_symmetrizer(spec);

    int L_max = -1;
    for (const RadialTerm& t : spec.terms) {
        for (const auto& [L, w] : t.weights) {
            if (w != 0.0) {
                L_max = std::max(L_max, L);
            }
        }
    }
    if (spec.strength == 0.0 || L_max < 0) {
        return op;
    }

    const auto kernels = build_kernels(L_max, grid, exec);
    // Subtraction diagonal per unit measure; the measure of each term multiplies it.
    const Measure unit = [](double) { return 1.0; };
    std::vector<std::vector<double>> defect(static_cast<std::size_t>(L_max) + 1);
    for (int L = 0; L <= L_max; ++L) {
        LandeCorrection c = lande_subtraction(kernels[static_cast<std::size_t>(L)], grid, unit, exec);
        defect[static_cast<std::size_t>(L)] = std::move(c.diagonal);
        for (std::size_t r : c.flagged_rows) {
            op.flagged_rows.push_back(r);
        }
    }
    std::sort(op.flagged_rows.begin(), op.flagged_rows.end());
    op.flagged_rows.erase(std::unique(op.flagged_rows.begin(), op.flagged_rows.end()), op.flagged_rows.end());

    auto row = [&](std::size_t i) {
        const auto ii = static_cast<Eigen::Index>(i);
        for (const RadialTerm& t : spec.terms) {
            const Eigen::Index off = t.block == Block::gg ? 0 : N;
            const double ci = spec.strength * t.row_factor[i];
            for (const auto& [L, wL] : t.weights) {
                if (wL == 0.0) {
                    continue;
                }
                const double f = ci * wL;
                const PartialWaveKernel& K = kernels[static_cast<std::size_t>(L)];
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) {
                        A(off + ii, off + static_cast<Eigen::Index>(j)) += f * grid.weights[j] * t.measure[j] * K(i, j);
                    }
                }
                A(off + ii, off + ii) += f * t.measure[i] * defect[static_cast<std::size_t>(L)][i];
            }
        }
    };

    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) {
            row(i);
        }
    } else {
        const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < ni; ++i) {
            row(static_cast<std::size_t>(i));
        }
    }
    return op;
}

GridMapping default_mapping(const TwoBodySystem& system)
{
    const double mu = system.reduced_mass_units();
    return {MappingType::rational, system.alpha() > 0.0 ? system.alpha() * mu : mu};
}

DiscretizedOperator assemble(const TwoBodySystem& system, const QuantumState& state,
                             std::shared_ptr<const MomentumGrid> grid, const AssemblyOptions& options)
{
    state.validate();
    if (!grid) {
        throw DomainError("assemble: missing grid");
    }
    const double xi = system.xi();
    const std::size_t n = grid->size();
    const ChannelWeights weights =
        options.weights_override ? *options.weights_override
                                 : contract_channel_weights(state.F, state.mF, state.L, state.S);

    RadialOperatorSpec spec;
    spec.grid = grid;
    spec.strength = coulomb_strength(system.alpha());
    spec.diag_g.resize(n);
    spec.diag_h.resize(n);
    spec.coupling.resize(n);
    std::vector<double> main_factor(n);
    std::vector<double> small_factor(n);
    std::vector<double> main_measure(n);
    std::vector<double> small_measure(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = grid->nodes[i];
        const double E = energy(p, xi);
        const double T = kinetic(p, xi);
        spec.diag_g[i] = T;
        spec.diag_h[i] = T - 2.0;
        spec.coupling[i] = -p;
        main_factor[i] = E + xi;
        small_factor[i] = p;
        main_measure[i] = p * p / (2.0 * E);
        small_measure[i] = main_measure[i] * lower_factor(p, xi);
    }

    std::map<int, double> g_main = weights.g_main.empty() ? std::map<int, double>{{state.L, 1.0}} : weights.g_main;
    spec.terms.push_back({Block::gg, main_factor, main_measure, g_main});
    spec.terms.push_back({Block::hh, main_factor, main_measure, weights.h_main});
    if (options.include_small_terms) {
        spec.terms.push_back({Block::gg, small_factor, small_measure, weights.g_small});
        spec.terms.push_back({Block::hh, small_factor, small_measure, weights.h_small});
    }

    DiscretizedOperator op = build_radial_operator(spec, options.exec);
    op.channel = state;
    op.system = system;
    op.xi = xi;
    op.include_small_terms = options.include_small_terms;
    op.weights = weights;
    op.weights.g_main = g_main;
    return op;
}

int count_nodes(const std::vector<double>& g)
{
    double gmax = 0.0;
    for (double v : g) {
        gmax = std::max(gmax, std::abs(v));
    }
    const double threshold = 1e-8 * gmax;
    int nodes = 0;
    int last = 0;
    for (double v : g) {
        if (std::abs(v) <= threshold) {
            continue;
        }
        const int s = v > 0.0 ? 1 : -1;
        if (last != 0 && s != last) {
            ++nodes;
        }
        last = s;
    }
    return nodes;
}

std::vector<RadialSolution> solve_bound_states(const DiscretizedOperator& op, const SolveOptions& options)
{
    const std::size_t n = op.grid_size();
    const auto N = static_cast<Eigen::Index>(n);
    const Eigen::Index n2 = 2 * N;
    const Eigen::MatrixXd& A = op.matrix;

    struct Pair {
        double lambda;
        Eigen::VectorXd v; // (g, h)
    };
    std::vector<Pair> pairs;

    bool symmetric = op.symmetrizer.size() == N;
    Eigen::VectorXd t2;
    Eigen::MatrixXd B;
    if (symmetric) {
        t2.resize(n2);
        t2 << op.symmetrizer, op.symmetrizer;
        B = t2.asDiagonal() * A * t2.cwiseInverse().asDiagonal();
        const double scale = B.cwiseAbs().maxCoeff();
        const double asym = (B - B.transpose()).cwiseAbs().maxCoeff();
        symmetric = asym <= kSymmetryTolerance * scale;
    }

    if (symmetric) {
        B = 0.5 * (B + B.transpose()).eval();
        lapack_int m = 0;
        Eigen::VectorXd w(n2);
        Eigen::MatrixXd Z(n2, n2);
        std::vector<lapack_int> support(static_cast<std::size_t>(2 * n2));
        const lapack_int info =
            LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'V', 'U', static_cast<lapack_int>(n2), B.data(),
                           static_cast<lapack_int>(n2), options.window_lo, options.window_hi, 0, 0, 0.0, &m,
                           w.data(), Z.data(), static_cast<lapack_int>(n2), support.data());
        if (info != 0) {
            throw std::runtime_error("solve_bound_states: dsyevr failed with info " + std::to_string(info));
        }
        for (lapack_int k = 0; k < m; ++k) {
            Eigen::VectorXd v = Z.col(k).cwiseQuotient(t2);
            pairs.push_back({w[k], std::move(v)});
        }
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(A);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("solve_bound_states: eigendecomposition failed");
        }
        for (Eigen::Index k = 0; k < n2; ++k) {
            const std::complex<double> ev = es.eigenvalues()[k];
            if (std::abs(ev.imag()) > 1e-12 * std::max(1.0, std::abs(ev.real()))) {
                continue;
            }
            if (ev.real() > options.window_lo && ev.real() < options.window_hi) {
                pairs.push_back({ev.real(), es.eigenvectors().col(k).real()});
            }
        }
    }

    std::vector<RadialSolution> out;
    out.reserve(pairs.size());
    for (Pair& pr : pairs) {
        // Generalized Rayleigh quotient y^T A v / y^T v with left vector y = T^2 v
        // (exact left eigenvector of the symmetrizable A), accumulated in long double.
        long double num = 0.0L;
        long double den = 0.0L;
        Eigen::VectorXd Av = A * pr.v;
        for (Eigen::Index i = 0; i < n2; ++i) {
            const long double y = symmetric ? static_cast<long double>(t2[i]) * t2[i] * pr.v[i] : pr.v[i];
            num += y * Av[i];
            den += y * pr.v[i];
        }
        const double lambda = den != 0.0L ? static_cast<double>(num / den) : pr.lambda;

        RadialSolution s;
        s.epsilon = lambda;
        s.grid = op.grid;
        s.system = op.system;
        s.state = op.channel;
        s.xi = op.xi;
        s.g.assign(pr.v.data(), pr.v.data() + N);
        s.h.assign(pr.v.data() + N, pr.v.data() + n2);
        s.residual = (Av - lambda * pr.v).norm() / pr.v.norm();
        s.flagged = !(s.residual <= options.residual_tolerance);
        fix_sign_and_normalize(s);
        s.node_count = count_nodes(s.g);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const RadialSolution& a, const RadialSolution& b) { return a.epsilon < b.epsilon; });
    return out;
}

RadialSolution select_state(const std::vector<RadialSolution>& solutions, int n, int L)
{
    if (n < L + 1 || L < 0) {
        throw DomainError("select_state: need n > L >= 0");
    }
    const int nodes = n - L - 1;
    const RadialSolution* match = nullptr;
    int count = 0;
    for (const auto& s : solutions) {
        if (s.node_count == nodes) {
            match = &s;
            ++count;
        }
    }
    if (count == 1) {
        return *match;
    }
    // Noisy tails can add or hide a sign change; energy order is the fallback.
    if (static_cast<std::size_t>(nodes) < solutions.size()) {
        std::vector<const RadialSolution*> sorted;
        for (const auto& s : solutions) {
            sorted.push_back(&s);
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const RadialSolution* a, const RadialSolution* b) { return a->epsilon < b->epsilon; });
        return *sorted[static_cast<std::size_t>(nodes)];
    }
    throw NotFoundError("select_state: no bound state with n = " + std::to_string(n) + ", L = " + std::to_string(L));
}

Eigen::Matrix4cd reconstruct_wavefunction(const RadialSolution& sol, std::size_t node, const Eigen::Vector3d& direction)
{
    if (node >= sol.grid->size()) {
        throw DomainError("reconstruct_wavefunction: node index out of range");
    }
    const QuantumState& st = sol.state;
    const SpinAngleFunction Y(st.F, st.mF, st.L, st.S);
    const Eigen::Vector3d nhat = direction.normalized();
    const Eigen::Matrix2cd Yv = Y(nhat);
    const Eigen::Matrix2cd s = sigma_dot(nhat);
    const double p = sol.grid->nodes[node];
    const double Sp = lower_factor(p, sol.xi);
    const double g = sol.g[node];
    const double h = sol.h[node];

    Eigen::Matrix4cd f;
    f.topLeftCorner<2, 2>() = Yv * g;
    f.topRightCorner<2, 2>() = Sp * Yv * s.transpose() * g;
    f.bottomLeftCorner<2, 2>() = s * Yv * h;
    f.bottomRightCorner<2, 2>() = Sp * s * Yv * s.transpose() * h;
    return f;
}

double covariant_overlap(const RadialSolution& a, const RadialSolution& b)
{
    if (a.grid->size() != b.grid->size() || !(a.state == b.state)) {
        throw DomainError("covariant_overlap: solutions live on different grids or channels");
    }
    if (std::isinf(a.xi)) {
        throw DomainError("covariant_overlap: undefined in the infinite-mass limit");
    }
    const QuantumState& st = a.state;
    const SpinAngleFunction Y(st.F, st.mF, st.L, st.S);

    // Tr[fbar gamma^0 f] = Tr[gamma^0 f^dagger f] = |A|^2 + |C|^2 - |B|^2 - |D|^2
    // blockwise; the radial factors separate from the four angular integrals.
    const SphereRule rule = sphere_rule(st.L);
    double ang_A = 0.0;
    double ang_B = 0.0;
    double ang_C = 0.0;
    double ang_D = 0.0;
    for (std::size_t k = 0; k < rule.directions.size(); ++k) {
        const Eigen::Matrix2cd Yv = Y(rule.directions[k]);
        const Eigen::Matrix2cd s = sigma_dot(rule.directions[k]);
        const double w = rule.weights[k];
        ang_A += w * Yv.squaredNorm();
        ang_B += w * (Yv * s.transpose()).squaredNorm();
        ang_C += w * (s * Yv).squaredNorm();
        ang_D += w * (s * Yv * s.transpose()).squaredNorm();
    }

    const MomentumGrid& grid = *a.grid;
    const double xi = a.xi;
    long double sum = 0.0L;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid.nodes[i];
        const double E = energy(p, xi);
        const double S2 = lower_factor(p, xi) * lower_factor(p, xi);
        const double radial = a.g[i] * b.g[i] * (ang_A - S2 * ang_B) + a.h[i] * b.h[i] * (ang_C - S2 * ang_D);
        sum += static_cast<long double>(grid.weights[i]) * p * p * (xi / E) * radial;
    }
    return static_cast<double>(sum);
}

RadialSolution normalize(const RadialSolution& sol, NormConvention convention)
{
    RadialSolution s = sol;
    fix_sign_and_normalize(s);
    if (convention == NormConvention::covariant) {
        const double c = covariant_overlap(s, s);
        const double mb = 1.0 + s.xi + s.epsilon;
        if (!(c > 0.0)) {
            throw DegenerateInputError("normalize: covariant norm is not positive");
        }
        const double scale = std::sqrt(2.0 * mb / c);
        for (std::size_t i = 0; i < s.g.size(); ++i) {
            s.g[i] *= scale;
            s.h[i] *= scale;
        }
        s.norm = NormConvention::covariant;
    }
    return s;
}

RadialSolution solve_state(const TwoBodySystem& system, const QuantumState& state, std::size_t grid_size,
                           const AssemblyOptions& assembly, const SolveOptions& solve, std::optional<GridMapping> mapping)
{
    auto grid = std::make_shared<const MomentumGrid>(build_grid(grid_size, mapping ? *mapping : default_mapping(system)));
    const DiscretizedOperator op = assemble(system, state, grid, assembly);
    return select_state(solve_bound_states(op, solve), state.n, state.L);
}

RefineResult refine_uncertainty(const TwoBodySystem& system, const QuantumState& state,
                                const std::vector<std::size_t>& grid_sizes, const AssemblyOptions& assembly,
                                std::optional<GridMapping> mapping)
{
    if (grid_sizes.size() < 2) {
        throw DomainError("refine_uncertainty: need at least two grid sizes");
    }
    RefineResult r;
    std::size_t largest = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t n : grid_sizes) {
        RadialSolution s = solve_state(system, state, n, assembly, {}, mapping);
        r.per_size.emplace_back(n, s.epsilon);
        lo = std::min(lo, s.epsilon);
        hi = std::max(hi, s.epsilon);
        if (n >= largest) {
            largest = n;
            r.epsilon_best = s.epsilon;
            r.best = std::move(s);
        }
    }
    r.sigma = hi - lo;
    return r;
}

MassInterchangeReport mass_interchange_check(const TwoBodySystem& system, const QuantumState& state,
                                             const std::vector<std::size_t>& grid_sizes)
{
    const RefineResult direct = refine_uncertainty(system, state, grid_sizes);
    const std::size_t largest = *std::max_element(grid_sizes.begin(), grid_sizes.end());
    const TwoBodySystem other = system.swapped();
    const RadialSolution s = solve_state(other, state, largest);

    MassInterchangeReport r;
    r.epsilon = direct.epsilon_best;
    r.epsilon_swapped = s.epsilon * other.m1() / system.m1();
    r.delta = std::abs(r.epsilon - r.epsilon_swapped);
    r.sigma = direct.sigma;
    if (r.sigma > 0.0) {
        r.delta_in_sigma = r.delta / r.sigma;
    } else {
        r.delta_in_sigma = r.delta == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return r;
}

SmallTermsReport drop_small_terms_check(const TwoBodySystem& system, const QuantumState& state, std::size_t grid_size)
{
    SmallTermsReport r;
    auto grid = std::make_shared<const MomentumGrid>(build_grid(grid_size, default_mapping(system)));
    AssemblyOptions dropped;
    dropped.include_small_terms = false;
    const auto full_states = solve_bound_states(assemble(system, state, grid));
    const auto dropped_states = solve_bound_states(assemble(system, state, grid, dropped));
    if (full_states.empty() && dropped_states.empty()) {
        r.bound = false;
        return r;
    }
    r.epsilon_full = select_state(full_states, state.n, state.L).epsilon;
    r.epsilon_dropped = select_state(dropped_states, state.n, state.L).epsilon;
    r.delta = std::abs(r.epsilon_full - r.epsilon_dropped);
    const double ratio = 1.0 / system.xi();
    r.expected_scale = system.alpha() * system.alpha() * ratio * ratio * std::abs(r.epsilon_full);
    return r;
}

} // namespace nqa
