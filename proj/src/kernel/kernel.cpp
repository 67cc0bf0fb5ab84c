#include "nqa/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nqa/errors.hpp"
#include "nqa/legendre.hpp"

namespace nqa {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Largest L any caller needs is small; keep the per-pair scratch on the stack.
constexpr std::size_t kMaxStackL = 64;

void check_momenta(double p, double p_prime)
{
    if (!(p > 0.0) || !(p_prime > 0.0)) {
        throw DomainError("coulomb_partial_wave: momenta must be positive");
    }
    if (p == p_prime) {
        throw SingularityError("coulomb_partial_wave: kernel is singular at p = p'");
    }
}

// Fills V_0..V_{L_max} for a pair known to be valid.
void pair_values(double p, double pp, std::span<double> out)
{
    const double prod = p * pp;
    const double d = p - pp;
    const double y = (p * p + pp * pp) / (2.0 * prod);
    const double ym1 = d * d / (2.0 * prod);
    legendre_q_all(y, ym1, out);
    const double f = -kPi2 / prod;
    for (double& v : out) {
        v *= f;
    }
}

} // namespace

double coulomb_partial_wave(int L, double p, double p_prime)
{
    if (L < 0) {
        throw DomainError("coulomb_partial_wave: negative L");
    }
    check_momenta(p, p_prime);
    std::vector<double> v(static_cast<std::size_t>(L) + 1);
    pair_values(p, p_prime, v);
    return v.back();
}

void coulomb_partial_waves(double p, double p_prime, std::span<double> out)
{
    check_momenta(p, p_prime);
    pair_values(p, p_prime, out);
}

std::vector<PartialWaveKernel> build_kernels(int L_max, const MomentumGrid& grid, Execution exec)
{
    if (L_max < 0 || static_cast<std::size_t>(L_max) >= kMaxStackL) {
        throw DomainError("build_kernels: L_max out of range");
    }
    const std::size_t n = grid.size();
    const auto nL = static_cast<std::size_t>(L_max) + 1;
    std::vector<PartialWaveKernel> kernels(nL);
    for (std::size_t l = 0; l < nL; ++l) {
        kernels[l].L = static_cast<int>(l);
        kernels[l].n = n;
        kernels[l].values.assign(n * n, 0.0);
    }
    const double* p = grid.nodes.data();

    if (exec == Execution::serial) {
        double buf[kMaxStackL];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) {
                    continue;
                }
                pair_values(p[i], p[j], std::span<double>(buf, nL));
                for (std::size_t l = 0; l < nL; ++l) {
                    kernels[l].values[i * n + j] = buf[l];
                }
            }
        }
        return kernels;
    }

    const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ii = 0; ii < ni; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double buf[kMaxStackL];
        for (std::size_t j = i + 1; j < n; ++j) {
            pair_values(p[i], p[j], std::span<double>(buf, nL));
            for (std::size_t l = 0; l < nL; ++l) {
                kernels[l].values[i * n + j] = buf[l];
                kernels[l].values[j * n + i] = buf[l];
            }
        }
    }
    return kernels;
}

PartialWaveKernel build_kernel(int L, const MomentumGrid& grid, Execution exec)
{
    auto all = build_kernels(L, grid, exec);
    return std::move(all.back());
}

namespace {

// int_0^inf dp' V_L(1, p'); the row integral at any p is this divided by p.
RowIntegral unit_row_integral(int L)
{
    thread_local boost::math::quadrature::tanh_sinh<double> below_rule;
    thread_local boost::math::quadrature::exp_sinh<double> above_rule;
    const auto nL = static_cast<std::size_t>(L) + 1;

    // Substituting p' = 1 -/+ u makes y - 1 = u^2 / (2 (1 -/+ u)) exact near
    // the singularity.
    auto q_at = [nL](double y, double ym1) {
        if (!(ym1 > 0.0)) {
            return 0.0; // u below ~1e-160: y - 1 underflows, contribution is negligible
        }
        double buf[kMaxStackL];
        legendre_q_all(y, ym1, std::span<double>(buf, nL));
        return buf[nL - 1];
    };
    // Q_L(y) ~ y^{-L-1} far from the singularity, so Q_L(y)/(1-u) -> 2 delta_{L0} as p' -> 0.
    auto far_limit = [L](double u) { return L == 0 ? 2.0 / (u * u) : 0.0; };
    // tanh_sinh passes the distance to the nearest endpoint as well; near u = 1
    // that is 1 - u to full precision.
    auto below = [&](double u, double uc) {
        const double s = u > 0.5 ? uc : 1.0 - u;
        if (u <= 0.0) {
            return 0.0;
        }
        if (s <= 0.0) {
            return far_limit(1.0);
        }
        const double ym1 = u * u / (2.0 * s);
        if (ym1 > 1e100) {
            return far_limit(u);
        }
        return q_at(1.0 + ym1, ym1) / s;
    };
    auto above = [&](double u) {
        if (u <= 0.0) {
            return 0.0;
        }
        const double s = 1.0 + u;
        const double ym1 = u * u / (2.0 * s);
        if (ym1 > 1e100) {
            return 0.0; // integrand below 1e-200
        }
        return q_at(1.0 + ym1, ym1) / s;
    };

    const double tol = 1e-14;
    double err_below = 0.0;
    double err_above = 0.0;
    const double i_below = below_rule.integrate(below, 0.0, 1.0, tol, &err_below);
    const double i_above =
        above_rule.integrate(above, 0.0, std::numeric_limits<double>::infinity(), tol, &err_above);
    return {-kPi2 * (i_below + i_above), kPi2 * (err_below + err_above)};
}

} // namespace

RowIntegral kernel_row_integral(int L, double p)
{
    if (L < 0 || static_cast<std::size_t>(L) >= kMaxStackL) {
        throw DomainError("kernel_row_integral: L out of range");
    }
    if (!(p > 0.0)) {
        throw DomainError("kernel_row_integral: momentum must be positive");
    }
    static std::mutex mutex;
    static std::map<int, RowIntegral> cache;
    RowIntegral unit;
    {
        const std::lock_guard<std::mutex> lock(mutex);
        if (const auto it = cache.find(L); it != cache.end()) {
            unit = it->second;
        } else {
            unit = cache.emplace(L, unit_row_integral(L)).first->second;
        }
    }
    // V_L(p, p') = V_L(1, p'/p) / p^2, so the row integral scales as 1/p.
    return {unit.value / p, unit.error / p};
}

LandeCorrection lande_subtraction(const PartialWaveKernel& kernel, const MomentumGrid& grid,
                                  const Measure& measure, Execution exec)
{
    const std::size_t n = grid.size();
    if (kernel.n != n) {
        throw DomainError("lande_subtraction: kernel and grid sizes differ");
    }
    LandeCorrection c;
    c.reference.assign(n, 0.0);
    c.discrete.assign(n, 0.0);
    c.diagonal.assign(n, 0.0);
    c.reference_error.assign(n, 0.0);

    auto row = [&](std::size_t i) {
        const double p = grid.nodes[i];
        const double mu = measure(p);
        const RowIntegral ri = kernel_row_integral(kernel.L, p);
        double sum = 0.0;
        const double* v = &kernel.values[i * n];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sum += grid.weights[j] * v[j];
            }
        }
        c.reference[i] = mu * ri.value;
        c.reference_error[i] = std::abs(mu) * ri.error;
        c.discrete[i] = mu * sum;
        c.diagonal[i] = c.reference[i] - c.discrete[i];
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

    for (std::size_t i = 0; i < n; ++i) {
        const double scale = std::max(std::abs(c.reference[i]), std::numeric_limits<double>::min());
        if (!std::isfinite(c.reference[i]) || c.reference_error[i] > kReferenceTolerance * scale) {
            c.flagged_rows.push_back(i);
        }
    }
    return c;
}

std::vector<double> apply_subtracted(const PartialWaveKernel& kernel, const MomentumGrid& grid,
                                     const Measure& measure, const LandeCorrection& correction,
                                     std::span<const double> f)
{
    const std::size_t n = grid.size();
    if (f.size() != n || kernel.n != n || correction.diagonal.size() != n) {
        throw DomainError("apply_subtracted: size mismatch");
    }
    std::vector<double> mu(n);
    for (std::size_t j = 0; j < n; ++j) {
        mu[j] = measure(grid.nodes[j]);
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sum += grid.weights[j] * mu[j] * kernel(i, j) * f[j];
            }
        }
        out[i] = sum + correction.diagonal[i] * f[i];
    }
    return out;
}

void write_kernel_csv(std::ostream& out, const PartialWaveKernel& kernel)
{
    char buf[32];
    for (std::size_t i = 0; i < kernel.n; ++i) {
        for (std::size_t j = 0; j < kernel.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", kernel(i, j));
            out << buf << (j + 1 < kernel.n ? ',' : '\n');
        }
    }
}

void write_kernel_binary(std::ostream& out, const PartialWaveKernel& kernel)
{
    const std::uint64_t dims[2] = {kernel.n, kernel.n};
    out.write(reinterpret_cast<const char*>(dims), sizeof dims);
    out.write(reinterpret_cast<const char*>(kernel.values.data()),
              static_cast<std::streamsize>(kernel.values.size() * sizeof(double)));
}

} // namespace nqa
