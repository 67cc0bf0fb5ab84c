#include <doctest.h>

#include <cmath>
#include <random>

#include "nqa/errors.hpp"
#include "nqa/reference.hpp"
#include "nqa/solver.hpp"
#include "nqa/system.hpp"

using namespace nqa;

namespace {

// Textbook form in long double, as an independent check of the cancellation-free one.
double dirac_naive(int n, double j, double mu, double alpha)
{
    const long double k = j + 0.5L;
    const long double a = alpha;
    const long double d = n - k + std::sqrt(k * k - a * a);
    return static_cast<double>(mu * (1.0L / std::sqrt(1.0L + a * a / (d * d)) - 1.0L));
}

// p^4 coefficient of f(p) = f(0) + c2 p^2 + c4 p^4 + ... from five even samples:
// with F(u) = f(sqrt u), c4 = F''(0) / 2 by a fourth-order one-sided stencil.
double p4_coefficient(double m1, double m2, double h)
{
    double F[6];
    for (int k = 0; k < 6; ++k) {
        F[k] = kinetic_eigenvalue_exact(std::sqrt(k * h), m1, m2);
    }
    const double second = (45.0 * F[0] - 154.0 * F[1] + 214.0 * F[2] - 156.0 * F[3] + 61.0 * F[4] - 10.0 * F[5]) /
                          (12.0 * h * h);
    return 0.5 * second;
}

} // namespace

TEST_SUITE("reference")
{
    TEST_CASE("Dirac-Coulomb energies")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> a(1e-4, 0.3);
        for (int k = 0; k < 50; ++k) {
            const double alpha = a(rng);
            for (int n = 1; n <= 4; ++n) {
                for (int tj = 1; tj <= 2 * n - 1; tj += 2) {
                    CHECK(dirac_coulomb_energy(n, 0.5 * tj, 1.0, alpha) ==
                          doctest::Approx(dirac_naive(n, 0.5 * tj, 1.0, alpha)).epsilon(1e-12));
                }
            }
        }
        // leading terms: -mu alpha^2 / 2n^2 [1 + alpha^2/n^2 (n/(j+1/2) - 3/4)]
        const double alpha = 1e-3;
        const double series = -0.5 * alpha * alpha * (1.0 + alpha * alpha * (1.0 - 0.75));
        CHECK(dirac_coulomb_energy(1, 0.5, 1.0, alpha) == doctest::Approx(series).epsilon(1e-11));
        CHECK(dirac_level(2, 3, 0.5, alpha).energy == doctest::Approx(dirac_coulomb_energy(2, 1.5, 0.5, alpha)));
    }

    TEST_CASE("Dirac energies are monotone in n and j")
    {
        const double alpha = 7.2973525693e-3;
        for (int n = 1; n <= 5; ++n) {
            CHECK(dirac_coulomb_energy(n + 1, 0.5, 1.0, alpha) > dirac_coulomb_energy(n, 0.5, 1.0, alpha));
            for (int tj = 3; tj <= 2 * n - 1; tj += 2) {
                CHECK(dirac_coulomb_energy(n, 0.5 * tj, 1.0, alpha) > dirac_coulomb_energy(n, 0.5 * (tj - 2), 1.0, alpha));
            }
        }
    }

    TEST_CASE("Dirac energy input validation")
    {
        CHECK_THROWS_AS(dirac_coulomb_energy(1, 1.0, 1.0, 0.01), DomainError);
        CHECK_THROWS_AS(dirac_coulomb_energy(1, 1.5, 1.0, 0.01), DomainError);
        CHECK_THROWS_AS(dirac_coulomb_energy(1, 0.5, 1.0, 1.0), DomainError);
        CHECK_THROWS_AS(dirac_coulomb_energy(1, -0.5, 1.0, 0.01), DomainError);
    }

    TEST_CASE("large-m2 operator converges to the analytic Dirac levels")
    {
        const TwoBodySystem sys = make_preset("hydrogen-e");
        const double mu = sys.reduced_mass_units();
        GridMapping map = default_mapping(sys);
        auto grid = std::make_shared<const MomentumGrid>(build_grid(1200, map));
        const auto sols = solve_bound_states(dirac_limit_operator(sys, mu, {1, 0, 0, 0, 0}, grid));
        for (int n = 1; n <= 3; ++n) {
            const double e = select_state(sols, n, 0).epsilon;
            const double ref = dirac_coulomb_energy(n, 0.5, mu, sys.alpha());
            CAPTURE(n);
            CHECK(std::abs(e - ref) / std::abs(ref) <= 1e-7);
        }
        CHECK_THROWS_AS(dirac_limit_operator(sys, 0.0, {1, 0, 0, 0, 0}, grid), DomainError);
    }

    TEST_CASE("kinetic eigenvalues")
    {
        CHECK(kinetic_eigenvalue_exact(0.0, 1.0, 5.0) == 0.0);
        CHECK(kinetic_eigenvalue_reduced(0.0, 0.8) == 0.0);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(1e-6, 10.0);
        for (int k = 0; k < 100; ++k) {
            const double p = u(rng);
            const double m = u(rng);
            CHECK(kinetic_eigenvalue_exact(p, m, m) == doctest::Approx(2.0 * (std::hypot(p, m) - m)).epsilon(1e-13));
        }
        // both approach p^2 / 2 mu
        const double m1 = 1.0;
        const double m2 = 3.0;
        const double mu = m1 * m2 / (m1 + m2);
        for (double p : {1e-2, 1e-3, 1e-4}) {
            const double d = (kinetic_eigenvalue_exact(p, m1, m2) - kinetic_eigenvalue_reduced(p, mu)) / (p * p);
            CHECK(std::abs(d) < p);
        }
    }

    TEST_CASE("p^4 coefficients from finite differences")
    {
        for (const auto& [m1, m2] : {std::pair{1.0, 1836.15}, std::pair{1.0, 1.0}, std::pair{1.0, 8.88}}) {
            const double fd = p4_coefficient(m1, m2, 1e-3);
            CHECK(fd == doctest::Approx(kinetic_p4_coefficient_exact(m1, m2)).epsilon(1e-6));
        }
        const double mu = 0.75;
        double F[3];
        for (int k = 0; k < 3; ++k) {
            F[k] = kinetic_eigenvalue_reduced(std::sqrt(k * 1e-4), mu);
        }
        CHECK(0.5 * (F[2] - 2 * F[1] + F[0]) / 1e-8 == doctest::Approx(kinetic_p4_coefficient_reduced(mu)).epsilon(1e-3));
    }

    TEST_CASE("Dirac reference wave function shape")
    {
        const TwoBodySystem sys = make_preset("hydrogen-e");
        auto grid = std::make_shared<const MomentumGrid>(build_grid(400, default_mapping(sys)));
        const RadialSolution d = dirac_reference_wavefunction(sys, sys.reduced_mass_units(), {1, 0, 0, 0, 0}, grid);
        CHECK(d.node_count == 0);
        std::size_t peak = 0;
        for (std::size_t i = 0; i < d.g.size(); ++i) {
            CHECK(d.g[i] > 0.0);
            if (d.g[i] > d.g[peak]) {
                peak = i;
            }
        }
        for (std::size_t i = peak + 1; i < d.g.size(); ++i) {
            CHECK(d.g[i] <= d.g[i - 1]);
        }
    }
}
