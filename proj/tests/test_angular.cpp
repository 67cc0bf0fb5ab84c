#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nqa/angular.hpp"
#include "nqa/errors.hpp"
#include "nqa/grid.hpp"

using namespace nqa;

namespace {

// Gauss-Legendre in cos(theta) times a uniform phi rule; exact for the
// band-limited products used below.
template <class F>
auto sphere_integral(int n_theta, int n_phi, F&& f)
{
    std::vector<double> x, w;
    gauss_legendre(static_cast<std::size_t>(n_theta), -1.0, 1.0, x, w);
    decltype(f(Eigen::Vector3d::UnitZ())) sum = f(Eigen::Vector3d::UnitZ()) * 0.0;
    for (int a = 0; a < n_theta; ++a) {
        const double st = std::sqrt(1.0 - x[a] * x[a]);
        for (int b = 0; b < n_phi; ++b) {
            const double phi = 2.0 * std::numbers::pi * (b + 0.5) / n_phi;
            const Eigen::Vector3d n(st * std::cos(phi), st * std::sin(phi), x[a]);
            sum += f(n) * (w[a] * 2.0 * std::numbers::pi / n_phi);
        }
    }
    return sum;
}

std::complex<double> inner(const Spinor2x2& a, const Spinor2x2& b)
{
    return (a.adjoint() * b).trace();
}

} // namespace

TEST_SUITE("angular")
{
    TEST_CASE("angular momentum validation")
    {
        CHECK_NOTHROW(AngularMomentum(1, -1));
        CHECK_THROWS_AS(AngularMomentum(1, 3), DomainError);
        CHECK_THROWS_AS(AngularMomentum(2, 1), DomainError);
        CHECK_THROWS_AS(AngularMomentum(-2, 0), DomainError);
    }

    TEST_CASE("clebsch-gordan table values")
    {
        using AM = AngularMomentum;
        const double r2 = std::sqrt(0.5);
        CHECK(clebsch_gordan(AM(1, 1), AM(1, -1), AM(2, 0)) == doctest::Approx(r2).epsilon(1e-15));
        CHECK(clebsch_gordan(AM(1, -1), AM(1, 1), AM(0, 0)) == doctest::Approx(-r2).epsilon(1e-15));
        CHECK(clebsch_gordan(AM::integer(1, 1), AM::integer(1, -1), AM::integer(0, 0)) ==
              doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
        CHECK(clebsch_gordan(AM::integer(1, 0), AM::integer(1, 0), AM::integer(2, 0)) ==
              doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
        CHECK(clebsch_gordan(AM::integer(1, 0), AM::integer(1, 0), AM::integer(1, 0)) == 0.0);
        CHECK(clebsch_gordan(AM::integer(2, 1), AM(1, 1), AM(5, 3)) ==
              doctest::Approx(std::sqrt(4.0 / 5.0)).epsilon(1e-15));
        // M mismatch and triangle violations vanish
        CHECK(clebsch_gordan(AM::integer(1, 1), AM::integer(1, 0), AM::integer(2, 0)) == 0.0);
        CHECK(clebsch_gordan(AM::integer(1, 0), AM::integer(1, 0), AM::integer(3, 0)) == 0.0);

        const SignedSqrtRational e = clebsch_gordan_exact(AM::integer(1, 0), AM::integer(1, 0), AM::integer(2, 0));
        CHECK(e.sign == 1);
        CHECK(e.square == Rational(2, 3));
    }

    TEST_CASE("clebsch-gordan orthogonality on random couplings")
    {
        std::mt19937_64 rng(20240611);
        std::uniform_int_distribution<int> pick(0, 6);
        for (int trial = 0; trial < 40; ++trial) {
            const int tj1 = pick(rng);
            const int tj2 = pick(rng);
            // sum_{m1 m2} <j1 m1 j2 m2|J M><j1 m1 j2 m2|J' M> = delta_JJ'
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
                    const int tM = std::min(tJ, tJp);
                    double s = 0.0;
                    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                        const int tm2 = tM - tm1;
                        if (std::abs(tm2) > tj2 || (tm2 - tj2) % 2 != 0) {
                            continue;
                        }
                        s += clebsch_gordan(AngularMomentum(tj1, tm1), AngularMomentum(tj2, tm2),
                                            AngularMomentum(tJ, tM)) *
                             clebsch_gordan(AngularMomentum(tj1, tm1), AngularMomentum(tj2, tm2),
                                            AngularMomentum(tJp, tM));
                    }
                    CHECK(s == doctest::Approx(tJ == tJp ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
                }
            }
        }
    }

    TEST_CASE("spherical harmonics are orthonormal")
    {
        for (int l1 = 0; l1 <= 3; ++l1) {
            for (int m1 = -l1; m1 <= l1; ++m1) {
                for (int l2 = 0; l2 <= 3; ++l2) {
                    for (int m2 = -l2; m2 <= l2; ++m2) {
                        const auto v = sphere_integral(8, 16, [&](const Eigen::Vector3d& n) {
                            const double th = std::acos(n.z());
                            const double ph = std::atan2(n.y(), n.x());
                            return std::conj(spherical_harmonic(l1, m1, th, ph)) * spherical_harmonic(l2, m2, th, ph);
                        });
                        const double expect = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
                        CHECK(std::abs(v - expect) < 1e-13);
                    }
                }
            }
        }
        // Condon-Shortley phase: Y_11 has a negative x-component
        CHECK(spherical_harmonic(1, 1, std::numbers::pi / 2, 0.0).real() < 0.0);
    }

    TEST_CASE("spin-angle functions are orthonormal across channels")
    {
        for (int F = 0; F <= 2; ++F) {
            const auto chans = channels_for(F);
            for (const Channel& a : chans) {
                const SpinAngleFunction Ya(F, F, a.L, a.S);
                for (const Channel& b : chans) {
                    const SpinAngleFunction Yb(F, F, b.L, b.S);
                    const auto v = sphere_integral(10, 20, [&](const Eigen::Vector3d& n) { return inner(Ya(n), Yb(n)); });
                    CHECK(std::abs(v - (a == b ? 1.0 : 0.0)) < 1e-13);
                }
            }
        }
        CHECK_THROWS_AS(SpinAngleFunction(2, 0, 0, 0), DomainError);
        CHECK_THROWS_AS(SpinAngleFunction(1, 1, 0, 2), DomainError);
    }

    TEST_CASE("coupling coefficients match projections of sigma.n on the sphere")
    {
        // Independent oracle: C_{from,to} = int Tr[Y_to^dagger (sigma.n) Y_from] dOmega
        // (left) or with Y_from (sigma.n)^T (right).
        for (int F = 0; F <= 3; ++F) {
            for (int mF : {F, -F, 0}) {
                for (CouplingSide side : {CouplingSide::left, CouplingSide::right}) {
                    const auto table = coupling_table(F, mF, side);
                    for (const Channel& from : table->channels()) {
                        const SpinAngleFunction Yf(F, mF, from.L, from.S);
                        for (const Channel& to : table->channels()) {
                            const SpinAngleFunction Yt(F, mF, to.L, to.S);
                            const auto v = sphere_integral(12, 24, [&](const Eigen::Vector3d& n) {
                                const Spinor2x2 s = sigma_dot(n);
                                const Spinor2x2 act = side == CouplingSide::left ? Spinor2x2(s * Yf(n))
                                                                                 : Spinor2x2(Yf(n) * s.transpose());
                                return inner(Yt(n), act);
                            });
                            CHECK(std::abs(v.imag()) < 1e-13);
                            CHECK(v.real() == doctest::Approx(table->coefficient(from, to)).epsilon(1e-12).scale(1.0));
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("selection rule |L - L'| = 1")
    {
        for (int F = 0; F <= 3; ++F) {
            const auto t = coupling_table(F, F, CouplingSide::left);
            for (const auto& [from, row] : t->entries) {
                for (const auto& e : row) {
                    CHECK(std::abs(from.L - e.to.L) == 1);
                    CHECK(e.exact.has_value());
                }
            }
        }
    }

    TEST_CASE("sum rules hold exactly for F <= 3 and every mF")
    {
        for (int F = 0; F <= 3; ++F) {
            for (int mF = -F; mF <= F; ++mF) {
                const SumRuleReport r = verify_sum_rules(*coupling_table(F, mF, CouplingSide::left),
                                                         *coupling_table(F, mF, CouplingSide::right));
                CHECK(r.exact);
                CHECK(r.all_passed());
                for (double d : r.max_deviation) {
                    CHECK(d == 0.0);
                }
            }
        }
    }

    TEST_CASE("sum rules catch a perturbed coefficient")
    {
        CouplingTable left = *coupling_table(1, 1, CouplingSide::left);
        auto& row = left.entries.begin()->second;
        REQUIRE(!row.empty());
        row.front().value *= 1.0 + 1e-6;
        row.front().exact.reset();
        const SumRuleReport r = verify_sum_rules(left, *coupling_table(1, 1, CouplingSide::right));
        CHECK_FALSE(r.exact);
        CHECK_FALSE(r.all_passed());
    }

    TEST_CASE("contracted weights of the S-wave channels")
    {
        const ExactChannelWeights s0 = contract_channel_weights_exact(0, 0, 0, 0);
        REQUIRE(s0.h_main.size() == 1);
        CHECK(s0.h_main.at(1).as_rational() == Rational(1));
        REQUIRE(s0.h_small.size() == 1);
        CHECK(s0.h_small.at(0).as_rational() == Rational(1));
        REQUIRE(s0.g_small.size() == 1);
        CHECK(s0.g_small.at(1).as_rational() == Rational(1));

        const ExactChannelWeights s1 = contract_channel_weights_exact(1, 1, 0, 1);
        CHECK(s1.h_main.at(1).as_rational() == Rational(1));
        REQUIRE(s1.h_small.size() == 2);
        CHECK(s1.h_small.at(0).as_rational() == Rational(1, 9));
        CHECK(s1.h_small.at(2).as_rational() == Rational(8, 9));

        const ChannelWeights d = s1.to_double();
        CHECK(d.h_small.at(2) == doctest::Approx(8.0 / 9.0).epsilon(1e-16));
        CHECK(d.max_L() == 2);
    }

    TEST_CASE("contracted weights do not depend on mF")
    {
        for (int F = 0; F <= 3; ++F) {
            for (const Channel& c : channels_for(F)) {
                const ChannelWeights ref = contract_channel_weights(F, F, c.L, c.S);
                for (int mF = -F; mF < F; ++mF) {
                    const ChannelWeights w = contract_channel_weights(F, mF, c.L, c.S);
                    CHECK(w.g_small.size() == ref.g_small.size());
                    CHECK(w.h_main.size() == ref.h_main.size());
                    CHECK(w.h_small.size() == ref.h_small.size());
                    for (const auto& [L, v] : ref.h_small) {
                        CHECK(w.h_small.at(L) == doctest::Approx(v).epsilon(1e-14));
                    }
                    for (const auto& [L, v] : ref.h_main) {
                        CHECK(w.h_main.at(L) == doctest::Approx(v).epsilon(1e-14));
                    }
                }
            }
        }
    }

    TEST_CASE("squared coupling weights sum to one")
    {
        // Completeness: each row of C has unit norm, so the h_main weights add to 1.
        for (int F = 0; F <= 3; ++F) {
            for (const Channel& c : channels_for(F)) {
                const ChannelWeights w = contract_channel_weights(F, F, c.L, c.S);
                double s = 0.0;
                for (const auto& [L, v] : w.h_main) {
                    s += v;
                }
                CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
                s = 0.0;
                for (const auto& [L, v] : w.g_small) {
                    s += v;
                }
                CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
            }
        }
    }

    TEST_CASE("coupling table dump")
    {
        std::ostringstream out;
        write_coupling_table(out, *coupling_table(0, 0, CouplingSide::left));
        const std::string s = out.str();
        CHECK(s.find("# side=left") != std::string::npos);
        std::istringstream in(s);
        std::string line;
        int data = 0;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#' && std::isdigit(static_cast<unsigned char>(line[0]))) {
                std::istringstream row(line);
                int F, mF, L, S, Lp, Sp;
                double v;
                REQUIRE(static_cast<bool>(row >> F >> mF >> L >> S >> Lp >> Sp >> v));
                CHECK(std::abs(std::abs(v) - 1.0) < 1e-16);
                ++data;
            }
        }
        CHECK(data == 2);
    }
}
