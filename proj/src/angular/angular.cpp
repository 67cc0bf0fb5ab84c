#include "nqa/angular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <tuple>

#include "nqa/errors.hpp"

namespace nqa {

namespace {

BigInt factorial(int n)
{
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

bool triangle(int tj1, int tj2, int tJ)
{
    return tJ >= std::abs(tj1 - tj2) && tJ <= tj1 + tj2 && (tj1 + tj2 + tJ) % 2 == 0;
}

// Spherical components of sigma: sigma_{+1} = -(sx + i sy)/sqrt2, sigma_0 = sz,
// sigma_{-1} = (sx - i sy)/sqrt2. All are real 2x2 matrices; entries as RadicalSum.
using ExactMatrix = std::array<std::array<RadicalSum, 2>, 2>;

ExactMatrix sigma_spherical(int q)
{
    ExactMatrix m{};
    const RadicalSum sqrt2 = RadicalSum::sqrt_of(Rational(2));
    if (q == 1) {
        m[0][1] = -sqrt2;
    } else if (q == 0) {
        m[0][0] = RadicalSum(1L);
        m[1][1] = RadicalSum(-1L);
    } else {
        m[1][0] = sqrt2;
    }
    return m;
}

ExactMatrix spin_exact(int S, int mS)
{
    ExactMatrix m{};
    const RadicalSum inv_sqrt2 = RadicalSum::sqrt_of(Rational(1, 2));
    if (S == 0) {
        m[0][1] = inv_sqrt2;
        m[1][0] = -inv_sqrt2;
    } else if (mS == 1) {
        m[0][0] = RadicalSum(1L);
    } else if (mS == -1) {
        m[1][1] = RadicalSum(1L);
    } else {
        m[0][1] = inv_sqrt2;
        m[1][0] = inv_sqrt2;
    }
    return m;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b)
{
    ExactMatrix c{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

ExactMatrix transpose(const ExactMatrix& a)
{
    ExactMatrix t{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            t[i][j] = a[j][i];
        }
    }
    return t;
}

// Tr[a^T b] for real matrices: the Frobenius inner product.
RadicalSum overlap(const ExactMatrix& a, const ExactMatrix& b)
{
    RadicalSum s;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            s += a[i][j] * b[i][j];
        }
    }
    return s;
}

RadicalSum cg(int tj1, int tm1, int tj2, int tm2, int tJ, int tM)
{
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) {
        return {};
    }
    return RadicalSum(clebsch_gordan_exact(AngularMomentum(tj1, tm1), AngularMomentum(tj2, tm2),
                                           AngularMomentum(tJ, tM)));
}

// <L' mL'| sqrt(4pi/3) Y_{1,-q} |L mL> expanded as coefficient of Y_{L' mL'} in
// n_{-q} Y_{L mL}.
RadicalSum orbital_factor(int L, int mL, int q, int Lp, int mLp)
{
    const RadicalSum a = cg(2 * L, 0, 2, 0, 2 * Lp, 0);
    if (a.is_zero()) {
        return {};
    }
    const RadicalSum b = cg(2 * L, 2 * mL, 2, -2 * q, 2 * Lp, 2 * mLp);
    if (b.is_zero()) {
        return {};
    }
    return RadicalSum::sqrt_of(Rational(2 * L + 1, 2 * Lp + 1)) * a * b;
}

RadicalSum coupling_exact(int F, int mF, const Channel& from, const Channel& to, CouplingSide side)
{
    if (std::abs(from.L - to.L) != 1) {
        return {};
    }
    RadicalSum total;
    for (int q = -1; q <= 1; ++q) {
        const ExactMatrix sq = sigma_spherical(q);
        for (int mL = -from.L; mL <= from.L; ++mL) {
            const int mS = mF - mL;
            if (std::abs(mS) > from.S) {
                continue;
            }
            const RadicalSum c1 = cg(2 * from.L, 2 * mL, 2 * from.S, 2 * mS, 2 * F, 2 * mF);
            if (c1.is_zero()) {
                continue;
            }
            const int mLp = mL - q;
            const int mSp = mF - mLp;
            if (std::abs(mLp) > to.L || std::abs(mSp) > to.S) {
                continue;
            }
            const RadicalSum c2 = cg(2 * to.L, 2 * mLp, 2 * to.S, 2 * mSp, 2 * F, 2 * mF);
            if (c2.is_zero()) {
                continue;
            }
            const ExactMatrix phi = spin_exact(from.S, mS);
            const ExactMatrix acted =
                side == CouplingSide::left ? multiply(sq, phi) : multiply(phi, transpose(sq));
            const RadicalSum spin = overlap(spin_exact(to.S, mSp), acted);
            if (spin.is_zero()) {
                continue;
            }
            RadicalSum term = c1 * c2 * spin * orbital_factor(from.L, mL, q, to.L, mLp);
            if (q % 2 != 0) {
                term = -term;
            }
            total += term;
        }
    }
    return total;
}

} // namespace

AngularMomentum::AngularMomentum(int twice_j, int twice_m) : twice_j_(twice_j), twice_m_(twice_m)
{
    if (twice_j < 0 || std::abs(twice_m) > twice_j || (twice_j - twice_m) % 2 != 0) {
        throw DomainError("AngularMomentum: need |m| <= j with j, m both integer or both half-integer");
    }
}

SignedSqrtRational clebsch_gordan_exact(const AngularMomentum& j1, const AngularMomentum& j2,
                                        const AngularMomentum& J)
{
    const int a = j1.twice_j();
    const int b = j2.twice_j();
    const int c = J.twice_j();
    const int ma = j1.twice_m();
    const int mb = j2.twice_m();
    const int mc = J.twice_m();
    if (ma + mb != mc || !triangle(a, b, c)) {
        return {};
    }
    // Racah's closed form; every factorial argument below is an integer.
    const Rational pre(BigInt(c + 1) * factorial((c + a - b) / 2) * factorial((c - a + b) / 2) *
                           factorial((a + b - c) / 2) * factorial((c + mc) / 2) *
                           factorial((c - mc) / 2) * factorial((a - ma) / 2) *
                           factorial((a + ma) / 2) * factorial((b - mb) / 2) *
                           factorial((b + mb) / 2),
                       factorial((a + b + c) / 2 + 1));
    Rational sum = 0;
    const int k_max = std::min({(a + b - c) / 2, (a - ma) / 2, (b + mb) / 2});
    const int k_min = std::max({0, (b - c - ma) / 2, (a - c + mb) / 2});
    for (int k = k_min; k <= k_max; ++k) {
        const BigInt den = factorial(k) * factorial((a + b - c) / 2 - k) * factorial((a - ma) / 2 - k) *
                           factorial((b + mb) / 2 - k) * factorial((c - b + ma) / 2 + k) *
                           factorial((c - a - mb) / 2 + k);
        sum += Rational(k % 2 == 0 ? 1 : -1, den);
    }
    SignedSqrtRational out;
    if (sum == 0) {
        return out;
    }
    out.sign = sum > 0 ? 1 : -1;
    out.square = pre * sum * sum;
    return out;
}

double clebsch_gordan(const AngularMomentum& j1, const AngularMomentum& j2, const AngularMomentum& J)
{
    return clebsch_gordan_exact(j1, j2, J).value();
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi)
{
    if (l < 0 || std::abs(m) > l) {
        throw DomainError("spherical_harmonic: need |m| <= l");
    }
    const int am = std::abs(m);
    // std::sph_legendre already carries the Condon-Shortley phase.
    const std::complex<double> y =
        std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), theta) *
        std::polar(1.0, am * phi);
    if (m >= 0) {
        return y;
    }
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

Eigen::Matrix2d spin_matrix(int S, int mS)
{
    if ((S != 0 && S != 1) || std::abs(mS) > S) {
        throw DomainError("spin_matrix: need S in {0, 1} and |mS| <= S");
    }
    const ExactMatrix e = spin_exact(S, mS);
    Eigen::Matrix2d m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = e[i][j].value();
        }
    }
    return m;
}

SpinAngleFunction::SpinAngleFunction(int F, int mF, int L, int S) : L_(L)
{
    if (S != 0 && S != 1) {
        throw DomainError("spin_angle_value: S must be 0 or 1");
    }
    if (L < 0 || F < 0 || std::abs(mF) > F || !triangle(2 * L, 2 * S, 2 * F)) {
        throw DomainError("spin_angle_value: (L, S, F, mF) violates the coupling rules");
    }
    for (int mL = -L; mL <= L; ++mL) {
        const int mS = mF - mL;
        if (std::abs(mS) > S) {
            continue;
        }
        const double c = clebsch_gordan(AngularMomentum::integer(L, mL), AngularMomentum::integer(S, mS),
                                        AngularMomentum::integer(F, mF));
        if (c != 0.0) {
            terms_.push_back({mL, c, spin_matrix(S, mS).cast<std::complex<double>>()});
        }
    }
}

Spinor2x2 SpinAngleFunction::operator()(const Eigen::Vector3d& direction) const
{
    const double r = direction.norm();
    if (!(r > 0.0)) {
        throw DomainError("spin_angle_value: direction must be nonzero");
    }
    const double theta = std::acos(std::clamp(direction.z() / r, -1.0, 1.0));
    const double phi = std::atan2(direction.y(), direction.x());
    Spinor2x2 out = Spinor2x2::Zero();
    for (const Term& t : terms_) {
        out += (t.coefficient * spherical_harmonic(L_, t.mL, theta, phi)) * t.spin;
    }
    return out;
}

Spinor2x2 spin_angle_value(int F, int mF, int L, int S, const Eigen::Vector3d& direction)
{
    return SpinAngleFunction(F, mF, L, S)(direction);
}

Eigen::Matrix2cd sigma_dot(const Eigen::Vector3d& n)
{
    using cd = std::complex<double>;
    Eigen::Matrix2cd m;
    m << cd(n.z(), 0.0), cd(n.x(), -n.y()), cd(n.x(), n.y()), cd(-n.z(), 0.0);
    return m;
}

std::vector<Channel> channels_for(int F)
{
    if (F < 0) {
        throw DomainError("channels_for: F must be nonnegative");
    }
    if (F == 0) {
        return {{0, 0}, {1, 1}};
    }
    return {{F - 1, 1}, {F, 0}, {F, 1}, {F + 1, 1}};
}

std::vector<Channel> CouplingTable::channels() const
{
    return channels_for(F);
}

double CouplingTable::coefficient(const Channel& from, const Channel& to) const
{
    const auto it = entries.find(from);
    if (it == entries.end()) {
        return 0.0;
    }
    for (const auto& e : it->second) {
        if (e.to == to) {
            return e.value;
        }
    }
    return 0.0;
}

std::optional<RadicalSum> CouplingTable::exact_coefficient(const Channel& from, const Channel& to) const
{
    const auto it = entries.find(from);
    if (it == entries.end()) {
        return RadicalSum();
    }
    for (const auto& e : it->second) {
        if (e.to == to) {
            if (!e.exact) {
                return std::nullopt;
            }
            return RadicalSum(*e.exact);
        }
    }
    return RadicalSum();
}

CouplingTable build_coupling_table(int F, int mF, CouplingSide side)
{
    if (F < 0 || std::abs(mF) > F) {
        throw DomainError("build_coupling_table: need F >= 0 and |mF| <= F");
    }
    CouplingTable t;
    t.F = F;
    t.mF = mF;
    t.side = side;
    const auto chans = channels_for(F);
    for (const Channel& from : chans) {
        auto& row = t.entries[from];
        for (const Channel& to : chans) {
            const RadicalSum c = coupling_exact(F, mF, from, to, side);
            if (c.is_zero()) {
                continue;
            }
            CouplingEntry e;
            e.to = to;
            e.value = c.value();
            e.exact = c.as_signed_sqrt();
            row.push_back(e);
        }
    }
    return t;
}

std::shared_ptr<const CouplingTable> coupling_table(int F, int mF, CouplingSide side)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const CouplingTable>> cache;
    const auto key = std::make_tuple(F, mF, static_cast<int>(side));
    {
        const std::lock_guard<std::mutex> lock(mutex);
        if (const auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto table = std::make_shared<const CouplingTable>(build_coupling_table(F, mF, side));
    const std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(table)).first->second;
}

bool SumRuleReport::all_passed() const
{
    return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

SumRuleReport verify_sum_rules(const CouplingTable& left, const CouplingTable& right, double tolerance)
{
    if (left.F != right.F || left.mF != right.mF) {
        throw DomainError("verify_sum_rules: tables belong to different (F, mF)");
    }
    const auto chans = left.channels();

    bool exact = true;
    for (const auto* t : {&left, &right}) {
        for (const auto& [from, row] : t->entries) {
            for (const auto& e : row) {
                exact = exact && e.exact.has_value();
            }
        }
    }

    // Deviation of a - b, exactly when possible.
    auto deviation = [&](const CouplingTable& ta, const Channel& a1, const Channel& a2, double sa,
                         const CouplingTable& tb, const Channel& b1, const Channel& b2) {
        if (exact) {
            RadicalSum d = *ta.exact_coefficient(a1, a2);
            if (sa < 0) {
                d = -d;
            }
            d -= *tb.exact_coefficient(b1, b2);
            return std::abs(d.value());
        }
        return std::abs(sa * ta.coefficient(a1, a2) - tb.coefficient(b1, b2));
    };
    auto completeness = [&](const CouplingTable& t, const Channel& a, const Channel& c) {
        const double delta = a == c ? 1.0 : 0.0;
        if (exact) {
            RadicalSum s;
            for (const Channel& b : chans) {
                s += *t.exact_coefficient(a, b) * *t.exact_coefficient(b, c);
            }
            s -= RadicalSum(Rational(a == c ? 1 : 0));
            return std::abs(s.value());
        }
        double s = 0.0;
        for (const Channel& b : chans) {
            s += t.coefficient(a, b) * t.coefficient(b, c);
        }
        return std::abs(s - delta);
    };

    SumRuleReport r;
    r.exact = exact;
    for (const Channel& a : chans) {
        for (const Channel& b : chans) {
            double& d0 = r.max_deviation[0];
            double& d1 = r.max_deviation[1];
            double& d2 = r.max_deviation[2];
            if (a.S == 0) {
                d0 = std::max(d0, deviation(left, a, b, -1.0, right, a, b));
            } else if (b.S == 0) {
                d1 = std::max(d1, deviation(left, a, b, -1.0, right, a, b));
            } else {
                d2 = std::max(d2, deviation(left, a, b, 1.0, right, a, b));
            }
            r.max_deviation[3] = std::max(r.max_deviation[3], deviation(left, a, b, 1.0, left, b, a));
            r.max_deviation[4] = std::max(r.max_deviation[4], completeness(left, a, b));
            r.max_deviation[5] = std::max(r.max_deviation[5], completeness(right, a, b));
        }
    }
    for (std::size_t k = 0; k < r.passed.size(); ++k) {
        r.passed[k] = r.max_deviation[k] <= tolerance;
    }
    return r;
}

int ChannelWeights::max_L() const
{
    int m = 0;
    for (const auto* w : {&g_main, &g_small, &h_main, &h_small}) {
        for (const auto& [L, v] : *w) {
            if (v != 0.0) {
                m = std::max(m, L);
            }
        }
    }
    return m;
}

ChannelWeights ExactChannelWeights::to_double() const
{
    ChannelWeights w;
    w.g_main[L] = 1.0;
    for (const auto& [l, v] : g_small) {
        w.g_small[l] = v.value();
    }
    for (const auto& [l, v] : h_main) {
        w.h_main[l] = v.value();
    }
    for (const auto& [l, v] : h_small) {
        w.h_small[l] = v.value();
    }
    return w;
}

ExactChannelWeights contract_channel_weights_exact(int F, int mF, int L, int S)
{
    if (S != 0 && S != 1) {
        throw DomainError("contract_channel_weights: S must be 0 or 1");
    }
    if (L < 0 || F < 0 || std::abs(mF) > F || !triangle(2 * L, 2 * S, 2 * F)) {
        throw DomainError("contract_channel_weights: (L, S, F, mF) violates the coupling rules");
    }
    const auto left = coupling_table(F, mF, CouplingSide::left);
    const auto right = coupling_table(F, mF, CouplingSide::right);
    const auto chans = channels_for(F);
    const Channel self{L, S};

    // Tables built here are always exact, so value() cannot throw.
    auto C = [&](const Channel& a, const Channel& b) { return left->exact_coefficient(a, b).value(); };
    auto CT = [&](const Channel& a, const Channel& b) { return right->exact_coefficient(a, b).value(); };

    auto add = [](std::map<int, RadicalSum>& m, int l, const RadicalSum& v) {
        if (v.is_zero()) {
            return;
        }
        m[l] += v;
        if (m[l].is_zero()) {
            m.erase(l);
        }
    };

    ExactChannelWeights w;
    w.L = L;
    for (const Channel& b : chans) {
        const RadicalSum ct = CT(self, b);
        add(w.g_small, b.L, ct * ct);
        const RadicalSum c = C(self, b);
        add(w.h_main, b.L, c * c);
    }
    for (const Channel& b1 : chans) {
        const RadicalSum c1 = C(self, b1);
        if (c1.is_zero()) {
            continue;
        }
        for (const Channel& b2 : chans) {
            const RadicalSum t2 = CT(b1, b2);
            if (t2.is_zero()) {
                continue;
            }
            for (const Channel& b3 : chans) {
                const RadicalSum t3 = CT(b2, b3);
                const RadicalSum c4 = C(self, b3);
                if (t3.is_zero() || c4.is_zero()) {
                    continue;
                }
                add(w.h_small, b2.L, c1 * t2 * t3 * c4);
            }
        }
    }
    return w;
}

ChannelWeights contract_channel_weights(int F, int mF, int L, int S)
{
    return contract_channel_weights_exact(F, mF, L, S).to_double();
}

void write_coupling_table(std::ostream& out, const CouplingTable& table)
{
    char buf[64];
    out << "# side=" << (table.side == CouplingSide::left ? "left" : "right") << '\n';
    out << "# F mF L S L' S' value\n";
    for (const auto& [from, row] : table.entries) {
        for (const auto& e : row) {
            std::snprintf(buf, sizeof buf, "%.17g", e.value);
            out << table.F << ' ' << table.mF << ' ' << from.L << ' ' << from.S << ' ' << e.to.L << ' '
                << e.to.S << ' ' << buf << '\n';
        }
    }
}

} // namespace nqa
