#include "nqa/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "nqa/errors.hpp"

namespace nqa {

double legendre_p(int L, double x)
{
    if (L < 0) {
        throw DomainError("legendre_p: negative degree");
    }
    if (L == 0) {
        return 1.0;
    }
    double p_prev = 1.0;
    double p = x;
    for (int l = 1; l < L; ++l) {
        const double next = ((2 * l + 1) * x * p - l * p_prev) / (l + 1);
        p_prev = p;
        p = next;
    }
    return p;
}

namespace {

// Upward recurrence amplifies rounding by about exp(2 L eta); stay below e^4.
constexpr double kUpwardGrowthLimit = 2.0;
constexpr double kUpwardMaxY = 1.5;

void q_upward(double y, double q0, std::span<double> out)
{
    out[0] = q0;
    if (out.size() == 1) {
        return;
    }
    out[1] = y * q0 - 1.0;
    for (std::size_t l = 1; l + 1 < out.size(); ++l) {
        const double ld = static_cast<double>(l);
        out[l + 1] = ((2.0 * ld + 1.0) * y * out[l] - ld * out[l - 1]) / (ld + 1.0);
    }
}

void q_miller(double y, double eta, double q0, std::span<double> out)
{
    const int L_max = static_cast<int>(out.size()) - 1;
    const int extra = static_cast<int>(std::ceil(40.0 / eta)) + 10;
    const int K = L_max + std::min(extra, 100000);

    double q_hi = 0.0;  // Q~_{l+1}
    double q = 1e-300;  // Q~_l, starting at l = K
    for (int l = K; l >= 1; --l) {
        const double ld = static_cast<double>(l);
        const double q_lo = ((2.0 * ld + 1.0) * y * q - (ld + 1.0) * q_hi) / ld;
        q_hi = q;
        q = q_lo;
        if (l - 1 <= L_max) {
            out[static_cast<std::size_t>(l - 1)] = q;
        }
        // One step can grow q by about 2 y, so rescale well before overflow.
        if (std::abs(q) * std::max(1.0, y) > 1e200) {
            const double s = 1.0 / std::abs(q);
            q *= s;
            q_hi *= s;
            for (int k = l - 1; k <= L_max; ++k) {
                out[static_cast<std::size_t>(k)] *= s;
            }
        }
    }
    const double scale = q0 / out[0];
    for (double& v : out) {
        v *= scale;
    }
}

} // namespace

void legendre_q_all(double y, double y_minus_1, std::span<double> out)
{
    if (out.empty()) {
        return;
    }
    if (!(y_minus_1 > 0.0)) {
        throw DomainError("legendre_q: argument must exceed 1");
    }
    // 2 / (y - 1) overflows for subnormal y - 1; split the logarithm there.
    const double q0 = y_minus_1 < 1.0 ? 0.5 * (std::log(2.0 + y_minus_1) - std::log(y_minus_1))
                                      : 0.5 * std::log1p(2.0 / y_minus_1);
    const auto L_max = static_cast<double>(out.size() - 1);
    if (out.size() == 1) {
        out[0] = q0;
        return;
    }
    // acosh(y) written in terms of y - 1
    const double eta = std::log1p(y_minus_1 + std::sqrt(y_minus_1 * (y_minus_1 + 2.0)));
    if (y < kUpwardMaxY && L_max * eta < kUpwardGrowthLimit) {
        q_upward(y, q0, out);
    } else {
        q_miller(y, eta, q0, out);
    }
}

std::vector<double> legendre_q_all(int L_max, double y)
{
    if (L_max < 0) {
        throw DomainError("legendre_q: negative degree");
    }
    std::vector<double> out(static_cast<std::size_t>(L_max) + 1);
    legendre_q_all(y, y - 1.0, out);
    return out;
}

double legendre_q(int L, double y)
{
    if (L < 0) {
        throw DomainError("legendre_q: negative degree");
    }
    if (!(y > 1.0)) {
        throw DomainError("legendre_q: argument must exceed 1");
    }
    return legendre_q_all(L, y).back();
}

} // namespace nqa
