#include "nqa/exact.hpp"

#include <cmath>
#include <sstream>

namespace nqa {

namespace {

bool is_perfect_square(const BigInt& n, BigInt& root)
{
    if (n < 0) {
        return false;
    }
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

// Radicals with products of these primes only arise from factorials of
// quantum numbers far beyond anything tabulated here.
constexpr int kTrialPrimeLimit = 2000;

} // namespace

void split_square(const BigInt& n_in, BigInt& k, BigInt& s)
{
    BigInt n = n_in;
    k = 1;
    s = 1;
    for (int p = 2; p <= kTrialPrimeLimit && n > 1; ++p) {
        const BigInt bp = p;
        if (n % bp != 0) {
            continue;
        }
        int e = 0;
        while (n % bp == 0) {
            n /= bp;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) {
            k *= bp;
        }
        if (e % 2 == 1) {
            s *= bp;
        }
    }
    if (n > 1) {
        BigInt r;
        if (is_perfect_square(n, r)) {
            k *= r;
        } else {
            s *= n;
        }
    }
}

double SignedSqrtRational::value() const
{
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::sqrt(static_cast<double>(square));
}

std::string SignedSqrtRational::str() const
{
    if (sign == 0) {
        return "0";
    }
    std::ostringstream os;
    os << (sign < 0 ? "-" : "") << "sqrt(" << square << ")";
    return os.str();
}

SignedSqrtRational SignedSqrtRational::from_rational(const Rational& r)
{
    SignedSqrtRational out;
    out.sign = r > 0 ? 1 : (r < 0 ? -1 : 0);
    out.square = r * r;
    return out;
}

RadicalSum::RadicalSum(const Rational& r)
{
    if (r != 0) {
        terms_[BigInt(1)] = r;
    }
}

RadicalSum::RadicalSum(const SignedSqrtRational& s)
{
    if (s.sign == 0 || s.square == 0) {
        return;
    }
    *this = sqrt_of(s.square);
    if (s.sign < 0) {
        *this = -*this;
    }
}

RadicalSum RadicalSum::sqrt_of(const Rational& r)
{
    RadicalSum out;
    if (r == 0) {
        return out;
    }
    // sqrt(a/b) = sqrt(a b) / b
    const BigInt a = boost::multiprecision::numerator(r);
    const BigInt b = boost::multiprecision::denominator(r);
    BigInt k;
    BigInt s;
    split_square(a * b, k, s);
    out.terms_[s] = Rational(k, b);
    return out;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o)
{
    for (const auto& [s, q] : o.terms_) {
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            terms_.emplace(s, q);
        } else {
            it->second += q;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }
    return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& o)
{
    return *this += -o;
}

RadicalSum RadicalSum::operator-() const
{
    RadicalSum out = *this;
    for (auto& [s, q] : out.terms_) {
        q = -q;
    }
    return out;
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b)
{
    RadicalSum out;
    for (const auto& [sa, qa] : a.terms_) {
        for (const auto& [sb, qb] : b.terms_) {
            BigInt k;
            BigInt s;
            split_square(sa * sb, k, s);
            RadicalSum term;
            term.terms_[s] = qa * qb * Rational(k);
            out += term;
        }
    }
    return out;
}

bool RadicalSum::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

std::optional<Rational> RadicalSum::as_rational() const
{
    if (terms_.empty()) {
        return Rational(0);
    }
    if (!is_rational()) {
        return std::nullopt;
    }
    return terms_.begin()->second;
}

std::optional<SignedSqrtRational> RadicalSum::as_signed_sqrt() const
{
    SignedSqrtRational out;
    if (terms_.empty()) {
        return out;
    }
    if (terms_.size() != 1) {
        return std::nullopt;
    }
    const auto& [s, q] = *terms_.begin();
    out.sign = q > 0 ? 1 : -1;
    out.square = q * q * Rational(s);
    return out;
}

double RadicalSum::value() const
{
    // long double keeps the sum of a handful of radicals exact to double rounding
    long double v = 0.0L;
    for (const auto& [s, q] : terms_) {
        v += static_cast<long double>(static_cast<double>(q)) *
             std::sqrt(static_cast<long double>(static_cast<double>(s)));
    }
    return static_cast<double>(v);
}

std::string RadicalSum::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, q] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << q << ")";
        if (s != 1) {
            os << "*sqrt(" << s << ")";
        }
    }
    return os.str();
}

} // namespace nqa
