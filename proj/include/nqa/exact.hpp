#pragma once

#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nqa {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// sign * sqrt(square) with square >= 0; the natural exact form of a
/// Clebsch-Gordan or coupling coefficient.
struct SignedSqrtRational {
    int sign = 0;          ///< -1, 0, +1
    Rational square = 0;   ///< value squared

    double value() const;
    std::string str() const;

    static SignedSqrtRational from_rational(const Rational& r);
};

/// Exact element of Q(sqrt 2, sqrt 3, ...): sum_k q_k sqrt(s_k) with distinct
/// squarefree radicands s_k. Closed under + and *, which is all the
/// angular-momentum contractions need.
class RadicalSum {
public:
    RadicalSum() = default;
    RadicalSum(const Rational& r);            // NOLINT(google-explicit-constructor)
    RadicalSum(const SignedSqrtRational& s);  // NOLINT(google-explicit-constructor)
    RadicalSum(long v) : RadicalSum(Rational(v)) {} // NOLINT(google-explicit-constructor)

    static RadicalSum sqrt_of(const Rational& r);

    RadicalSum& operator+=(const RadicalSum& o);
    RadicalSum& operator-=(const RadicalSum& o);
    friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
    friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
    friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);
    RadicalSum operator-() const;

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    /// The value as sign * sqrt(rational) when it has at most one radicand.
    std::optional<SignedSqrtRational> as_signed_sqrt() const;
    std::optional<Rational> as_rational() const;
    double value() const;
    std::string str() const;

    const std::map<BigInt, Rational>& terms() const { return terms_; }

private:
    std::map<BigInt, Rational> terms_; // radicand -> coefficient, no zero coefficients
};

/// Splits n > 0 into k^2 * s with s squarefree (as far as small-prime
/// trial division can tell).
void split_square(const BigInt& n, BigInt& k, BigInt& s);

} // namespace nqa
