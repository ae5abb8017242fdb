#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sra/error.hpp"

namespace sra {

// All scalar arithmetic in the library is exact.  Int/Rational are
// arbitrary-precision; Cyclotomic is Q(zeta_l) = Q[x]/Phi_l(x) in canonical
// reduced coordinates.  Values are immutable after construction and all
// operations are pure, so sharing across threads is safe.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int parse_int(std::string_view s);
Rational parse_rational(std::string_view s);  // "p/q" or "p"
std::string to_string(const Rational& r);     // "p/q", or "p" when q = 1

long long euler_phi(long long n);

// Phi_l as a monic integer polynomial, index = degree.  Computed by dividing
// x^l - 1 by the product of Phi_d over proper divisors d of l.
std::vector<Int> cyclotomic_polynomial(long long ell);

// Largest phi(l) we accept; larger orders are rejected with an explicit
// limit error instead of silently degrading.
inline constexpr long long kMaxCyclotomicDegree = 64;

class Cyclotomic {
public:
    // 0 in Q (order 1).
    Cyclotomic();
    explicit Cyclotomic(long long v);
    explicit Cyclotomic(const Rational& v);
    Cyclotomic(const Rational& v, long long order);

    // coeffs must have size phi(order); coordinates in the basis
    // 1, z, ..., z^{phi-1}.
    static Cyclotomic from_coeffs(long long order, std::vector<Rational> coeffs);
    static Cyclotomic zeta(long long order);
    static Cyclotomic zeta_power(long long order, long long k);

    long long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;          // lies in Q (all non-constant coords 0)
    Rational rational_value() const;   // throws consistency error otherwise
    bool is_integer() const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator/(const Cyclotomic& o) const;  // throws on zero divisor
    Cyclotomic inverse() const;
    Cyclotomic conjugate() const;      // z -> z^{l-1}

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Evaluate the coefficient polynomial at exp(2*pi*i/order).
    std::complex<double> embed() const;

    // Human-readable form, e.g. "1/2 + 3*z^2" with z the primitive root.
    std::string to_string() const;

    // Raise an order-1 (rational) value to the given order; identity when the
    // orders already match.  Genuinely mixed orders are an error.
    Cyclotomic promoted(long long order) const;

private:
    long long order_;
    std::vector<Rational> c_;

    void reduce_may_trim();
    static void check_compatible(const Cyclotomic& a, const Cyclotomic& b);
};

}  // namespace sra
