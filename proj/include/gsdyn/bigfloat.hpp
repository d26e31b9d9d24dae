#pragma once

// Minimal RAII wrapper over an MPFR number. Every value carries its own
// precision; binary operations round to the larger of the operand precisions.

#include "gsdyn/rational.hpp"

#include <mpfr.h>

#include <string>

namespace gsdyn {

inline constexpr long kDefaultPrecisionBits = 128;

class BigFloat {
public:
    explicit BigFloat(long precision_bits = kDefaultPrecisionBits);
    BigFloat(double value, long precision_bits);
    BigFloat(const Rational& value, long precision_bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    // Natural log of |x| as a double, valid far beyond double range.
    double log_abs() const;
    int sign() const { return mpfr_sgn(value_); }
    std::string to_string(int digits = 40) const;

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    BigFloat operator-() const;

    friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

    friend BigFloat sqrt(const BigFloat& x);
    friend BigFloat log(const BigFloat& x);
    friend BigFloat abs(const BigFloat& x);
    friend BigFloat pow(const BigFloat& x, unsigned long exponent);

    mpfr_srcptr raw() const { return value_; }
    mpfr_ptr raw() { return value_; }

private:
    mpfr_t value_;
};

}  // namespace gsdyn
