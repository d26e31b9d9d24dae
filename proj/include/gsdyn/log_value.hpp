#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace gsdyn {

// A real number stored as sign * exp(log_abs). Products and powers stay exact in
// the exponent field, so values far outside double range (|psi_m(x)| grows like
// b^(2^k)) remain representable. Zero is {0, -inf}.
class LogValue {
public:
    constexpr LogValue() = default;

    static LogValue zero() { return LogValue(); }
    static LogValue one() { return LogValue(1, 0.0); }
    static LogValue from_double(double value);
    // sign in {-1, 0, +1}; a zero sign or -inf log forces the canonical zero.
    static LogValue from_log(int sign, double log_abs);

    int sign() const { return sign_; }
    double log_abs() const { return log_abs_; }
    bool is_zero() const { return sign_ == 0; }

    // Exponentiates; overflows to +-inf and underflows to 0 like ordinary doubles.
    double to_double() const;

    LogValue abs() const { return from_log(sign_ == 0 ? 0 : 1, log_abs_); }
    LogValue operator-() const { return from_log(-sign_, log_abs_); }

    LogValue& operator*=(const LogValue& other);
    LogValue& operator/=(const LogValue& other);
    LogValue& operator+=(const LogValue& other);
    LogValue& operator-=(const LogValue& other) { return *this += -other; }

    friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
    friend LogValue operator/(LogValue a, const LogValue& b) { return a /= b; }
    friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
    friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }

    LogValue pow(double exponent) const;
    LogValue pow(int exponent) const;

    // Total order on the represented reals.
    friend bool operator<(const LogValue& a, const LogValue& b);
    friend bool operator==(const LogValue& a, const LogValue& b) {
        return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_abs_ == b.log_abs_);
    }

    std::string to_string() const;

private:
    constexpr LogValue(int sign, double log_abs) : sign_(sign), log_abs_(log_abs) {}

    int sign_ = 0;
    double log_abs_ = -std::numeric_limits<double>::infinity();
};

// |a| <= |b| compared in log space.
inline bool abs_le(const LogValue& a, const LogValue& b) {
    return a.is_zero() || (!b.is_zero() && a.log_abs() <= b.log_abs());
}

}  // namespace gsdyn
