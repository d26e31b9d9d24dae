#include "gsdyn/log_value.hpp"

#include <cstdio>
#include <utility>

namespace gsdyn {

LogValue LogValue::from_double(double value) {
    if (value == 0.0) return LogValue();
    return LogValue(value > 0 ? 1 : -1, std::log(std::fabs(value)));
}

LogValue LogValue::from_log(int sign, double log_abs) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return LogValue();
    return LogValue(sign > 0 ? 1 : -1, log_abs);
}

double LogValue::to_double() const {
    if (sign_ == 0) return 0.0;
    return static_cast<double>(sign_) * std::exp(log_abs_);
}

LogValue& LogValue::operator*=(const LogValue& other) {
    if (sign_ == 0 || other.sign_ == 0) {
        *this = LogValue();
        return *this;
    }
    sign_ *= other.sign_;
    log_abs_ += other.log_abs_;
    return *this;
}

LogValue& LogValue::operator/=(const LogValue& other) {
    if (other.sign_ == 0) {
        // Division by zero yields +-inf magnitude, mirroring IEEE semantics.
        if (sign_ == 0) {
            log_abs_ = std::numeric_limits<double>::quiet_NaN();
            sign_ = 1;
        } else {
            log_abs_ = std::numeric_limits<double>::infinity();
        }
        return *this;
    }
    if (sign_ == 0) return *this;
    sign_ *= other.sign_;
    log_abs_ -= other.log_abs_;
    return *this;
}

LogValue& LogValue::operator+=(const LogValue& other) {
    if (other.sign_ == 0) return *this;
    if (sign_ == 0) {
        *this = other;
        return *this;
    }
    const LogValue* big = this;
    const LogValue* small = &other;
    if (small->log_abs_ > big->log_abs_) std::swap(big, small);
    double delta = small->log_abs_ - big->log_abs_;
    int big_sign = big->sign_;
    double big_log = big->log_abs_;
    if (std::isinf(big_log)) {
        // inf + finite stays inf; inf - inf is undefined.
        if (std::isinf(small->log_abs_) && small->sign_ != big_sign) {
            sign_ = 1;
            log_abs_ = std::numeric_limits<double>::quiet_NaN();
        } else {
            sign_ = big_sign;
            log_abs_ = big_log;
        }
        return *this;
    }
    if (big->sign_ == small->sign_) {
        log_abs_ = big_log + std::log1p(std::exp(delta));
        sign_ = big_sign;
    } else {
        if (delta == 0.0) {
            *this = LogValue();
            return *this;
        }
        log_abs_ = big_log + std::log1p(-std::exp(delta));
        sign_ = big_sign;
    }
    return *this;
}

LogValue LogValue::pow(double exponent) const {
    if (sign_ == 0) return exponent == 0.0 ? one() : LogValue();
    if (sign_ < 0) {
        double rounded = std::round(exponent);
        if (rounded != exponent) return LogValue(1, std::numeric_limits<double>::quiet_NaN());
        return pow(static_cast<int>(rounded));
    }
    return LogValue(1, log_abs_ * exponent);
}

LogValue LogValue::pow(int exponent) const {
    if (exponent == 0) return one();
    if (sign_ == 0) return LogValue();
    int s = (sign_ < 0 && (exponent % 2 != 0)) ? -1 : 1;
    return LogValue(s, log_abs_ * static_cast<double>(exponent));
}

bool operator<(const LogValue& a, const LogValue& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_abs_ < b.log_abs_ : a.log_abs_ > b.log_abs_;
}

std::string LogValue::to_string() const {
    if (sign_ == 0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s exp(%.17g)", sign_ > 0 ? "+" : "-", log_abs_);
    return buf;
}

}  // namespace gsdyn
