#include "gsdyn/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsdyn {

namespace {

long result_precision(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat::BigFloat(long precision_bits) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, long precision_bits) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, long precision_bits) {
    mpfr_init2(value_, precision_bits);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

double BigFloat::log_abs() const {
    if (mpfr_zero_p(value_)) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

std::string BigFloat::to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

#define GSDYN_BIGFLOAT_BINOP(op, fn)                         \
    BigFloat& BigFloat::operator op(const BigFloat& o) {     \
        long prec = result_precision(*this, o);              \
        if (prec != precision()) mpfr_prec_round(value_, prec, MPFR_RNDN); \
        fn(value_, value_, o.value_, MPFR_RNDN);             \
        return *this;                                        \
    }

GSDYN_BIGFLOAT_BINOP(+=, mpfr_add)
GSDYN_BIGFLOAT_BINOP(-=, mpfr_sub)
GSDYN_BIGFLOAT_BINOP(*=, mpfr_mul)
GSDYN_BIGFLOAT_BINOP(/=, mpfr_div)

#undef GSDYN_BIGFLOAT_BINOP

BigFloat BigFloat::operator-() const {
    BigFloat out(*this);
    mpfr_neg(out.value_, out.value_, MPFR_RNDN);
    return out;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_sqrt(out.value_, x.value_, MPFR_RNDN);
    return out;
}

BigFloat log(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_log(out.value_, x.value_, MPFR_RNDN);
    return out;
}

BigFloat abs(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_abs(out.value_, x.value_, MPFR_RNDN);
    return out;
}

BigFloat pow(const BigFloat& x, unsigned long exponent) {
    BigFloat out(x.precision());
    mpfr_pow_ui(out.value_, x.value_, exponent, MPFR_RNDN);
    return out;
}

}  // namespace gsdyn
