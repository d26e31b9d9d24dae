#include "doctest.h"

#include "gsdyn/bigfloat.hpp"
#include "gsdyn/errors.hpp"
#include "gsdyn/log_value.hpp"
#include "gsdyn/quadrature.hpp"
#include "gsdyn/rational.hpp"

#include <cmath>

using namespace gsdyn;

TEST_CASE("parse_rational reads fractions and exact decimals") {
    CHECK(parse_rational("1/4") == Rational(1, 4));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("0.3") == Rational(3, 10));
    CHECK(parse_rational("-1.25e-2") == Rational(-1, 80));
    CHECK(parse_rational("2e3") == Rational(2000));
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK(to_string(Rational(6, 4)) == "3/2");
}

TEST_CASE("factorials and binomials") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(10, 3) == 120);
    CHECK(ipow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(log_abs(factorial(200)) == doctest::Approx(std::lgamma(201.0)).epsilon(1e-12));
    CHECK_THROWS(factorial(factorial_cap() + 1));
}

TEST_CASE("LogValue arithmetic matches doubles in range") {
    LogValue a = LogValue::from_double(3.5);
    LogValue b = LogValue::from_double(-1.25);
    CHECK((a * b).to_double() == doctest::Approx(-4.375));
    CHECK((a + b).to_double() == doctest::Approx(2.25));
    CHECK((b + a).to_double() == doctest::Approx(2.25));
    CHECK((a - a).is_zero());
    CHECK((a / b).to_double() == doctest::Approx(-2.8));
    CHECK(a.pow(3).to_double() == doctest::Approx(42.875));
    CHECK(b < a);
    CHECK(LogValue::zero() < a);
    CHECK(b < LogValue::zero());
}

TEST_CASE("LogValue survives far outside double range") {
    LogValue huge = LogValue::from_log(1, 1e6);
    LogValue sum = huge + huge;
    CHECK(sum.log_abs() == doctest::Approx(1e6 + std::log(2.0)));
    CHECK((huge * huge).log_abs() == doctest::Approx(2e6));
    CHECK(std::isinf(huge.to_double()));
}

TEST_CASE("BigFloat keeps 128-bit precision") {
    BigFloat two(2.0, 128);
    BigFloat r = sqrt(two);
    BigFloat back = r * r - two;
    CHECK(std::fabs(back.to_double()) < 1e-36);
    BigFloat third(Rational(1, 3), 256);
    CHECK(third.precision() == 256);
    CHECK((third * BigFloat(3.0, 256)).to_double() == doctest::Approx(1.0));
}

TEST_CASE("quadrature helpers") {
    auto q = adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, 5.0, 1e-12);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-10));
    double t = golden_section_maximize([](double x) { return -(x - 1.7) * (x - 1.7); }, 0.0, 4.0);
    CHECK(t == doctest::Approx(1.7).epsilon(1e-7));
}
