#include "gsdyn/rational.hpp"

#include "gsdyn/errors.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gsdyn {

namespace {

constexpr std::size_t kFactorialCap = 10000;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

Rational parse_decimal(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (is_digit(c)) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw ParseError("malformed number: '" + std::string(text) + "'");
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        std::string exp_text(text.substr(pos));
        if (exp_text.empty()) throw ParseError("malformed exponent: '" + std::string(text) + "'");
        std::size_t used = 0;
        try {
            exponent = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed exponent: '" + std::string(text) + "'");
        }
        if (used != exp_text.size()) throw ParseError("malformed exponent: '" + std::string(text) + "'");
        pos = text.size();
    }
    if (pos != text.size()) throw ParseError("trailing characters in number: '" + std::string(text) + "'");
    Integer mantissa(digits, 10);
    long shift = exponent - scale;
    Rational result(mantissa);
    if (shift > 0) {
        result *= Rational(ipow(Integer(10), static_cast<std::size_t>(shift)));
    } else if (shift < 0) {
        result /= Rational(ipow(Integer(10), static_cast<std::size_t>(-shift)));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational out = num / den;
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& value) {
    Rational v(value);
    v.canonicalize();
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_str();
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("cannot convert non-finite double to rational");
    Rational out;
    mpq_set_d(out.get_mpq_t(), value);
    return out;
}

double to_double(const Rational& value) { return value.get_d(); }

const Integer& factorial(std::size_t n) {
    static std::mutex mutex;
    static std::vector<Integer> table{Integer(1)};
    if (n > kFactorialCap) throw std::out_of_range("factorial argument above cap");
    std::lock_guard<std::mutex> lock(mutex);
    if (table.capacity() < kFactorialCap + 1) table.reserve(kFactorialCap + 1);
    while (table.size() <= n) {
        table.push_back(table.back() * static_cast<unsigned long>(table.size()));
    }
    // Elements are never moved after the reserve above, so the reference stays valid.
    return table[n];
}

std::size_t factorial_cap() { return kFactorialCap; }

Integer binomial(std::size_t n, std::size_t k) {
    Integer out;
    if (k > n) return Integer(0);
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer ipow(const Integer& base, std::size_t exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational ipow(const Rational& base, std::size_t exponent) {
    Rational out(ipow(base.get_num(), exponent), ipow(base.get_den(), exponent));
    out.canonicalize();
    return out;
}

double log_abs(const Integer& value) {
    if (value == 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const Rational& value) {
    if (value == 0) return -std::numeric_limits<double>::infinity();
    return log_abs(value.get_num()) - log_abs(value.get_den());
}

}  // namespace gsdyn
