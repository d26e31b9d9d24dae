#pragma once

// Exact univariate polynomials over the rationals: arithmetic, composition,
// iteration, Sturm-sequence root isolation, fixed points and affine
// conjugation. Orbit evaluation of deep iterates happens in LogValue space.

#include "gsdyn/bigfloat.hpp"
#include "gsdyn/log_value.hpp"
#include "gsdyn/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gsdyn {

inline constexpr std::size_t kDefaultDegreeCap = 4096;

class Polynomial {
public:
    Polynomial() = default;
    // Coefficients in ascending powers; trailing zeros are stripped.
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);

    static Polynomial identity();
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, std::size_t power);
    // x^2 + c, the quadratic family used throughout.
    static Polynomial quadratic(const Rational& c);
    static Polynomial from_strings(const std::vector<std::string>& coeffs);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    // Zero above the degree.
    Rational coeff(std::size_t power) const;
    const Rational& leading() const;

    Polynomial derivative() const;
    Polynomial derivative(std::size_t order) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const;
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::vector<std::string> to_strings() const;
    std::string to_string() const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

// Euclidean division: a = q b + r with deg r < deg b. b must be nonzero.
struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// p / gcd(p, p'), made monic.
Polynomial squarefree_part(const Polynomial& p);

Rational evaluate(const Polynomial& p, const Rational& x);
double evaluate(const Polynomial& p, double x);
BigFloat evaluate(const Polynomial& p, const BigFloat& x);

// p o q with exact coefficients. Throws DegreeCapError when deg p * deg q
// exceeds degree_cap; use iterate_eval for deep orbits instead.
Polynomial compose(const Polynomial& p, const Polynomial& q, std::size_t degree_cap = kDefaultDegreeCap);
// p_m = p o ... o p (m times); p_0 is the identity.
Polynomial iterate(const Polynomial& p, std::size_t m, std::size_t degree_cap = kDefaultDegreeCap);

// One application of p to a LogValue argument, exact in structure:
// p(y) = lead * y^deg * (1 + rho(y)) once |y| is large.
LogValue evaluate_log(const Polynomial& p, const LogValue& y);

// Orbit value p_m(x). Runs in doubles until |value| reaches switch_threshold,
// then continues in log space.
LogValue iterate_eval(const Polynomial& p, std::size_t m, double x, double switch_threshold = 1e100);

// Isolating interval of a real root: the root lies in (lo, hi), or equals lo
// when lo == hi.
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
};

class SturmSequence {
public:
    // Built on the square-free part of p, so counts are of distinct roots.
    explicit SturmSequence(const Polynomial& p);
    // Distinct real roots in (a, b], a < b.
    int count_in(const Rational& a, const Rational& b) const;
    int count_real() const;
    const Polynomial& base() const { return chain_.front(); }

private:
    int variations_at(const Rational& x) const;
    int variations_at_infinity(int direction) const;
    std::vector<Polynomial> chain_;
};

// Every distinct real root, sorted ascending. Intervals have width at most
// max_width when given.
std::vector<RootInterval> isolate_real_roots(const Polynomial& p,
                                             const std::optional<Rational>& max_width = std::nullopt);
// Shrinks an isolating interval of squarefree_part(p) to width <= width.
RootInterval refine_root(const Polynomial& p, RootInterval interval, const Rational& width);
// Rational upper bound on |root| over all real roots; 0 when there are none.
Rational max_abs_real_root(const Polynomial& p);

enum class FixedPointClass { None, One, TwoOrMore };

struct FixedPointReport {
    // Distinct real fixed points; -1 when p is the identity (every point fixed).
    int count = 0;
    std::vector<RootInterval> points;
    FixedPointClass classification = FixedPointClass::None;
};

// Real roots of p(x) - x, counted exactly with Sturm sequences. deg p >= 1.
FixedPointReport fixed_points(const Polynomial& p);

std::string to_string(FixedPointClass c);

// l(x) = alpha x + beta with alpha != 0.
struct AffineMap {
    Rational alpha{1};
    Rational beta{0};

    static AffineMap identity() { return {}; }
    Rational apply(const Rational& x) const { return alpha * x + beta; }
    double apply(double x) const { return to_double(alpha) * x + to_double(beta); }
    AffineMap inverse() const;
    // (*this) o other
    AffineMap after(const AffineMap& other) const;
    Polynomial as_polynomial() const { return Polynomial({beta, alpha}); }
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// l o p o l^{-1}, exact.
Polynomial conjugate(const Polynomial& p, const AffineMap& l);

struct Conjugation {
    AffineMap map;        // l, with phi = l o p o l^{-1}
    Polynomial conjugate; // phi
    bool exact_monic = true;  // false when the (deg-1)-th root of lead(p) is irrational
    double scale = 1.0;       // float value of the exact root b with b^(deg-1) = lead(p)
};

// Linear conjugation l(x) = b x with b^(deg-1) = lead(p). When that root is
// irrational, b is replaced by a nearby rational, so phi is still exactly
// conjugate to p (same fixed points) but monic only to ~1e-15. Even degree only.
Conjugation conjugate_to_monic(const Polynomial& p);

// Monic representative used by the iterate bounds: for degree 2 the exact
// depressed form x^2 + c (affine l(x) = a x + a1/2), otherwise conjugate_to_monic.
Conjugation normal_form(const Polynomial& p);

// Certified a > 0 with p(x) - x >= a for all real x, when p(x) - x has no real
// roots and tends to +inf; otherwise empty. The bound is exact when the
// minimizer of p(x) - x is rational and exposed by root isolation.
std::optional<Rational> displacement_gap(const Polynomial& p);

// Certified lower bound of inf_{x >= a} p(x) (or of inf over R when `from` is
// empty) for polynomials tending to +inf at +inf (and -inf when global).
Rational minimum_lower_bound(const Polynomial& p, const std::optional<Rational>& from = std::nullopt);

// Real critical points of p (roots of p'), as doubles, sorted.
std::vector<double> critical_points(const Polynomial& p);

}  // namespace gsdyn
