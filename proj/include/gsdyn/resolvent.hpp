#pragma once

// Neumann series of the composition operator, mu R_mu f = sum_m f o psi_m / mu^m,
// pointwise and at seminorm level, plus the backward orbit of x^2 + 1/4 and
// the growth comparison behind the non-containment results.

#include "gsdyn/bigfloat.hpp"
#include "gsdyn/dynamics.hpp"
#include "gsdyn/polynomial.hpp"
#include "gsdyn/seminorms.hpp"
#include "gsdyn/weights.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gsdyn {

using Complex = std::complex<double>;

enum class TailKind { DoublyExponential, Geometric, None };
std::string to_string(TailKind k);

struct TailCertificate {
    TailKind kind = TailKind::None;
    int m0 = 0;  // iterate-bound certificate (b = 2) when kind is DoublyExponential
    double b = 2.0;
    double mu_abs = 0.0;
    double tail_constant = 0.0;       // C' = sup (1+|y|)|f(y)|
    std::vector<double> bound_terms;  // bound on |f(psi_m(x)) / mu^(m+1)|, m = 0..terms_used-1
    double tail_bound = 0.0;          // bound on the sum over m >= terms_used (inf if none)
};

struct NeumannResult {
    Complex value;
    int terms_used = 0;
    TailCertificate cert;
    bool certified = false;
    std::string warning;
    double residual = 0.0;  // |mu g(x) - g(psi(x)) - f(x)|
    bool identity_ok = false;  // residual <= 10 tol
};

// Fixes the number of terms once (the tail bound is uniform in x).
class NeumannSeries {
public:
    NeumannSeries(SmoothFunction f, Polynomial psi, Complex mu, double tol, int max_terms = 64);

    Complex partial_sum(double x) const;
    // Single term f(psi_m(x)) / mu^(m+1) for every m < terms_used.
    std::vector<Complex> terms(double x) const;
    NeumannResult apply(double x) const;

    int terms_used() const { return terms_used_; }
    const TailCertificate& certificate() const { return cert_; }
    bool certified() const { return cert_.kind != TailKind::None; }
    const std::string& warning() const { return warning_; }

private:
    SmoothFunction f_;
    Polynomial psi_;
    Complex mu_;
    double tol_;
    int terms_used_ = 0;
    TailCertificate cert_;
    std::string warning_;
};

NeumannResult neumann_apply(const SmoothFunction& f, const Polynomial& psi, Complex mu, double x, double tol);

struct NeumannSeminormSeries {
    std::vector<double> log_terms;     // log ||f o psi_m||_{sigma,lambda} - m log|mu|
    std::vector<double> partial_sums;  // sum_{m <= M} of the terms (may be inf)
    int m0 = 0;                        // b = 2 certificate
    double b = 2.0;
    int window_begin = 0;  // tail window used for the shape fits
    int window_end = 0;
    // log(-log I_m) against 2^(m-m0) and kappa_f times the slope of log min|psi_m|.
    double shape_slope = 0.0;
    double expected_shape_slope = 0.0;
    bool shape_ok = false;
    // log I_m against -2^(m-m0) log b; 1 means decay exactly at the certificate rate.
    double literal_slope = 0.0;
    bool converged = false;
    std::string verdict;
};

// Requires psi without fixed points. omega, when given, must satisfy
// relative_scaling(omega, sigma) > 2.
NeumannSeminormSeries neumann_seminorm_series(const SmoothFunction& f, const Polynomial& psi, double mu_abs,
                                              const WeightSpec& sigma, const SeminormParams& p, int m_max,
                                              const std::optional<WeightSpec>& omega = std::nullopt,
                                              double tol = 1e-12, unsigned jobs = 1);

// x_{n+1} = sqrt(x_n - 1/4), y_k = 2 x_k.
struct BackwardOrbit {
    std::vector<BigFloat> x;
    std::vector<BigFloat> y;
    long precision_bits = kDefaultPrecisionBits;
};

BackwardOrbit backward_orbit(const Rational& x0, int n, long precision_bits = kDefaultPrecisionBits);

struct BackwardOrbitCheck {
    double max_relative_defect = 0.0;  // |x_{n+1}^2 + 1/4 - x_n| / x_n
    double max_y_defect = 0.0;         // |y_{n+1}^2 - (2 y_n - 1)| / y_n
    bool decreasing = false;
    BigFloat last_minus_half;
};
BackwardOrbitCheck check_backward_orbit(const BackwardOrbit& orbit);

// y_{n+1} = sqrt(2 y_n - 1) against ((n+2)/(n+1))^2.
struct SqrtRecurrenceReport {
    bool holds = false;
    int n_max = 0;
    double min_slack = 0.0;  // min over 1 <= n <= n_max of y_n - ((n+2)/(n+1))^2
    int min_slack_n = 0;
    double min_relative_slack = 0.0;  // slack / (((n+2)/(n+1))^2 - 1)
    int min_relative_slack_n = 0;
    double slack_at_zero = 0.0;  // y_0 - 4
    int first_violation = -1;
};
SqrtRecurrenceReport sqrt_recurrence_check(const Rational& y0, int n_max, long precision_bits = 256);

struct ChainRuleProduct {
    int n = 0;
    BigFloat product;  // prod_{k=1..n} y_k
    BigFloat direct;   // (psi_n)'(x_n) from the symbolic iterate
    double relative_difference = 0.0;
};
// Requires psi_n of degree <= the iterate cap (n <= 12).
ChainRuleProduct chain_rule_product(const BackwardOrbit& orbit, int n);

struct TelescopingReport {
    bool holds = false;
    double min_log_slack = 0.0;  // min over n of log prod y_k - 2 log((n+2)/2)
    int min_n = 0;
};
TelescopingReport telescoping_product_check(const BackwardOrbit& orbit, int n_max);

struct DivergenceParams {
    double d = 1.5;
    std::optional<double> d_prime;  // part (2) when present
    double mu_abs = 2.0;
    long n_max = 10000;
};

struct DivergenceReport {
    DivergenceParams params;
    int part = 1;
    std::string status;  // "certified", "not certified within n_max", "inconclusive, outside theorem hypothesis"
    // First n with log lhs - log rhs > log C, for C = 1, 10, 1e6.
    std::map<std::string, std::optional<long>> n_star;
    bool stays_above = false;  // no return below C = 1e6 after n_star up to n_max
    double log_gap_at_n_max = 0.0;
    // log lhs / (n log n) at 1e3 and 1e4, the n log n coefficient of a
    // least-squares fit of log lhs on {n log n, n, 1} over [1e3, 1e4], and the
    // same for log rhs.
    std::map<std::string, double> slopes;
    // Beyond n_max: first n (up to 1e300) with log lhs - log rhs > log 1e6.
    std::optional<double> extended_crossing;
};

double divergence_log_lhs(const DivergenceParams& p, int part, double n);
double divergence_log_rhs(const DivergenceParams& p, int part, double n);

// Part (1): 1 < d < 2, or d = 2 with 1 < mu < e^2/4. Part (2): d, d' > 1; d' >= d + 2
// yields an inconclusive report. mu_abs > 1 throughout.
DivergenceReport divergence_certificate(const DivergenceParams& p);

}  // namespace gsdyn
