#pragma once

// Smooth test functions with exact derivative oracles and truncated
// Gelfand-Shilov seminorms, evaluated in log space.

#include "gsdyn/faadibruno.hpp"
#include "gsdyn/log_value.hpp"
#include "gsdyn/polynomial.hpp"
#include "gsdyn/weights.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gsdyn {

class SmoothFunction {
public:
    // f^(n)(y) for y anywhere on the real line, including far outside double range.
    using LogOracle = std::function<LogValue(int n, const LogValue& y)>;
    // Upper bound on log|f(x)|.
    using DecayLog = std::function<double(double x)>;

    SmoothFunction(std::string name, LogOracle oracle, DecayLog decay_log, double decay_exponent,
                   double tail_constant);

    const std::string& name() const { return name_; }
    double deriv(int n, double x) const { return log_deriv(n, LogValue::from_double(x)).to_double(); }
    LogValue log_deriv(int n, const LogValue& y) const { return oracle_(n, y); }
    // f^(0..order)(y).
    LogJet jet(const LogValue& y, int order) const;
    double decay_log(double x) const { return decay_(x); }
    // kappa with log|f(y)| <= -c |y|^kappa for large |y| (2 for Gaussians, +inf for 0).
    double decay_exponent() const { return decay_exponent_; }
    // sup_y (1 + |y|) |f(y)|.
    double tail_constant() const { return tail_constant_; }
    bool is_zero() const { return tail_constant_ == 0.0; }

    SmoothFunction scaled(double c) const;
    friend SmoothFunction operator+(const SmoothFunction& f, const SmoothFunction& g);

private:
    std::string name_;
    LogOracle oracle_;
    DecayLog decay_;
    double decay_exponent_;
    double tail_constant_;
};

// f(x) = exp(-(x/scale)^2), f^(n)(x) = (-1/scale)^n H_n(x/scale) f(x).
SmoothFunction hermite_gaussian_oracle(double scale = 1.0);
SmoothFunction zero_function();

// Physicists' Hermite polynomial H_n with exact integer coefficients (cached).
const Polynomial& hermite_polynomial(int n);

struct GridSpec {
    double radius = 20.0;
    int points = 401;                // Chebyshev-Lobatto nodes on [-radius, radius]
    std::vector<double> extra;       // appended points (critical points, ...)

    // Sorted, duplicate-free.
    std::vector<double> nodes() const;
};

struct SeminormParams {
    double lambda = 1.0;
    int n_max = 40;
    int q_max = 40;
    GridSpec grid;

    void validate() const;
};

struct SeminormResult {
    double log_value = -std::numeric_limits<double>::infinity();
    double value = 0.0;  // exp(log_value); may overflow to inf
    double argmax_x = 0.0;
    int argmax_n = 0;
    int argmax_q = 0;
    std::size_t argmax_index = 0;
    // Max attained at n = n_max, q = q_max or the outermost grid node: the
    // reported value is then only a lower bound of the untruncated seminorm.
    bool boundary = false;
    std::string truncation_note;
};

// sup over grid x, n <= n_max, q <= q_max of
//   (1+|x|)^q |f^(n)(x)| exp(-lambda phi*((n+q)/lambda)).
SeminormResult gs_seminorm(const SmoothFunction& f, const WeightSpec& w, const SeminormParams& p, unsigned jobs = 1);

// The same sup for f o psi_m.
SeminormResult composite_seminorm(const SmoothFunction& f, const Polynomial& psi, int m, const WeightSpec& w,
                                  const SeminormParams& p, unsigned jobs = 1);

// composite_seminorm for m = 0..m_max, sharing the iterate jets across m.
std::vector<SeminormResult> composite_seminorm_sweep(const SmoothFunction& f, const Polynomial& psi, int m_max,
                                                     const WeightSpec& w, const SeminormParams& p, unsigned jobs = 1);

// log of C exp(rho phi*_sigma((n+q)/rho)): the upper envelope of the tail estimate
// for comparison against measured (n, q) slices.
double envelope_log(const WeightSpec& sigma, double rho, int n, int q, double log_C);

}  // namespace gsdyn
