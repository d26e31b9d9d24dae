#pragma once

// Multiplicity vectors H(n,k), the exact factorial inequalities built on them,
// and the Faa di Bruno engine for derivatives of composites.

#include "gsdyn/log_value.hpp"
#include "gsdyn/polynomial.hpp"
#include "gsdyn/rational.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace gsdyn {

// k = (k_1, ..., k_n) with sum k_l = k and sum l k_l = n. m[l - 1] holds k_l.
struct MultiplicityVector {
    int n = 0;
    int k = 0;
    std::vector<int> m;

    int multiplicity(int l) const { return m[static_cast<std::size_t>(l - 1)]; }
    bool valid() const;
    std::string to_string() const;
    friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

// Every element of H(n,k), in descending lexicographic order of (k_1, ..., k_n).
// Empty when n < k. Requires n, k >= 1.
std::vector<MultiplicityVector> enumerate_H(int n, int k);
// Memoized view of enumerate_H, shared across threads.
const std::vector<MultiplicityVector>& enumerate_H_cached(int n, int k);

// n! / (prod k_l! prod (l!)^(k_l)), verified to be an integer.
Integer faa_coefficient(const MultiplicityVector& v);

struct PartitionProductCheck {
    Rational lhs;  // prod l^(l k_l)
    Rational rhs;  // (n^n / n!) prod (l!)^(k_l)
    bool holds = false;
};
PartitionProductCheck partition_product_check(const MultiplicityVector& v);

struct InverseBinomialSum {
    Rational direct;       // sum_k 1 / C(n,k)
    Rational closed_form;  // (n+1)/2^n sum_k 2^k/(k+1)
};
InverseBinomialSum inverse_binomial_sum(int n);

struct PartitionFactorialSum {
    Integer value;        // sum over H(n,k) of prod (l!)^(k_l)
    std::string warning;  // set when n < k (empty sum)
};
PartitionFactorialSum partition_factorial_sum(int n, int k);

// One row of the lemma sweep report.
struct LemmaRow {
    int n = 0;
    int k = 0;
    std::size_t count = 0;
    Integer sum;
    Integer n_factorial;
    bool product_holds = true;  // every element of H(n,k)
    bool sum_holds = true;      // sum <= n!, with equality when k = 1
};
// All (n, k) with 1 <= k <= n <= n_max, ordered by (n, k) regardless of jobs.
std::vector<LemmaRow> lemma_sweep(int n_max, unsigned jobs = 1);

// ---------------------------------------------------------------- engine

// Neumaier-compensated accumulation for doubles; plain addition otherwise.
template <class T>
class Accumulator {
public:
    explicit Accumulator(T zero) : sum_(std::move(zero)) {}
    void add(const T& v) { sum_ += v; }
    T value() const { return sum_; }

private:
    T sum_;
};

template <>
class Accumulator<double> {
public:
    explicit Accumulator(double zero) : sum_(zero) {}
    void add(double v) {
        double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_;
    double comp_ = 0.0;
};

template <class T>
T scale_by_integer(const T& value, const Integer& c);
template <>
inline Rational scale_by_integer(const Rational& value, const Integer& c) { return value * Rational(c); }
template <>
inline double scale_by_integer(const double& value, const Integer& c) { return value * c.get_d(); }
template <>
inline LogValue scale_by_integer(const LogValue& value, const Integer& c) {
    return value * LogValue::from_log(sgn(c), log_abs(c));
}

template <class T>
T power_of(const T& base, int e) {
    T out = base;
    for (int i = 1; i < e; ++i) out *= base;
    return out;
}

// sum_{k=1..n} sum_{H(n,k)} coef * f_at_g[k] * prod g_jet[l]^(k_l), where
// f_at_g[k] = f^(k)(g(x)) and g_jet[l] = g^(l)(x). Both need index n.
template <class T>
T faa_di_bruno_sum(const std::vector<T>& f_at_g, const std::vector<T>& g_jet, int n, const T& zero) {
    Accumulator<T> acc(zero);
    for (int k = 1; k <= n; ++k) {
        const T& fk = f_at_g[static_cast<std::size_t>(k)];
        for (const auto& v : enumerate_H_cached(n, k)) {
            T term = scale_by_integer(fk, faa_coefficient(v));
            for (int l = 1; l <= n; ++l) {
                int e = v.multiplicity(l);
                if (e > 0) term *= power_of(g_jet[static_cast<std::size_t>(l)], e);
            }
            acc.add(term);
        }
    }
    return acc.value();
}

template <class T>
using DerivativeOracle = std::function<T(int order, const T& x)>;

// (f o g)^(n)(x) through the H(n,k) expansion. Exact for Rational.
template <class T>
T composite_derivative(const DerivativeOracle<T>& f, const DerivativeOracle<T>& g, int n, const T& x, const T& zero) {
    if (n < 1) throw std::invalid_argument("composite_derivative requires n >= 1");
    std::vector<T> g_jet;
    for (int l = 0; l <= n; ++l) g_jet.push_back(g(l, x));
    std::vector<T> f_at_g;
    for (int k = 0; k <= n; ++k) f_at_g.push_back(f(k, g_jet[0]));
    return faa_di_bruno_sum(f_at_g, g_jet, n, zero);
}

Rational composite_derivative(const Polynomial& f, const Polynomial& g, int n, const Rational& x);
double composite_derivative(const DerivativeOracle<double>& f, const DerivativeOracle<double>& g, int n, double x);

// Jets: entry i is the i-th derivative at a point.
using LogJet = std::vector<LogValue>;

struct ComposedJet {
    LogJet value;     // (f o g)^(i)(x), i = 0..N
    LogJet envelope;  // the same sums with every term replaced by its absolute value
};

// Bell-polynomial recurrence B_{n,k} = sum_i C(n-1,i-1) g_i B_{n-i,k-1};
// f_at_g[k] = f^(k)(g(x)), g.value[i] = g^(i)(x), all of length N+1. The
// envelope uses |f^(k)| and g.envelope, so it bounds |value| from above.
ComposedJet compose_jet(const LogJet& f_at_g, const ComposedJet& g);
std::vector<double> compose_jet(const std::vector<double>& f_at_g, const std::vector<double>& g_jet);

// Derivatives p^(k)(y), k = 0..N, with y in log space.
class PolynomialJet {
public:
    PolynomialJet(const Polynomial& p, int order);
    LogJet at(const LogValue& y) const;
    int order() const { return order_; }

private:
    int order_;
    std::vector<Polynomial> derivs_;
};

// Jets of the iterates psi_0, ..., psi_m at x up to order N, psi_0 = identity.
std::vector<ComposedJet> iterate_jets(const Polynomial& psi, int m_max, int order, double x);

}  // namespace gsdyn
