#pragma once

// Weight functions omega, their scalings sigma(t) = omega(t^(1/a)), and the
// Young conjugate phi*(s) = sup_{t>=0} (s t - sigma(e^t)).

#include <string>
#include <vector>

namespace gsdyn {

enum class WeightKind { Gevrey, LogPower };

class WeightSpec {
public:
    // omega(t) = t^(1/d), d > 1.
    static WeightSpec gevrey(double d, double scale_a = 1.0);
    // omega(t) = max(0, log(t)^p), p > 1.
    static WeightSpec log_power(double p, double scale_a = 1.0);

    WeightKind kind() const { return kind_; }
    // d for Gevrey, p for LogPower.
    double parameter() const { return parameter_; }
    double scale_a() const { return scale_a_; }

    // The same base weight with sigma(t) = omega(t^(1/a)).
    WeightSpec scaled(double scale_a) const;
    // Gevrey(d) scaled by a is Gevrey(d a); LogPower has no such collapse.
    double effective_gevrey_index() const;

    friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

private:
    WeightSpec(WeightKind kind, double parameter, double scale_a)
        : kind_(kind), parameter_(parameter), scale_a_(scale_a) {}

    WeightKind kind_;
    double parameter_;
    double scale_a_;
};

std::string describe(const WeightSpec& w);

// sigma(t) = omega(t^(1/a)). Throws DomainError for negative or non-finite t.
double eval_weight(const WeightSpec& w, double t);

// t -> sigma(e^t) and its derivative, for t >= 0.
double phi(const WeightSpec& w, double t);
double phi_derivative(const WeightSpec& w, double t);

enum class ConjugateMode { Automatic, ClosedForm, Numeric };

// phi*(s) = sup{ s t - phi(t) : t >= 0 }. The closed forms are
//   Gevrey(d), sd >= 1:  s d log(s d / e);  sd < 1: -1
//   LogPower(p):         (1 - 1/p) s t*,  t* = (s/p)^(1/(p-1))
// with (d, s) replaced by (d, a s) under scaling. The numeric mode runs a
// golden-section search on the concave objective.
double young_conjugate(const WeightSpec& w, double s, ConjugateMode mode = ConjugateMode::Automatic);

struct ConditionVerdict {
    std::string name;
    bool consistent = false;  // "consistent with" on the sampled grid; never a proof
    double witness = 0.0;     // empirical constant (K, C, ratio, integral value, ...)
    double secondary = 0.0;   // tail bound, min second difference, ...
    std::string detail;
};

struct ConditionReport {
    ConditionVerdict alpha;          // omega(2t) <= K (omega(t) + 1)
    ConditionVerdict beta;           // int omega(t)/(1+t^2) dt < inf
    ConditionVerdict gamma;          // log(1+t^2) = o(omega(t))
    ConditionVerdict delta;          // t -> omega(e^t) convex
    ConditionVerdict epsilon;        // int_1^inf omega(yt)/t^2 dt <= C omega(y) + C
    ConditionVerdict subadditivity;  // omega(a+b) <= omega(a) + omega(b)

    std::vector<const ConditionVerdict*> all() const {
        return {&alpha, &beta, &gamma, &delta, &epsilon, &subadditivity};
    }
};

// Samples the weight conditions on grids reaching t_max. Requires t_max > 1 and
// samples >= 10.
ConditionReport check_weight_conditions(const WeightSpec& w, double t_max, int samples);

}  // namespace gsdyn
