#include "gsdyn/weights.hpp"

#include "gsdyn/errors.hpp"
#include "gsdyn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gsdyn {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    double llo = std::log(lo);
    double lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        double u = llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(std::exp(u));
    }
    out.back() = hi;
    return out;
}

// Local growth exponent d log(omega) / d log(t) at t, by a one-sided difference
// over a factor e. Used for power-law tail bounds of integrals.
double local_log_slope(const WeightSpec& w, double t) {
    double hi = eval_weight(w, t);
    double lo = eval_weight(w, t / std::exp(1.0));
    if (hi <= 0.0 || lo <= 0.0) return 1.0;
    return std::log(hi) - std::log(lo);
}

}  // namespace

WeightSpec WeightSpec::gevrey(double d, double scale_a) {
    if (!std::isfinite(d) || d <= 1.0) throw DomainError("Gevrey weight requires d > 1");
    if (!std::isfinite(scale_a) || scale_a < 1.0) throw DomainError("weight scaling requires a >= 1");
    return WeightSpec(WeightKind::Gevrey, d, scale_a);
}

WeightSpec WeightSpec::log_power(double p, double scale_a) {
    if (!std::isfinite(p) || p <= 1.0) throw DomainError("log-power weight requires p > 1");
    if (!std::isfinite(scale_a) || scale_a < 1.0) throw DomainError("weight scaling requires a >= 1");
    return WeightSpec(WeightKind::LogPower, p, scale_a);
}

WeightSpec WeightSpec::scaled(double scale_a) const {
    return kind_ == WeightKind::Gevrey ? gevrey(parameter_, scale_a) : log_power(parameter_, scale_a);
}

double WeightSpec::effective_gevrey_index() const {
    if (kind_ != WeightKind::Gevrey) throw UnsupportedError("effective Gevrey index requested for a log-power weight");
    return parameter_ * scale_a_;
}

std::string describe(const WeightSpec& w) {
    std::string base = w.kind() == WeightKind::Gevrey ? "gevrey(d=" + format_double(w.parameter()) + ")"
                                                      : "logpower(p=" + format_double(w.parameter()) + ")";
    if (w.scale_a() != 1.0) base += " scaled a=" + format_double(w.scale_a());
    return base;
}

double eval_weight(const WeightSpec& w, double t) {
    if (!std::isfinite(t) || t < 0.0) throw DomainError("weight argument must be finite and >= 0");
    if (w.kind() == WeightKind::Gevrey) {
        return std::pow(t, 1.0 / (w.parameter() * w.scale_a()));
    }
    if (t <= 1.0) return 0.0;
    return std::pow(std::log(t) / w.scale_a(), w.parameter());
}

double phi(const WeightSpec& w, double t) {
    if (w.kind() == WeightKind::Gevrey) return std::exp(t / (w.parameter() * w.scale_a()));
    if (t <= 0.0) return 0.0;
    return std::pow(t / w.scale_a(), w.parameter());
}

double phi_derivative(const WeightSpec& w, double t) {
    if (w.kind() == WeightKind::Gevrey) {
        double D = w.parameter() * w.scale_a();
        return std::exp(t / D) / D;
    }
    if (t <= 0.0) return 0.0;
    double p = w.parameter();
    return p / w.scale_a() * std::pow(t / w.scale_a(), p - 1.0);
}

namespace {

double conjugate_closed_form(const WeightSpec& w, double s) {
    if (w.kind() == WeightKind::Gevrey) {
        double sd = s * w.parameter() * w.scale_a();
        if (sd < 1.0) return -1.0;
        return sd * (std::log(sd) - 1.0);
    }
    double p = w.parameter();
    double as = w.scale_a() * s;
    if (as == 0.0) return 0.0;
    double t_star = std::pow(as / p, 1.0 / (p - 1.0));
    return (1.0 - 1.0 / p) * as * t_star;
}

double conjugate_numeric(const WeightSpec& w, double s) {
    auto objective = [&](double t) { return s * t - phi(w, t); };
    if (s - phi_derivative(w, 0.0) <= 0.0) return objective(0.0);
    double lo = 0.0;
    double hi = 1.0;
    while (s - phi_derivative(w, hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi) || hi > 1e300)
            throw NumericalError("Young conjugate: objective unbounded, maximizer not bracketed");
    }
    double t_star = golden_section_maximize(objective, lo, hi);
    // Refine the stationary point by bisection on the derivative sign.
    double a = lo;
    double b = hi;
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if (s - phi_derivative(w, m) > 0.0) a = m; else b = m;
    }
    double refined = 0.5 * (a + b);
    return std::max(objective(t_star), objective(refined));
}

}  // namespace

double young_conjugate(const WeightSpec& w, double s, ConjugateMode mode) {
    if (!std::isfinite(s) || s < 0.0) throw DomainError("Young conjugate requires finite s >= 0");
    switch (mode) {
        case ConjugateMode::Numeric:
            return conjugate_numeric(w, s);
        case ConjugateMode::ClosedForm:
        case ConjugateMode::Automatic:
            break;
    }
    return conjugate_closed_form(w, s);
}

ConditionReport check_weight_conditions(const WeightSpec& w, double t_max, int samples) {
    if (!std::isfinite(t_max) || t_max <= 1.0) throw DomainError("check_weight_conditions requires t_max > 1");
    if (samples < 10) throw DomainError("check_weight_conditions requires samples >= 10");
    ConditionReport report;
    const double t_min = std::min(1e-3, 1.0 / t_max);

    {
        // (alpha): K = max omega(2t) / (omega(t) + 1) for 2t <= t_max.
        auto ts = log_grid(t_min, t_max / 2.0, samples);
        ts.insert(ts.begin(), 0.0);
        double K = 1.0;
        for (double t : ts) K = std::max(K, eval_weight(w, 2.0 * t) / (eval_weight(w, t) + 1.0));
        double tail = eval_weight(w, t_max) / (eval_weight(w, t_max / 2.0) + 1.0);
        double earlier = eval_weight(w, t_max / 10.0) / (eval_weight(w, t_max / 20.0) + 1.0);
        auto& v = report.alpha;
        v.name = "alpha";
        v.witness = K;
        v.secondary = tail;
        v.consistent = tail <= 1.05 * earlier + 1e-12;
        v.detail = "empirical K=" + format_double(K) + " on grid; ratio growth over last decade " +
                   format_double(tail / std::max(earlier, 1e-300));
    }
    {
        // (beta): integral truncated at t_max plus a power-law tail bound
        // omega(t) <= omega(t_max) (t/t_max)^g, g the local log-slope at t_max.
        // t = s^2 on [0, 1] removes the t^(1/d) cusp at the origin.
        auto head = adaptive_simpson(
            [&](double s) {
                double t = s * s;
                return 2.0 * s * eval_weight(w, t) / (1.0 + t * t);
            },
            0.0, 1.0, 1e-12);
        auto body = adaptive_simpson(
            [&](double u) {
                double t = std::exp(u);
                return eval_weight(w, t) * t / (1.0 + t * t);
            },
            0.0, std::log(t_max), 1e-10);
        double g = local_log_slope(w, t_max);
        double tail = g < 1.0 ? eval_weight(w, t_max) / ((1.0 - g) * t_max) : std::numeric_limits<double>::infinity();
        auto& v = report.beta;
        v.name = "beta";
        v.witness = head.value + body.value;
        v.secondary = tail;
        v.consistent = std::isfinite(tail) && head.converged && body.converged;
        v.detail = "truncated integral " + format_double(v.witness) + " + tail <= " + format_double(tail) +
                   " (local growth exponent " + format_double(g) + ")";
    }
    {
        // (gamma): omega(t) / log(1 + t^2) increasing over the last decades.
        auto ratio = [&](double t) { return eval_weight(w, t) / std::log1p(t * t); };
        double r2 = ratio(t_max / 100.0);
        double r1 = ratio(t_max / 10.0);
        double r0 = ratio(t_max);
        auto& v = report.gamma;
        v.name = "gamma";
        v.witness = r0;
        v.secondary = r1;
        v.consistent = r0 > r1 && r1 > r2;
        v.detail = "omega(t)/log(1+t^2) at t_max/100, t_max/10, t_max: " + format_double(r2) + ", " +
                   format_double(r1) + ", " + format_double(r0);
    }
    {
        // (delta): discrete second differences of u -> omega(e^u) on [0, log t_max].
        int n = std::max(samples, 10);
        double h = std::log(t_max) / static_cast<double>(n - 1);
        std::vector<double> vals(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = phi(w, h * i);
        double min_second = std::numeric_limits<double>::infinity();
        double scale = 0.0;
        for (int i = 1; i + 1 < n; ++i) {
            auto k = static_cast<std::size_t>(i);
            double second = vals[k + 1] - 2.0 * vals[k] + vals[k - 1];
            min_second = std::min(min_second, second);
            scale = std::max(scale, std::fabs(vals[k]));
        }
        auto& v = report.delta;
        v.name = "delta";
        v.witness = min_second;
        v.secondary = scale;
        v.consistent = min_second >= -1e-12 * (1.0 + scale);
        v.detail = "min second difference of omega(e^u) " + format_double(min_second);
    }
    {
        // (epsilon): C(y) = int_1^inf omega(yt)/t^2 dt / (omega(y) + 1).
        const double T = 1e8;
        auto ys = log_grid(t_min, t_max, samples);
        auto C_at = [&](double y) {
            auto q = adaptive_simpson([&](double u) { return eval_weight(w, y * std::exp(u)) * std::exp(-u); }, 0.0,
                                      std::log(T), 1e-10);
            double g = local_log_slope(w, y * T);
            double tail = g < 1.0 ? eval_weight(w, y * T) / ((1.0 - g) * T) : std::numeric_limits<double>::infinity();
            return (q.value + tail) / (eval_weight(w, y) + 1.0);
        };
        double C = 0.0;
        for (double y : ys) C = std::max(C, C_at(y));
        double last = C_at(t_max);
        double earlier = C_at(t_max / 10.0);
        auto& v = report.epsilon;
        v.name = "epsilon";
        v.witness = C;
        v.secondary = last;
        v.consistent = std::isfinite(C) && last <= 1.05 * earlier + 1e-12;
        v.detail = "empirical C=" + format_double(C) + " over y grid";
    }
    {
        int n = std::min(samples, 60);
        auto pts = log_grid(t_min, t_max / 2.0, n);
        double worst = -std::numeric_limits<double>::infinity();
        double wa = 0.0;
        double wb = 0.0;
        for (double a : pts) {
            for (double b : pts) {
                double excess = eval_weight(w, a + b) - eval_weight(w, a) - eval_weight(w, b);
                if (excess > worst) {
                    worst = excess;
                    wa = a;
                    wb = b;
                }
            }
        }
        auto& v = report.subadditivity;
        v.name = "subadditivity";
        v.witness = worst;
        v.secondary = wa;
        v.consistent = worst <= 1e-12 * (1.0 + eval_weight(w, t_max));
        v.detail = "max omega(a+b)-omega(a)-omega(b) = " + format_double(worst) + " at (" + format_double(wa) +
                   ", " + format_double(wb) + ")";
    }
    return report;
}

}  // namespace gsdyn
