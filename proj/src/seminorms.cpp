#include "gsdyn/seminorms.hpp"

#include "gsdyn/errors.hpp"
#include "gsdyn/parallel.hpp"
#include "gsdyn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace gsdyn {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

SmoothFunction::SmoothFunction(std::string name, LogOracle oracle, DecayLog decay_log, double decay_exponent,
                               double tail_constant)
    : name_(std::move(name)),
      oracle_(std::move(oracle)),
      decay_(std::move(decay_log)),
      decay_exponent_(decay_exponent),
      tail_constant_(tail_constant) {}

LogJet SmoothFunction::jet(const LogValue& y, int order) const {
    LogJet out;
    out.reserve(static_cast<std::size_t>(order + 1));
    for (int n = 0; n <= order; ++n) out.push_back(oracle_(n, y));
    return out;
}

SmoothFunction SmoothFunction::scaled(double c) const {
    if (!std::isfinite(c)) throw DomainError("SmoothFunction::scaled requires a finite factor");
    if (c == 0.0) return zero_function();
    LogValue lc = LogValue::from_double(c);
    auto oracle = oracle_;
    auto decay = decay_;
    double shift = std::log(std::fabs(c));
    return SmoothFunction(
        name_ + "*" + std::to_string(c), [oracle, lc](int n, const LogValue& y) { return lc * oracle(n, y); },
        [decay, shift](double x) { return decay(x) + shift; }, decay_exponent_, std::fabs(c) * tail_constant_);
}

SmoothFunction operator+(const SmoothFunction& f, const SmoothFunction& g) {
    auto fo = f.oracle_;
    auto go = g.oracle_;
    auto fd = f.decay_;
    auto gd = g.decay_;
    return SmoothFunction(
        f.name_ + "+" + g.name_, [fo, go](int n, const LogValue& y) { return fo(n, y) + go(n, y); },
        [fd, gd](double x) {
            double a = fd(x);
            double b = gd(x);
            double hi = std::max(a, b);
            if (hi == kNegInf) return hi;
            return hi + std::log1p(std::exp(std::min(a, b) - hi));
        },
        std::min(f.decay_exponent_, g.decay_exponent_), f.tail_constant_ + g.tail_constant_);
}

const Polynomial& hermite_polynomial(int n) {
    if (n < 0) throw DomainError("hermite_polynomial requires n >= 0");
    static std::mutex mutex;
    static std::vector<Polynomial> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (cache.empty()) {
        cache.push_back(Polynomial::constant(Rational(1)));
        cache.push_back(Polynomial::monomial(Rational(2), 1));
    }
    cache.reserve(static_cast<std::size_t>(n + 2));
    while (static_cast<int>(cache.size()) <= n) {
        auto k = cache.size() - 1;
        // H_{k+1} = 2t H_k - 2k H_{k-1}
        Polynomial next = Polynomial::monomial(Rational(2), 1) * cache[k] -
                          cache[k - 1] * Rational(2 * static_cast<long>(k));
        cache.push_back(std::move(next));
    }
    return cache[static_cast<std::size_t>(n)];
}

namespace {

// H_n(t) by the three-term recurrence in log space; exact polynomial evaluation
// takes over when |t| is beyond double range.
LogValue hermite_log(int n, const LogValue& t) {
    if (t.log_abs() > 300.0) return evaluate_log(hermite_polynomial(n), t);
    double td = t.to_double();
    LogValue two_t = LogValue::from_double(2.0 * td);
    LogValue prev = LogValue::one();
    if (n == 0) return prev;
    LogValue cur = two_t;
    for (int k = 1; k < n; ++k) {
        LogValue next = two_t * cur - LogValue::from_double(2.0 * k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

SmoothFunction hermite_gaussian_oracle(double scale) {
    if (!std::isfinite(scale) || scale <= 0.0) throw DomainError("Gaussian scale must be positive");
    LogValue inv = LogValue::from_double(-1.0 / scale);
    LogValue s = LogValue::from_double(scale);
    auto oracle = [inv, s](int n, const LogValue& y) {
        if (n < 0) throw DomainError("derivative order must be >= 0");
        LogValue t = y / s;
        double log_gauss = t.is_zero() ? 0.0 : -std::exp(2.0 * t.log_abs());
        if (!std::isfinite(log_gauss)) return LogValue::zero();
        LogValue h = hermite_log(n, t);
        return inv.pow(n) * h * LogValue::from_log(1, log_gauss);
    };
    auto decay = [scale](double x) { return -(x / scale) * (x / scale); };
    // sup (1+y) exp(-(y/s)^2) at y = (sqrt(1+2 s^2) - 1)/2.
    double y = (std::sqrt(1.0 + 2.0 * scale * scale) - 1.0) / 2.0;
    double tail = (1.0 + y) * std::exp(-(y / scale) * (y / scale));
    char buf[64];
    std::snprintf(buf, sizeof buf, "gaussian(scale=%g)", scale);
    return SmoothFunction(buf, oracle, decay, 2.0, tail);
}

SmoothFunction zero_function() {
    return SmoothFunction(
        "zero", [](int, const LogValue&) { return LogValue::zero(); }, [](double) { return kNegInf; },
        std::numeric_limits<double>::infinity(), 0.0);
}

std::vector<double> GridSpec::nodes() const {
    if (!(radius > 0.0) || points < 2) throw DomainError("grid needs radius > 0 and at least 2 points");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points) + extra.size());
    for (int j = 0; j < points; ++j) {
        // Symmetric formula keeps nested grids bit-identical on shared nodes.
        double theta = std::numbers::pi * static_cast<double>(2 * j - (points - 1)) / (2.0 * (points - 1));
        out.push_back(radius * std::sin(theta));
    }
    out.front() = -radius;
    out.back() = radius;
    for (double x : extra) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void SeminormParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("seminorm lambda must be positive");
    if (n_max < 1 || q_max < 1) throw DomainError("seminorm n_max and q_max must be >= 1");
    if (!(grid.radius > 0.0) || grid.points < 2) throw DomainError("seminorm grid is empty");
}

namespace {

struct Candidate {
    double log_value = kNegInf;
    int n = 0;
    int q = 0;
    std::size_t index = 0;
    bool found = false;
};

// Larger value wins; ties go to the smallest (n, q, index).
bool better(const Candidate& a, const Candidate& b) {
    if (!b.found) return a.found;
    if (!a.found) return false;
    if (a.log_value != b.log_value) return a.log_value > b.log_value;
    return std::tie(a.n, a.q, a.index) < std::tie(b.n, b.q, b.index);
}

std::vector<double> conjugate_table(const WeightSpec& w, const SeminormParams& p) {
    std::vector<double> table(static_cast<std::size_t>(p.n_max + p.q_max + 1));
    for (std::size_t j = 0; j < table.size(); ++j)
        table[j] = p.lambda * young_conjugate(w, static_cast<double>(j) / p.lambda);
    return table;
}

Candidate best_at_point(const LogJet& derivs, double x, std::size_t index, const std::vector<double>& penalty,
                        const SeminormParams& p) {
    Candidate best;
    double log1px = std::log1p(std::fabs(x));
    for (int n = 0; n <= p.n_max; ++n) {
        const auto& d = derivs[static_cast<std::size_t>(n)];
        if (d.is_zero()) continue;
        for (int q = 0; q <= p.q_max; ++q) {
            Candidate c;
            c.log_value = q * log1px + d.log_abs() - penalty[static_cast<std::size_t>(n + q)];
            c.n = n;
            c.q = q;
            c.index = index;
            c.found = true;
            if (better(c, best)) best = c;
        }
    }
    return best;
}

SeminormResult finish(const Candidate& best, const std::vector<double>& xs, const SeminormParams& p) {
    SeminormResult r;
    if (!best.found) {
        r.truncation_note = "function vanishes on the grid";
        return r;
    }
    r.log_value = best.log_value;
    r.value = std::exp(best.log_value);
    r.argmax_x = xs[best.index];
    r.argmax_n = best.n;
    r.argmax_q = best.q;
    r.argmax_index = best.index;
    bool edge = best.index == 0 || best.index + 1 == xs.size();
    r.boundary = best.n == p.n_max || best.q == p.q_max || edge;
    if (r.boundary) {
        r.truncation_note = "max attained on truncation boundary (";
        if (best.n == p.n_max) r.truncation_note += "n = n_max ";
        if (best.q == p.q_max) r.truncation_note += "q = q_max ";
        if (edge) r.truncation_note += "grid edge ";
        r.truncation_note += "); value is a lower bound, increase n_max/q_max/grid";
    }
    return r;
}

}  // namespace

SeminormResult gs_seminorm(const SmoothFunction& f, const WeightSpec& w, const SeminormParams& p, unsigned jobs) {
    p.validate();
    auto xs = p.grid.nodes();
    auto penalty = conjugate_table(w, p);
    std::vector<Candidate> per_point(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        per_point[i] = best_at_point(f.jet(LogValue::from_double(xs[i]), p.n_max), xs[i], i, penalty, p);
    });
    Candidate best;
    for (const auto& c : per_point)
        if (better(c, best)) best = c;
    return finish(best, xs, p);
}

std::vector<SeminormResult> composite_seminorm_sweep(const SmoothFunction& f, const Polynomial& psi, int m_max,
                                                     const WeightSpec& w, const SeminormParams& p, unsigned jobs) {
    p.validate();
    if (m_max < 0) throw DomainError("composite seminorm requires m >= 0");
    auto xs = p.grid.nodes();
    auto penalty = conjugate_table(w, p);
    std::vector<std::vector<Candidate>> per_point(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        auto jets = iterate_jets(psi, m_max, p.n_max, xs[i]);
        auto& row = per_point[i];
        row.resize(static_cast<std::size_t>(m_max + 1));
        for (int m = 0; m <= m_max; ++m) {
            const auto& g = jets[static_cast<std::size_t>(m)];
            auto composed = compose_jet(f.jet(g.value[0], p.n_max), g);
            row[static_cast<std::size_t>(m)] = best_at_point(composed.value, xs[i], i, penalty, p);
        }
    });
    std::vector<SeminormResult> out;
    for (int m = 0; m <= m_max; ++m) {
        Candidate best;
        for (const auto& row : per_point)
            if (better(row[static_cast<std::size_t>(m)], best)) best = row[static_cast<std::size_t>(m)];
        out.push_back(finish(best, xs, p));
    }
    return out;
}

SeminormResult composite_seminorm(const SmoothFunction& f, const Polynomial& psi, int m, const WeightSpec& w,
                                  const SeminormParams& p, unsigned jobs) {
    if (m == 0) return gs_seminorm(f, w, p, jobs);
    return composite_seminorm_sweep(f, psi, m, w, p, jobs).back();
}

double envelope_log(const WeightSpec& sigma, double rho, int n, int q, double log_C) {
    if (!(rho > 0.0)) throw DomainError("envelope rho must be positive");
    return log_C + rho * young_conjugate(sigma, static_cast<double>(n + q) / rho);
}

}  // namespace gsdyn
