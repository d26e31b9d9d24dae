#include "gsdyn/dynamics.hpp"

#include "gsdyn/errors.hpp"
#include "gsdyn/faadibruno.hpp"
#include "gsdyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + e^L) without overflow.
double log1p_exp(double L) {
    if (L == -kInf) return 0.0;
    if (L > 35.0) return L + std::log1p(std::exp(-L));
    return std::log1p(std::exp(L));
}

void require_fixed_point_free_even(const Polynomial& psi, const char* who) {
    if (psi.degree() < 2 || psi.degree() % 2 != 0)
        throw UnsupportedError(std::string(who) + " requires a polynomial of even degree >= 2");
    auto fp = fixed_points(psi);
    if (fp.count != 0)
        throw PreconditionError(std::string(who) + ": polynomial has fixed points (" + std::to_string(fp.count) +
                                " real solutions of psi(x) = x)");
}

Integer ceil_rational(const Rational& q) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

// A dyadic rational <= q, keeping ladders of lower bounds small.
Rational round_down(const Rational& q) {
    double d = q.get_d();
    Rational r = rational_from_double(d);
    while (r > q) {
        d = std::nextafter(d, -kInf);
        r = rational_from_double(d);
    }
    return r;
}

// Largest real root of p as a rational upper bound, if p has real roots.
std::optional<Rational> largest_root(const Polynomial& p) {
    if (p.degree() < 1) return std::nullopt;
    auto roots = isolate_real_roots(p, Rational(1, Integer(1) << 40));
    if (roots.empty()) return std::nullopt;
    return roots.back().hi;
}

double lgamma_int(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

GridSpec dynamics_grid(const Polynomial& psi, double radius, int points, int critical_depth) {
    GridSpec g;
    g.radius = radius;
    g.points = points;
    int deg = psi.degree();
    if (deg < 2 || critical_depth < 1) return g;
    int depth = critical_depth;
    while (depth > 0 && std::pow(static_cast<double>(deg), depth) > static_cast<double>(kDefaultDegreeCap)) --depth;
    // Critical points of psi_m contain those of psi_1, ..., psi_{m-1}.
    if (depth >= 1) g.extra = critical_points(iterate(psi, static_cast<std::size_t>(depth)));
    return g;
}

std::vector<double> orbit_log_abs(const Polynomial& psi, double x, int m_max) {
    std::vector<double> c;
    for (const auto& r : psi.coeffs()) c.push_back(r.get_d());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m_max + 1));
    double yd = x;
    bool in_double = true;
    LogValue yl = LogValue::from_double(x);
    out.push_back(yl.log_abs());
    for (int m = 1; m <= m_max; ++m) {
        if (in_double) {
            double next = 0.0;
            for (std::size_t i = c.size(); i-- > 0;) next = next * yd + c[i];
            if (std::isfinite(next) && std::fabs(next) < 1e100) {
                yd = next;
                out.push_back(yd == 0.0 ? -kInf : std::log(std::fabs(yd)));
                continue;
            }
            in_double = false;
            yl = LogValue::from_double(yd);
        }
        yl = evaluate_log(psi, yl);
        out.push_back(yl.log_abs());
    }
    return out;
}

// ------------------------------------------------------------ certificates

namespace {

struct MarginScan {
    double min_margin = kInf;
    double witness_x = 0.0;
    int witness_k = 0;
};

MarginScan scan_margins(const std::vector<std::vector<double>>& logs, const std::vector<double>& xs, int m0,
                        int k_max, double log_b) {
    MarginScan s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int k = 1; k <= k_max; ++k) {
            double margin = logs[i][static_cast<std::size_t>(m0 + k)] - std::ldexp(1.0, k) * log_b;
            if (margin < s.min_margin) {
                s.min_margin = margin;
                s.witness_x = xs[i];
                s.witness_k = k;
            }
        }
    }
    return s;
}

}  // namespace

IterateBoundCertificate find_m0(const Polynomial& psi, double b, int k_max, const std::optional<GridSpec>& grid) {
    if (!(b > 1.0) || !std::isfinite(b)) throw DomainError("find_m0 requires b > 1");
    if (k_max < 1) throw DomainError("find_m0 requires k_max >= 1");
    require_fixed_point_free_even(psi, "find_m0");
    IterateBoundCertificate cert;
    cert.b = b;
    cert.k_max = k_max;
    cert.normal = normal_form(psi);
    const Polynomial& phi = cert.normal.conjugate;
    AffineMap l = cert.normal.map.inverse();
    cert.e = l.alpha.get_d();
    cert.d = l.beta.get_d();

    const double eps = 1e-6;
    double B = b * (1.0 + eps);
    B = std::max(B, (std::fabs(cert.d) + 1.0) / std::fabs(cert.e) * b * (1.0 + eps));
    // phi(x) >= x^2 beyond the largest |root| of phi(x) - x^2.
    Polynomial excess = phi - Polynomial::monomial(Rational(1), 2);
    if (excess.degree() >= 1) {
        if (excess.leading() < 0) throw NumericalError("find_m0: phi(x) - x^2 is negative at infinity");
        B = std::max(B, max_abs_real_root(excess).get_d());
    } else if (excess.degree() == 0 && excess.coeff(0) < 0) {
        throw NumericalError("find_m0: phi(x) < x^2 everywhere");
    }
    cert.B = B;

    auto gap = displacement_gap(phi);
    if (!gap) throw NumericalError("find_m0: no displacement gap for the normal form");
    cert.a_gap = *gap;
    cert.min_phi = minimum_lower_bound(phi);
    Rational B_r = rational_from_double(B);
    if (B_r <= cert.min_phi) {
        cert.m0_proof = 2;
    } else {
        Rational steps = (B_r - cert.min_phi) / cert.a_gap;
        cert.m0_proof = 2 + static_cast<int>(ceil_rational(steps).get_si());
    }

    cert.grid = grid ? *grid : dynamics_grid(psi);
    auto xs = cert.grid.nodes();
    const int M = cert.m0_proof + k_max;
    std::vector<std::vector<double>> logs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) logs[i] = orbit_log_abs(psi, xs[i], M);
    const double log_b = std::log(b);
    int m0 = cert.m0_proof;
    while (m0 > 1 && scan_margins(logs, xs, m0 - 1, k_max, log_b).min_margin >= 0.0) --m0;
    cert.m0 = m0;
    cert.min_margin = scan_margins(logs, xs, m0, k_max, log_b).min_margin;
    return cert;
}

IterateBoundVerification verify_iterate_lower_bound(const IterateBoundCertificate& cert, const Polynomial& psi,
                                                    const std::optional<GridSpec>& grid) {
    if (cert.m0 < 1 || cert.k_max < 1) throw DomainError("verify_iterate_lower_bound: malformed certificate");
    GridSpec g;
    if (grid) {
        g = *grid;
    } else {
        g = cert.grid;
        g.points = 10 * (cert.grid.points - 1) + 1;
    }
    auto xs = g.nodes();
    const int M = cert.m0 + cert.k_max;
    std::vector<std::vector<double>> logs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) logs[i] = orbit_log_abs(psi, xs[i], M);
    auto s = scan_margins(logs, xs, cert.m0, cert.k_max, std::log(cert.b));
    IterateBoundVerification v;
    v.points_checked = xs.size();
    v.min_margin = s.min_margin;
    v.witness_x = s.witness_x;
    v.witness_k = s.witness_k;
    v.passed = s.min_margin >= 0.0;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s: m0=%d, k<=%d, %zu points, min margin %.6g at x=%.17g, k=%d",
                  v.passed ? "pass" : "FAIL", cert.m0, cert.k_max, xs.size(), s.min_margin, s.witness_x,
                  s.witness_k);
    v.detail = buf;
    return v;
}

// ------------------------------------------------------ derivative growth

namespace {

struct InductionConstants {
    Rational c;
    double lambda = 0.0;
    double x_pos = 0.0;
    double x0 = 0.0;
    bool x0_exact = false;
};

// sum_k c^(k-1) (1+x)^(alpha k) |phi^(k)(x)| and (1 + |phi(x)|)^alpha, in logs.
std::pair<double, double> one_step_sides(const Polynomial& phi, double c, double alpha, double x) {
    LogValue lhs = LogValue::zero();
    LogValue X = LogValue::from_double(x);
    Polynomial d = phi;
    for (int k = 1; k <= phi.degree(); ++k) {
        d = d.derivative();
        LogValue term = evaluate_log(d, X).abs();
        if (term.is_zero()) continue;
        term *= LogValue::from_log(1, (k - 1) * std::log(c) + alpha * k * std::log1p(std::fabs(x)));
        lhs += term;
    }
    double rhs = alpha * log1p_exp(evaluate_log(phi, X).log_abs());
    return {lhs.log_abs(), rhs};
}

InductionConstants induction_constants(const Polynomial& phi, double alpha) {
    InductionConstants k;
    const int two_p = phi.degree();
    const int p = two_p / 2;
    double c = 0.5 * std::pow(1.0 / factorial(static_cast<std::size_t>(two_p)).get_d(), 1.0 / (two_p - 1));
    k.c = (p == 1) ? Rational(1, 4) : round_down(Rational(rational_from_double(c)));
    k.lambda = factorial(static_cast<std::size_t>(two_p)).get_d() * std::pow(k.c.get_d(), two_p - 1);
    // Beyond x_pos, phi and all its derivatives are positive.
    double x_pos = 0.0;
    Polynomial d = phi;
    for (int j = 0; j < two_p; ++j) {
        if (auto r = largest_root(d)) x_pos = std::max(x_pos, r->get_d());
        d = d.derivative();
    }
    k.x_pos = x_pos;
    if (alpha == std::floor(alpha) && alpha <= 8.0) {
        auto a = static_cast<std::size_t>(alpha);
        Polynomial one_plus_x{Rational(1), Rational(1)};
        Polynomial P = Polynomial::constant(Rational(1)) + phi;
        Polynomial lhs_pow = P;
        for (std::size_t i = 1; i < a; ++i) lhs_pow *= P;
        Polynomial sum;
        Polynomial deriv = phi;
        Rational ck(1);
        for (int kk = 1; kk <= two_p; ++kk) {
            deriv = deriv.derivative();
            Polynomial weight = Polynomial::constant(ck);
            for (std::size_t i = 0; i < a * static_cast<std::size_t>(kk); ++i) weight *= one_plus_x;
            sum += weight * deriv;
            ck *= k.c;
        }
        Polynomial gap = lhs_pow - sum;
        double x0 = x_pos;
        if (auto r = largest_root(gap)) x0 = std::max(x0, r->get_d());
        k.x0 = x0;
        k.x0_exact = true;
    } else {
        // Scan a log ladder; x0 is the node after the last violation.
        double lo = std::max(x_pos, 1e-6);
        const int n = 4000;
        double x0 = lo;
        for (int i = 0; i <= n; ++i) {
            double x = lo * std::pow(1e8 / lo, static_cast<double>(i) / n);
            auto [l, r] = one_step_sides(phi, k.c.get_d(), alpha, x);
            if (l > r) x0 = lo * std::pow(1e8 / lo, static_cast<double>(i + 1) / n);
        }
        k.x0 = x0;
        k.x0_exact = false;
    }
    return k;
}

struct JetPoint {
    // Per (m, n): log|psi_m^(n)(x)|, and log(1+|psi_m(x)|) per m.
    std::vector<std::vector<double>> log_deriv;
    std::vector<double> log1p_value;
    std::size_t unstable = 0;
};

JetPoint jet_point(const Polynomial& p, int m_max, int order, double x) {
    auto jets = iterate_jets(p, m_max, order, x);
    JetPoint out;
    out.log_deriv.resize(static_cast<std::size_t>(m_max + 1));
    out.log1p_value.resize(static_cast<std::size_t>(m_max + 1));
    for (int m = 0; m <= m_max; ++m) {
        const auto& j = jets[static_cast<std::size_t>(m)];
        auto& row = out.log_deriv[static_cast<std::size_t>(m)];
        row.resize(static_cast<std::size_t>(order + 1));
        for (int n = 0; n <= order; ++n) {
            const auto& v = j.value[static_cast<std::size_t>(n)];
            row[static_cast<std::size_t>(n)] = v.log_abs();
            const auto& e = j.envelope[static_cast<std::size_t>(n)];
            if (!e.is_zero() && e.log_abs() - v.log_abs() > std::log(1e8)) ++out.unstable;
        }
        out.log1p_value[static_cast<std::size_t>(m)] = log1p_exp(j.value[0].log_abs());
    }
    return out;
}

}  // namespace

DerivativeBoundReport derivative_growth_ratio(const Polynomial& psi, double alpha, int n_max, int m_max,
                                              const std::optional<GridSpec>& grid, unsigned jobs) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError("derivative_growth_ratio requires alpha > 1");
    if (n_max < 1 || m_max < 1) throw DomainError("derivative_growth_ratio requires n_max, m_max >= 1");
    require_fixed_point_free_even(psi, "derivative_growth_ratio");
    DerivativeBoundReport rep;
    rep.alpha = alpha;
    rep.n_max = n_max;
    rep.m_max = m_max;
    GridSpec g = grid ? *grid : dynamics_grid(psi);
    auto xs = g.nodes();
    rep.grid_points = xs.size();

    // Part A: C r^n n!^2 (1+|psi_m|)^alpha on psi itself.
    std::vector<JetPoint> pts(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) { pts[i] = jet_point(psi, m_max, n_max, xs[i]); });
    const std::vector<double> rs{1.5, 2.0, 4.0, 8.0};
    double best_log_C = kInf;
    for (double r : rs) {
        double worst = -kInf;
        int wn = 0, wm = 0;
        double wx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (int m = 1; m <= m_max; ++m) {
                for (int n = 1; n <= n_max; ++n) {
                    double L = pts[i].log_deriv[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
                    if (L == -kInf) continue;
                    double ratio = L - n * std::log(r) - 2.0 * lgamma_int(n) -
                                   alpha * pts[i].log1p_value[static_cast<std::size_t>(m)];
                    if (ratio > worst) {
                        worst = ratio;
                        wn = n;
                        wm = m;
                        wx = xs[i];
                    }
                }
            }
        }
        rep.log_C_by_r.emplace_back(r, worst);
        if (worst < best_log_C) {
            best_log_C = worst;
            rep.r = r;
            rep.argmax_n = wn;
            rep.argmax_m = wm;
            rep.argmax_x = wx;
        }
    }
    rep.log_C = best_log_C;
    rep.C = std::exp(best_log_C);
    rep.max_ratio_observed = rep.C;
    for (const auto& p : pts) rep.sign_unstable += p.unstable;

    // Part B: the induction form with the proof's constants, on the monic normal form.
    Polynomial phi = normal_form(psi).conjugate;
    auto k = induction_constants(phi, alpha);
    rep.c = k.c.get_d();
    rep.lambda = k.lambda;
    rep.x0 = k.x0;
    rep.x0_exact = k.x0_exact;
    for (double x : {1e1, 1e2, 1e4, 1e6}) {
        auto [l, r] = one_step_sides(phi, rep.c, alpha, x);
        rep.one_step_ratio.emplace_back(x, std::exp(l - r));
    }
    Rational mu = round_down(minimum_lower_bound(phi));
    int m0 = 1;
    Rational x0_r = rational_from_double(k.x0);
    while (mu < x0_r) {
        mu = round_down(minimum_lower_bound(phi, mu));
        if (++m0 > 10000) throw NumericalError("derivative_growth_ratio: iterates do not reach x0");
    }
    rep.m0 = m0;
    // D over 1 <= m <= m0 and every order up to d_order.
    double deg_m0 = std::pow(static_cast<double>(phi.degree()), m0);
    rep.d_order = static_cast<int>(std::min<double>(deg_m0, std::max(n_max, 64)));
    std::vector<double> d_at(xs.size(), -kInf);
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        auto jp = jet_point(phi, m0, rep.d_order, xs[i]);
        double worst = -kInf;
        for (int m = 1; m <= m0; ++m)
            for (int n = 1; n <= rep.d_order; ++n) {
                double L = jp.log_deriv[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
                if (L == -kInf) continue;
                worst = std::max(worst, L - alpha * jp.log1p_value[static_cast<std::size_t>(m)]);
            }
        d_at[i] = worst;
    });
    double log_D = -kInf;
    for (double v : d_at) log_D = std::max(log_D, v);
    rep.log_D = std::max(log_D + 1e-9, 1e-9);
    rep.log_r_proof = rep.log_D - std::log(rep.c);

    const bool same = phi == psi;
    std::vector<JetPoint> phi_pts;
    if (!same) {
        phi_pts.resize(xs.size());
        parallel_for(xs.size(), jobs, [&](std::size_t i) { phi_pts[i] = jet_point(phi, m_max, n_max, xs[i]); });
    }
    const auto& use = same ? pts : phi_pts;
    double min_slack = kInf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int m = 1; m <= m_max; ++m) {
            for (int n = 1; n <= n_max; ++n) {
                double L = use[i].log_deriv[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
                if (L == -kInf) continue;
                double rhs = std::log(rep.c) + lgamma_int(n) + n * rep.log_r_proof + n * std::log(n) +
                             alpha * use[i].log1p_value[static_cast<std::size_t>(m)];
                double slack = rhs - L;
                if (slack < min_slack) {
                    min_slack = slack;
                    rep.induction_witness_n = n;
                    rep.induction_witness_m = m;
                    rep.induction_witness_x = xs[i];
                }
            }
        }
    }
    rep.induction_min_slack = min_slack;
    rep.induction_holds = min_slack >= 0.0;
    return rep;
}

// ------------------------------------------------------------------ orbits

std::optional<Rational> doubling_radius(const Polynomial& psi) {
    if (psi.degree() <= 1) return std::nullopt;
    Polynomial q = psi * psi - Polynomial::monomial(Rational(4), 2);
    Rational K(0);
    for (const auto& iv : isolate_real_roots(q, Rational(1, Integer(1) << 40))) {
        K = std::max(K, Rational(abs(iv.lo)));
        K = std::max(K, Rational(abs(iv.hi)));
    }
    return K;
}

OrbitReport orbit_classify(const Polynomial& psi, double x, int horizon, double escape_threshold) {
    if (horizon < 1) throw DomainError("orbit_classify requires horizon >= 1");
    if (!(escape_threshold > 0.0)) throw DomainError("orbit_classify requires a positive escape threshold");
    OrbitReport rep;
    auto K = doubling_radius(psi);
    rep.doubling_radius = K ? K->get_d() : kInf;
    rep.threshold_used = std::max(escape_threshold, rep.doubling_radius);
    const double log_threshold = std::log(rep.threshold_used);
    std::vector<double> c;
    for (const auto& r : psi.coeffs()) c.push_back(r.get_d());
    double yd = x;
    bool in_double = true;
    LogValue yl;
    rep.orbit_prefix.push_back(x);
    for (int m = 1; m <= horizon; ++m) {
        double log_abs;
        if (in_double) {
            double next = 0.0;
            for (std::size_t i = c.size(); i-- > 0;) next = next * yd + c[i];
            if (std::isfinite(next) && std::fabs(next) < 1e100) {
                yd = next;
                log_abs = std::log(std::fabs(yd));
            } else {
                in_double = false;
                yl = evaluate_log(psi, LogValue::from_double(yd));
                log_abs = yl.log_abs();
            }
        } else {
            yl = evaluate_log(psi, yl);
            log_abs = yl.log_abs();
        }
        if (rep.orbit_prefix.size() < 64) rep.orbit_prefix.push_back(in_double ? yd : yl.to_double());
        if (log_abs >= log_threshold) {
            rep.diverges_at = m;
            return rep;
        }
    }
    rep.bounded_hint = true;
    return rep;
}

double cesaro_average(const SmoothFunction& f, const Polynomial& psi, int n, double x) {
    if (n < 1) throw DomainError("cesaro_average requires n >= 1");
    Accumulator<double> acc(0.0);
    std::vector<double> c;
    for (const auto& r : psi.coeffs()) c.push_back(r.get_d());
    double yd = x;
    bool in_double = true;
    LogValue yl;
    for (int m = 1; m <= n; ++m) {
        if (in_double) {
            double next = 0.0;
            for (std::size_t i = c.size(); i-- > 0;) next = next * yd + c[i];
            if (std::isfinite(next) && std::fabs(next) < 1e100) {
                yd = next;
                acc.add(f.deriv(0, yd));
                continue;
            }
            in_double = false;
            yl = LogValue::from_double(yd);
        }
        yl = evaluate_log(psi, yl);
        acc.add(f.log_deriv(0, yl).to_double());
    }
    return acc.value() / n;
}

// --------------------------------------------------------- seminorm sweep

double relative_scaling(const WeightSpec& omega, const WeightSpec& sigma) {
    if (omega.kind() != sigma.kind()) throw UnsupportedError("omega and sigma must be weights of the same kind");
    if (omega.kind() == WeightKind::Gevrey) return sigma.effective_gevrey_index() / omega.effective_gevrey_index();
    if (omega.parameter() != sigma.parameter())
        throw UnsupportedError("log-power weights with different p are not scalings of each other");
    return sigma.scale_a() / omega.scale_a();
}

PowerBoundSweep power_bound_seminorm_sweep(const SmoothFunction& f, const Polynomial& psi, const WeightSpec& omega,
                                           const WeightSpec& sigma, double lambda, int m_max,
                                           const SeminormParams& trunc, unsigned jobs) {
    PowerBoundSweep out;
    out.a_effective = relative_scaling(omega, sigma);
    if (out.a_effective < 2.0 - 1e-12)
        throw PreconditionError("power_bound_seminorm_sweep requires sigma(t) = omega(t^(1/a)) with a > 2");
    out.outside_hypothesis = std::fabs(out.a_effective - 2.0) <= 1e-12;
    SeminormParams p = trunc;
    p.lambda = lambda;
    out.rows = composite_seminorm_sweep(f, psi, m_max, sigma, p, jobs);
    out.has_fixed_points = psi.degree() >= 1 && fixed_points(psi).count != 0;
    out.bounded = std::all_of(out.rows.begin(), out.rows.end(),
                              [](const SeminormResult& r) { return r.log_value < kInf; });
    if (!out.has_fixed_points && psi.degree() >= 2 && psi.degree() % 2 == 0) {
        out.certificate_m0 = find_m0(psi, 2.0, 6).m0;
        int start = std::max(*out.certificate_m0, 1);
        if (m_max <= start) {
            out.verdict = "inconclusive: m_max <= certificate m0 (pre-asymptotic)";
        } else {
            out.eventually_decaying = true;
            for (int m = start + 1; m <= m_max; ++m) {
                double prev = out.rows[static_cast<std::size_t>(m - 1)].log_value;
                double cur = out.rows[static_cast<std::size_t>(m)].log_value;
                if (!(cur < prev || (cur == -kInf && prev == -kInf))) out.eventually_decaying = false;
            }
            out.verdict = out.bounded && out.eventually_decaying
                              ? "bounded, decreasing past m0=" + std::to_string(start)
                              : (out.bounded ? "bounded, decay past m0 not observed" : "unbounded on grid");
        }
    } else if (out.has_fixed_points) {
        out.verdict = "fixed points present: report only";
    } else {
        out.verdict = "report only";
    }
    if (out.outside_hypothesis) out.verdict += " (a = 2: outside theorem hypothesis)";
    return out;
}

}  // namespace gsdyn
