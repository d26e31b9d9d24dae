// One line per acceptance criterion; exit status 1 when any line fails.

#include "gsdyn/dynamics.hpp"
#include "gsdyn/faadibruno.hpp"
#include "gsdyn/resolvent.hpp"
#include "unit/test_seed.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace gsdyn;

namespace {

int failures = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

void criterion(const char* id, const char* title, const std::function<Outcome()>& body, double budget_s = 0.0) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && dt >= budget_s) {
        o.pass = false;
        o.detail += "; over time budget";
    }
    char timing[64];
    if (budget_s > 0) std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", dt, budget_s);
    else std::snprintf(timing, sizeof timing, "%.2fs", dt);
    std::printf("%-4s %-4s %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), timing);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Polynomial quad(const Rational& c) { return Polynomial({c, Rational(0), Rational(1)}); }

}  // namespace

int main() {
    std::printf("seed %llu\n", static_cast<unsigned long long>(test_seed()));

    criterion("1", "inverse binomial sums, n <= 200", [] {
        Rational prev(1);  // S_0
        Rational max_s(0);
        for (int n = 1; n <= 200; ++n) {
            auto s = inverse_binomial_sum(n);
            Rational factor(n + 1, 2 * n);
            factor.canonicalize();
            if (s.direct != s.closed_form) return Outcome{false, "closed form differs at n=" + std::to_string(n)};
            if (s.direct != 1 + factor * prev) return Outcome{false, "recursion fails at n=" + std::to_string(n)};
            if (s.direct > 3) return Outcome{false, "S_n > 3 at n=" + std::to_string(n)};
            max_s = std::max(max_s, s.direct);
            prev = s.direct;
        }
        return Outcome{true, "exact equality, recursion and S_n <= 3 (max S_n = " + fmt("%.6f", max_s.get_d()) + ")"};
    }, 5.0);

    criterion("2", "partition products and factorial sums, n <= 25", [] {
        auto rows = lemma_sweep(25);
        std::size_t vectors = 0;
        for (const auto& r : rows) {
            vectors += r.count;
            if (!r.product_holds || !r.sum_holds)
                return Outcome{false, "fails at (n,k)=(" + std::to_string(r.n) + "," + std::to_string(r.k) + ")"};
            if (r.k == 1 && r.sum != r.n_factorial) return Outcome{false, "no equality at k=1"};
        }
        return Outcome{true, std::to_string(rows.size()) + " (n,k) pairs, " + std::to_string(vectors) +
                                 " multiplicity vectors, equality at k=1"};
    }, 60.0);

    criterion("3", "Faa di Bruno vs symbolic differentiation, 200 pairs", [] {
        std::mt19937_64 rng(test_seed());
        int checks = 0;
        for (int t = 0; t < 200; ++t) {
            Polynomial f = random_polynomial(rng, 6);
            Polynomial g = random_polynomial(rng, 6);
            Rational x = random_rational(rng);
            Polynomial h = compose(f, g);
            for (int n = 1; n <= 10; ++n) {
                if (composite_derivative(f, g, n, x) != evaluate(h.derivative(static_cast<std::size_t>(n)), x))
                    return Outcome{false, "mismatch for pair " + std::to_string(t) + " at n=" + std::to_string(n)};
                ++checks;
            }
        }
        return Outcome{true, std::to_string(checks) + " exact comparisons"};
    });

    criterion("4", "iterate lower-bound certificates, c in {0.3,0.5,1,2}, b in {2,10}", [] {
        std::string detail;
        for (Rational c : {Rational(3, 10), Rational(1, 2), Rational(1), Rational(2)}) {
            for (double b : {2.0, 10.0}) {
                Polynomial psi = quad(c);
                auto cert = find_m0(psi, b, 6);
                auto v = verify_iterate_lower_bound(cert, psi);
                if (!v.passed) return Outcome{false, v.detail};
                detail += "c=" + fmt("%g", c.get_d()) + ",b=" + fmt("%g", b) + ":m0=" + std::to_string(cert.m0) + "/" +
                          std::to_string(cert.m0_proof) + " ";
            }
        }
        return Outcome{true, "all verified on 10x grids; m0 empirical/proof " + detail};
    }, 30.0);

    criterion("5", "induction-form derivative bound, x^2+1/2, alpha=2, n<=20, m<=10", [] {
        auto rep = derivative_growth_ratio(quad(Rational(1, 2)), 2.0, 20, 10);
        std::string d = "c=" + fmt("%g", rep.c) + " x0=" + fmt("%.6g", rep.x0) + " m0=" + std::to_string(rep.m0) +
                        " log r=" + fmt("%.6g", rep.log_r_proof) + " min log slack=" +
                        fmt("%.6g", rep.induction_min_slack) + " over " + std::to_string(rep.grid_points) + " points";
        return Outcome{rep.induction_holds, d};
    });

    criterion("6", "y_n >= ((n+2)/(n+1))^2 for n <= 1e4, y_0 = 4, 256 bits", [] {
        auto r = sqrt_recurrence_check(Rational(4), 10000, 256);
        bool ok = r.holds && r.min_slack > 0;
        return Outcome{ok, "min slack " + fmt("%.6g", r.min_slack) + " at n=" + std::to_string(r.min_slack_n) +
                               ", min relative slack " + fmt("%.6g", r.min_relative_slack) + " (n=0 equality)"};
    }, 10.0);

    criterion("7", "chain-rule product identity n <= 12 and telescoping bound n <= 1000", [] {
        auto orbit = backward_orbit(Rational(2), 1000, 128);
        double worst = 0.0;
        for (int n = 1; n <= 12; ++n) worst = std::max(worst, chain_rule_product(orbit, n).relative_difference);
        auto t = telescoping_product_check(orbit, 1000);
        bool ok = worst <= 1e-20 && t.holds;
        return Outcome{ok, "max relative difference " + fmt("%.3g", worst) + ", min log slack of the product bound " +
                               fmt("%.6g", t.min_log_slack)};
    });

    DivergenceParams p1;
    p1.d = 1.5;
    p1.mu_abs = 2.0;
    p1.n_max = 10000;
    criterion("8a", "d=1.5, mu=2: crossing for C=1e6 at n* <= 1e4", [&] {
        auto r = divergence_certificate(p1);
        auto n = r.n_star["1e6"];
        return Outcome{n.has_value() && *n <= 10000 && r.stays_above,
                       n ? "n*(1)=" + std::to_string(*r.n_star["1"]) + " n*(10)=" + std::to_string(*r.n_star["10"]) +
                               " n*(1e6)=" + std::to_string(*n)
                         : "no crossing"};
    });
    criterion("8b", "d=1.5, mu=2: n log n slope of log-lhs within 5% of 2", [&] {
        auto r = divergence_certificate(p1);
        double s = r.slopes["lhs_nlogn_coefficient"];
        return Outcome{std::fabs(s - 2.0) <= 0.1,
                       "fitted coefficient " + fmt("%.6f", s) + " on [1e3,1e4]; raw log-lhs/(n log n) at 1e4 = " +
                           fmt("%.4f", r.slopes["lhs_ratio_1e4"]) + " (lower-order -n log(4mu) term)"};
    });
    criterion("8c", "d=2, d'=3.5, mu=2: d' comparison crosses for C=1e6 at n* <= 1e4", [] {
        DivergenceParams p;
        p.d = 2.0;
        p.d_prime = 3.5;
        p.mu_abs = 2.0;
        p.n_max = 10000;
        auto r = divergence_certificate(p);
        bool ok = r.n_star["1e6"].has_value();
        std::string d = r.status + "; log lhs - log rhs at 1e4 = " + fmt("%.1f", r.log_gap_at_n_max);
        if (r.extended_crossing) d += "; first crossing for C=1e6 at n = " + fmt("%.6g", *r.extended_crossing);
        return Outcome{ok, d};
    });
    criterion("8d", "d' = d + 2 reports inconclusive", [] {
        DivergenceParams p;
        p.d = 1.5;
        p.d_prime = 3.5;
        p.mu_abs = 2.0;
        auto r = divergence_certificate(p);
        return Outcome{r.status.rfind("inconclusive", 0) == 0, r.status};
    });

    criterion("9", "resolvent identity residual, mu in {2, 0.5, -3, 1+i}, 100 points, tol 1e-10", [] {
        auto f = hermite_gaussian_oracle(1.0);
        Polynomial psi = quad(Rational(1, 2));
        GridSpec g;
        g.radius = 10.0;
        g.points = 100;
        auto xs = g.nodes();
        double worst = 0.0;
        std::string terms;
        for (Complex mu : {Complex(2.0), Complex(0.5), Complex(-3.0), Complex(1.0, 1.0)}) {
            NeumannSeries s(f, psi, mu, 1e-10);
            if (!s.certified()) return Outcome{false, "no tail certificate"};
            for (double x : xs) worst = std::max(worst, s.apply(x).residual);
            terms += std::to_string(s.terms_used()) + " ";
        }
        return Outcome{worst <= 1e-9, std::to_string(xs.size()) + " points, max residual " + fmt("%.3g", worst) +
                                          ", terms per mu " + terms};
    });

    criterion("10", "seminorm Neumann series, Gevrey(5), lambda=1", [] {
        auto f = hermite_gaussian_oracle(1.0);
        SeminormParams p;
        p.lambda = 1.0;
        auto s = neumann_seminorm_series(f, quad(Rational(1, 2)), 0.5, WeightSpec::gevrey(5.0), p, 13,
                                         WeightSpec::gevrey(2.0));
        double rel = std::fabs(s.shape_slope - s.expected_shape_slope) / std::fabs(s.expected_shape_slope);
        std::string d = "verdict '" + s.verdict + "', m0=" + std::to_string(s.m0) + ", window m=" +
                        std::to_string(s.window_begin) + ".." + std::to_string(s.window_end) +
                        ", log(-log I_m) vs 2^(m-m0) slope " + fmt("%.5g", s.shape_slope) + " vs " +
                        fmt("%.5g", s.expected_shape_slope) + " (" + fmt("%.2g", 100 * rel) +
                        "%); literal log I_m vs -2^(m-m0) log b slope " + fmt("%.3g", s.literal_slope) +
                        " (>= 1: faster than the bound)";
        return Outcome{s.verdict == "converged", d};
    });

    std::printf("%d criterion line(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
