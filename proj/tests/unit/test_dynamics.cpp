#include "doctest.h"
#include "test_seed.hpp"

#include "gsdyn/bigfloat.hpp"
#include "gsdyn/dynamics.hpp"
#include "gsdyn/errors.hpp"

#include <cmath>
#include <random>

using namespace gsdyn;

namespace {

Polynomial quad(const Rational& c) { return Polynomial({c, Rational(0), Rational(1)}); }

Rational q(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

GridSpec small_grid(const Polynomial& psi) { return dynamics_grid(psi, 20.0, 81, 4); }

SeminormParams sweep_params() {
    SeminormParams p;
    p.n_max = 10;
    p.q_max = 10;
    p.grid.radius = 6.0;
    p.grid.points = 61;
    return p;
}

}  // namespace

TEST_CASE("orbit log values match a 512-bit oracle") {
    Polynomial psi({q(1, 3), Rational(-1), Rational(0), Rational(0), Rational(1)});
    for (double x : {-1.7, 0.0, 0.25, 1.1}) {
        auto logs = orbit_log_abs(psi, x, 9);
        BigFloat y(x, 512);
        for (int m = 1; m <= 9; ++m) {
            y = evaluate(psi, y);
            CHECK(logs[static_cast<std::size_t>(m)] == doctest::Approx(y.log_abs()).epsilon(1e-9));
        }
    }
}

TEST_CASE("find_m0 on x^2 + 1/2") {
    Polynomial psi = quad(q(1, 2));
    auto cert = find_m0(psi, 2.0, 6);
    CHECK(cert.a_gap == q(1, 4));
    CHECK(cert.min_phi <= q(1, 2));
    CHECK(cert.min_phi > q(49, 100));
    CHECK(cert.B == doctest::Approx(2.0).epsilon(1e-5));
    // B = 2(1 + 1e-6) pushes ceil((B - 1/2)/(1/4)) from 6 to 7.
    CHECK(cert.m0_proof == 9);
    CHECK(cert.m0 >= 1);
    CHECK(cert.m0 <= cert.m0_proof);
    CHECK(cert.min_margin >= 0.0);
    auto v = verify_iterate_lower_bound(cert, psi);
    CHECK(v.passed);
    CHECK(v.min_margin >= 0.0);
    CHECK(v.points_checked > 10 * 200);
}

TEST_CASE("find_m0 errors") {
    CHECK_THROWS_AS(find_m0(quad(q(1, 4)), 2.0, 6), PreconditionError);
    CHECK_THROWS_AS(find_m0(quad(Rational(-2)), 2.0, 6), PreconditionError);
    CHECK_THROWS_AS(find_m0(Polynomial({Rational(1), Rational(0), Rational(0), Rational(1)}), 2.0, 6),
                    UnsupportedError);
    CHECK_THROWS_AS(find_m0(quad(Rational(1)), 1.0, 6), DomainError);
    CHECK_THROWS_AS(find_m0(quad(Rational(1)), 2.0, 0), DomainError);
}

TEST_CASE("large constant gives a small certificate") {
    for (long c : {1L, 2L, 5L}) {
        Polynomial psi = quad(Rational(c));
        auto cert = find_m0(psi, 2.0, 6, small_grid(psi));
        CHECK(cert.m0 <= cert.m0_proof);
        CHECK(cert.m0 <= 4);
        CHECK(verify_iterate_lower_bound(cert, psi).passed);
    }
}

TEST_CASE("certificate soundness on random fixed-point-free quadratics") {
    std::mt19937_64 rng(test_seed());
    std::uniform_int_distribution<int> pick_a(1, 3), pick_h(-4, 4), pick_k(1, 8);
    for (int trial = 0; trial < 6; ++trial) {
        Rational a(pick_a(rng));
        Rational h = q(pick_h(rng), 2);
        // a u^2 - u + k has no real root iff k > 1/(4a).
        Rational k = Rational(1) / (4 * a) + q(pick_k(rng), 8);
        k.canonicalize();
        Polynomial u{-h, Rational(1)};
        Polynomial psi = Polynomial::constant(a) * u * u + Polynomial::constant(h + k);
        REQUIRE(fixed_points(psi).count == 0);
        auto cert = find_m0(psi, 2.0, 5, small_grid(psi));
        auto v = verify_iterate_lower_bound(cert, psi);
        INFO(psi.to_string(), " ", v.detail);
        CHECK(v.passed);
        CHECK(cert.m0 <= cert.m0_proof);
    }
}

TEST_CASE("certificate for a quartic") {
    Polynomial psi({Rational(1), Rational(0), Rational(1), Rational(0), Rational(1)});
    auto cert = find_m0(psi, 3.0, 4, small_grid(psi));
    CHECK(verify_iterate_lower_bound(cert, psi).passed);
}

TEST_CASE("tampered certificate fails with a witness") {
    Polynomial psi = quad(q(1, 2));
    auto cert = find_m0(psi, 2.0, 6);
    cert.m0 = 1;
    auto v = verify_iterate_lower_bound(cert, psi);
    CHECK_FALSE(v.passed);
    CHECK(v.min_margin < 0.0);
    CHECK(v.witness_k >= 1);
    CHECK(std::fabs(v.witness_x) < 1.0);
}

TEST_CASE("derivative growth ratio for x^2 + 1/2") {
    Polynomial psi = quad(q(1, 2));
    GridSpec g = dynamics_grid(psi, 10.0, 41, 3);
    auto rep = derivative_growth_ratio(psi, 2.0, 6, 4, g);
    CHECK(rep.r > 1.0);
    CHECK(rep.max_ratio_observed <= rep.C);
    // n = 1, m = 1, x = 1: |psi'(1)| = 2 against C r (1 + 3/2)^2.
    CHECK(2.0 / (rep.r * 6.25) <= rep.C);
    CHECK(rep.c == 0.25);
    CHECK(rep.lambda == 0.5);
    CHECK(rep.x0_exact);
    CHECK(rep.x0 > 0.0);
    CHECK(rep.m0 >= 1);
    CHECK(rep.log_D > 0.0);
    CHECK(rep.induction_holds);
    REQUIRE(rep.one_step_ratio.size() == 4);
    CHECK(rep.one_step_ratio.back().second == doctest::Approx(0.5).epsilon(1e-3));
    for (std::size_t i = 1; i < rep.one_step_ratio.size(); ++i) CHECK(rep.one_step_ratio[i].second < 1.0);
}

TEST_CASE("derivative growth ratio beyond the degree") {
    // psi_1 has degree 2: orders above 2 vanish and cannot raise C.
    Polynomial psi = quad(Rational(1));
    GridSpec g = dynamics_grid(psi, 5.0, 21, 2);
    auto one = derivative_growth_ratio(psi, 2.0, 2, 1, g);
    auto more = derivative_growth_ratio(psi, 2.0, 8, 1, g);
    CHECK(more.log_C_by_r.front().second == doctest::Approx(one.log_C_by_r.front().second));
    CHECK_THROWS_AS(derivative_growth_ratio(quad(Rational(-1)), 2.0, 4, 2, g), PreconditionError);
    CHECK_THROWS_AS(derivative_growth_ratio(psi, 1.0, 4, 2, g), DomainError);
}

TEST_CASE("non-integer alpha uses the scanned x0") {
    Polynomial psi = quad(Rational(1));
    GridSpec g = dynamics_grid(psi, 5.0, 21, 2);
    auto rep = derivative_growth_ratio(psi, 2.5, 4, 3, g);
    CHECK_FALSE(rep.x0_exact);
    CHECK(rep.induction_holds);
}

TEST_CASE("doubling radius") {
    // psi^2 - 4x^2 = (x^2 - 2x + 1/2)(x^2 + 2x + 1/2); K = 1 + 1/sqrt(2).
    auto K = doubling_radius(quad(q(1, 2)));
    REQUIRE(K);
    CHECK(K->get_d() == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-10));
    CHECK(K->get_d() >= 1.0 + std::sqrt(0.5));
    CHECK_FALSE(doubling_radius(Polynomial({Rational(1), Rational(3)})));
}

TEST_CASE("doubling bound on the grid") {
    for (Rational c : {q(1, 2), Rational(-2), Rational(3)}) {
        Polynomial psi = quad(c);
        double K = doubling_radius(psi)->get_d();
        GridSpec g;
        g.radius = 50.0;
        g.points = 401;
        for (double x : g.nodes()) {
            if (std::fabs(x) < K) continue;
            auto logs = orbit_log_abs(psi, x, 20);
            for (int m = 1; m <= 20; ++m)
                CHECK(logs[static_cast<std::size_t>(m)] >= m * std::log(2.0) + std::log(std::fabs(x)) - 1e-12);
        }
    }
}

TEST_CASE("orbit classification") {
    auto two_cycle = orbit_classify(quad(Rational(-1)), 0.0, 50, 1e6);
    CHECK(two_cycle.bounded_hint);
    CHECK_FALSE(two_cycle.diverges_at);
    REQUIRE(two_cycle.orbit_prefix.size() >= 5);
    CHECK(two_cycle.orbit_prefix[0] == 0.0);
    CHECK(two_cycle.orbit_prefix[1] == -1.0);
    CHECK(two_cycle.orbit_prefix[2] == 0.0);
    CHECK(two_cycle.orbit_prefix[3] == -1.0);

    auto fixed = orbit_classify(quad(q(1, 4)), 0.5, 30, 1e6);
    CHECK(fixed.bounded_hint);
    for (double v : fixed.orbit_prefix) CHECK(v == 0.5);

    for (double x : {-3.0, 0.0, 0.7, 10.0}) {
        auto esc = orbit_classify(quad(q(1, 2)), x, 100, 1e6);
        REQUIRE(esc.diverges_at);
        CHECK(*esc.diverges_at <= 12);
        CHECK(esc.threshold_used >= esc.doubling_radius);
    }
    // A threshold below K is raised to K.
    auto low = orbit_classify(quad(q(1, 2)), 0.0, 100, 0.1);
    CHECK(low.threshold_used == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-9));
    CHECK_THROWS_AS(orbit_classify(quad(Rational(1)), 0.0, 0, 10.0), DomainError);
}

TEST_CASE("Cesaro averages") {
    auto f = hermite_gaussian_oracle(1.0);
    Polynomial psi = quad(q(1, 2));
    double a10 = cesaro_average(f, psi, 10, 0.0);
    double a100 = cesaro_average(f, psi, 100, 0.0);
    double a1000 = cesaro_average(f, psi, 1000, 0.0);
    CHECK(a10 > a100);
    CHECK(a100 > a1000);
    CHECK(a1000 == doctest::Approx(a100 / 10).epsilon(1e-12));
    // The orbit escapes, so the sum freezes and A_{2n} = A_n / 2 on the ladder.
    for (int n = 10; n <= 640; n *= 2) {
        double an = cesaro_average(f, psi, n, 0.0);
        double a2n = cesaro_average(f, psi, 2 * n, 0.0);
        CHECK(a2n == doctest::Approx(an / 2).epsilon(1e-12));
        CHECK(std::fabs(a2n - an) <= an);
    }
    Polynomial identity({Rational(0), Rational(1)});
    for (int n : {1, 7, 100}) CHECK(cesaro_average(f, identity, n, 0.0) == 1.0);
    CHECK(cesaro_average(zero_function(), psi, 50, 0.3) == 0.0);
    CHECK_THROWS_AS(cesaro_average(f, psi, 0, 0.0), DomainError);
}

TEST_CASE("relative scaling") {
    CHECK(relative_scaling(WeightSpec::gevrey(2.0), WeightSpec::gevrey(5.0)) == doctest::Approx(2.5));
    CHECK(relative_scaling(WeightSpec::gevrey(2.0), WeightSpec::gevrey(2.0, 3.0)) == doctest::Approx(3.0));
    CHECK(relative_scaling(WeightSpec::log_power(2.0), WeightSpec::log_power(2.0, 4.0)) == doctest::Approx(4.0));
    CHECK_THROWS_AS(relative_scaling(WeightSpec::gevrey(2.0), WeightSpec::log_power(2.0)), UnsupportedError);
    CHECK_THROWS_AS(relative_scaling(WeightSpec::log_power(2.0), WeightSpec::log_power(3.0)), UnsupportedError);
}

TEST_CASE("power-bound seminorm sweep") {
    auto f = hermite_gaussian_oracle(1.0);
    auto omega = WeightSpec::gevrey(2.0);
    auto sigma = WeightSpec::gevrey(5.0);
    auto p = sweep_params();

    auto sweep = power_bound_seminorm_sweep(f, quad(q(1, 2)), omega, sigma, 1.0, 9, p);
    CHECK(sweep.a_effective == doctest::Approx(2.5));
    CHECK_FALSE(sweep.outside_hypothesis);
    CHECK_FALSE(sweep.has_fixed_points);
    REQUIRE(sweep.certificate_m0);
    CHECK(sweep.bounded);
    CHECK(sweep.eventually_decaying);
    REQUIRE(sweep.rows.size() == 10);
    p.lambda = 1.0;
    CHECK(sweep.rows[0].log_value == doctest::Approx(gs_seminorm(f, sigma, p).log_value));

    auto fixed = power_bound_seminorm_sweep(f, quad(Rational(-2)), omega, sigma, 1.0, 4, p);
    CHECK(fixed.has_fixed_points);
    CHECK_FALSE(fixed.certificate_m0);
    CHECK(fixed.verdict.find("report only") != std::string::npos);

    auto edge = power_bound_seminorm_sweep(f, quad(q(1, 2)), omega, WeightSpec::gevrey(4.0), 1.0, 2, p);
    CHECK(edge.outside_hypothesis);
    CHECK_THROWS_AS(power_bound_seminorm_sweep(f, quad(q(1, 2)), omega, WeightSpec::gevrey(3.0), 1.0, 2, p),
                    PreconditionError);
}
