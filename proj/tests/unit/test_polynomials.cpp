#include "doctest.h"

#include "gsdyn/errors.hpp"
#include "gsdyn/polynomial.hpp"
#include "test_seed.hpp"

#include <cmath>

using namespace gsdyn;

namespace {
const Polynomial kQuarter = Polynomial::quadratic(Rational(1, 4));
const Polynomial kHalf = Polynomial::quadratic(Rational(1, 2));
}  // namespace

TEST_CASE("evaluate examples") {
    CHECK(evaluate(kQuarter, Rational(1, 2)) == Rational(1, 2));
    CHECK(evaluate(Polynomial(), Rational(7)) == 0);
    CHECK(evaluate(kHalf, Rational(2)) == Rational(9, 2));
    CHECK(evaluate(kHalf, 2.0) == 4.5);
    CHECK(evaluate(kHalf, BigFloat(2.0, 128)).to_double() == 4.5);
}

TEST_CASE("compose and iterate examples") {
    Polynomial expected{Rational(5, 16), Rational(0), Rational(1, 2), Rational(0), Rational(1)};
    CHECK(compose(kQuarter, kQuarter) == expected);
    CHECK(compose(kHalf, Polynomial::identity()) == kHalf);
    Rational c(3, 7);
    auto q = Polynomial::quadratic(c);
    CHECK(evaluate(compose(q, q), Rational(0)) == c * c + c);
    CHECK(iterate(kHalf, 0) == Polynomial::identity());
    CHECK(iterate(kQuarter, 2) == expected);
    auto p3 = iterate(kHalf, 3);
    CHECK(evaluate(p3, Rational(0)) == Rational(17, 16));
    CHECK(evaluate(iterate(kHalf, 2), Rational(0)) == Rational(3, 4));
    CHECK(p3.degree() == 8);
}

TEST_CASE("degree cap guards symbolic composition") {
    CHECK_THROWS_AS(iterate(kHalf, 13), DegreeCapError);
    CHECK_THROWS_AS(compose(iterate(kHalf, 6), iterate(kHalf, 7)), DegreeCapError);
    CHECK_NOTHROW(iterate(kHalf, 12));
}

TEST_CASE("iterate 12 of x^2+1/4 has degree 4096 and matches the orbit") {
    auto p12 = iterate(kQuarter, 12);
    CHECK(p12.degree() == 4096);
    Rational x(0);
    for (int i = 0; i < 12; ++i) x = evaluate(kQuarter, x);
    CHECK(evaluate(p12, Rational(0)) == x);
}

TEST_CASE("iterate_eval examples") {
    auto v = iterate_eval(kHalf, 1, 0.0);
    CHECK(v.sign() == 1);
    CHECK(v.log_abs() == doctest::Approx(std::log(0.5)));
    auto w = iterate_eval(kHalf, 30, 2.0);
    CHECK(w.sign() == 1);
    CHECK(w.log_abs() >= std::ldexp(1.0, 29) * std::log(2.0));
    auto id = iterate_eval(Polynomial::identity(), 1000000, 5.0);
    CHECK(id.to_double() == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("iterate_eval agrees with exact evaluation while in range") {
    std::mt19937_64 rng(test_seed());
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> c;
        int deg = 2 + trial % 3;
        for (int i = 0; i < deg; ++i) c.push_back(random_rational(rng, 3, 4));
        c.push_back(Rational(1 + trial % 2));
        Polynomial p(c);
        for (std::size_t m = 1; m <= 8; ++m) {
            double x = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
            Rational xr = rational_from_double(x);
            // Exact orbit, bailing out once the exact numbers get too big.
            Rational y = xr;
            bool ok = true;
            for (std::size_t k = 0; k < m; ++k) {
                y = evaluate(p, y);
                if (log_abs(y.get_num()) > 600.0) {
                    ok = false;
                    break;
                }
            }
            if (!ok || y == 0) continue;
            auto lv = iterate_eval(p, m, x);
            double exact = log_abs(y);
            if (std::fabs(exact) < 1e-3) continue;
            CHECK(lv.sign() == sgn(y));
            CHECK(std::fabs(lv.log_abs() - exact) <= 1e-9 * std::fabs(exact) + 1e-9);
        }
    }
}

TEST_CASE("evaluate_log switches to the asymptotic form consistently") {
    Polynomial p{Rational(3), Rational(-2), Rational(5, 2)};
    for (double x : {1e5, 1e50, -1e120}) {
        auto direct = LogValue::from_double(evaluate(p, x));
        auto viaLog = evaluate_log(p, LogValue::from_double(x));
        CHECK(viaLog.sign() == direct.sign());
        CHECK(viaLog.log_abs() == doctest::Approx(direct.log_abs()).epsilon(1e-12));
    }
    auto big = evaluate_log(p, LogValue::from_log(-1, 5000.0));
    CHECK(big.sign() == 1);
    CHECK(big.log_abs() == doctest::Approx(10000.0 + std::log(2.5)));
}

TEST_CASE("compose associativity and iterate additivity") {
    std::mt19937_64 rng(test_seed() + 1);
    for (int i = 0; i < 30; ++i) {
        auto a = random_polynomial(rng, 3);
        auto b = random_polynomial(rng, 3);
        auto c = random_polynomial(rng, 3);
        CHECK(compose(a, compose(b, c)) == compose(compose(a, b), c));
        Rational x = random_rational(rng);
        CHECK(evaluate(compose(a, b), x) == evaluate(a, evaluate(b, x)));
    }
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t n = 0; n <= 3; ++n)
            CHECK(iterate(kHalf, m + n) == compose(iterate(kHalf, m), iterate(kHalf, n)));
}

TEST_CASE("large products through the Kronecker path match schoolbook evaluation") {
    std::mt19937_64 rng(test_seed() + 2);
    std::vector<Rational> ca, cb;
    for (int i = 0; i < 150; ++i) ca.push_back(random_rational(rng, 1000000, 97));
    for (int i = 0; i < 90; ++i) cb.push_back(random_rational(rng, 1000000, 89));
    Polynomial a(ca), b(cb);
    auto prod = a * b;
    CHECK(prod.degree() == 238);
    for (int i = 0; i < 5; ++i) {
        Rational x = random_rational(rng);
        CHECK(evaluate(prod, x) == evaluate(a, x) * evaluate(b, x));
    }
}

TEST_CASE("divmod, gcd and squarefree part") {
    Polynomial a{Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
    Polynomial b{Rational(1), Rational(1)};               // x + 1
    auto dm = divmod(a, b);
    CHECK(dm.quotient == Polynomial({Rational(-1), Rational(1)}));
    CHECK(dm.remainder.is_zero());
    auto sq = a * a * b;
    CHECK(squarefree_part(sq) == a);
    CHECK(gcd(a, b) == b);
}

TEST_CASE("fixed point classification") {
    auto none = fixed_points(kHalf);
    CHECK(none.count == 0);
    CHECK(none.classification == FixedPointClass::None);
    auto one = fixed_points(kQuarter);
    CHECK(one.count == 1);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].exact());
    CHECK(one.points[0].lo == Rational(1, 2));
    auto two = fixed_points(Polynomial::quadratic(Rational(-1)));
    CHECK(two.count == 2);
    CHECK(two.classification == FixedPointClass::TwoOrMore);
    auto idr = fixed_points(Polynomial::identity());
    CHECK(idr.count == -1);
    CHECK_THROWS_AS(fixed_points(Polynomial::constant(Rational(3))), PreconditionError);
}

TEST_CASE("root isolation can be refined to any width") {
    // (x^2 - 2)(x - 1/3)(x + 5)
    Polynomial p = Polynomial({Rational(-2), Rational(0), Rational(1)}) * Polynomial({Rational(-1, 3), Rational(1)}) *
                   Polynomial({Rational(5), Rational(1)});
    Rational width(1, Integer(1) << 100);
    auto roots = isolate_real_roots(p, width);
    REQUIRE(roots.size() == 4);
    CHECK(roots[0].midpoint().get_d() == doctest::Approx(-5.0));
    CHECK(roots[1].midpoint().get_d() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(roots[2].midpoint().get_d() == doctest::Approx(1.0 / 3.0));
    CHECK(roots[3].midpoint().get_d() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    for (const auto& r : roots) CHECK(r.width() <= width);
    SturmSequence s(p);
    CHECK(s.count_real() == 4);
    CHECK(s.count_in(Rational(0), Rational(2)) == 2);
    CHECK(max_abs_real_root(p) >= 5);
}

TEST_CASE("conjugate_to_monic") {
    auto mon = conjugate_to_monic(kHalf);
    CHECK(mon.map == AffineMap::identity());
    CHECK(mon.conjugate == kHalf);
    auto four = conjugate_to_monic(Polynomial::monomial(Rational(4), 2));
    CHECK(four.map.alpha == 4);
    CHECK(four.conjugate == Polynomial::monomial(Rational(1), 2));
    Polynomial p{Rational(1), Rational(0), Rational(2)};
    auto c = conjugate_to_monic(p);
    CHECK(std::fabs(c.conjugate.leading().get_d() - 1.0) < 1e-12);
    CHECK(fixed_points(c.conjugate).count == fixed_points(p).count);
    CHECK(fixed_points(p).count == 0);
    // Irrational root: 3^(1/3) for a quartic with lead 3.
    Polynomial q{Rational(1), Rational(1, 2), Rational(0), Rational(0), Rational(3)};
    auto cq = conjugate_to_monic(q);
    CHECK_FALSE(cq.exact_monic);
    CHECK(std::fabs(cq.conjugate.leading().get_d() - 1.0) < 1e-12);
    CHECK(fixed_points(cq.conjugate).count == fixed_points(q).count);
    CHECK_THROWS_AS(conjugate_to_monic(Polynomial::monomial(Rational(1), 3)), UnsupportedError);
}

TEST_CASE("conjugation preserves fixed point counts on random quadratics and quartics") {
    std::mt19937_64 rng(test_seed() + 3);
    for (int i = 0; i < 40; ++i) {
        std::vector<Rational> c;
        int deg = (i % 2 == 0) ? 2 : 4;
        for (int j = 0; j < deg; ++j) c.push_back(random_rational(rng, 4, 3));
        Rational lead = random_rational(rng, 5, 3);
        if (lead == 0) lead = 2;
        c.push_back(lead);
        Polynomial p(c);
        CHECK(fixed_points(conjugate_to_monic(p).conjugate).count == fixed_points(p).count);
        CHECK(fixed_points(normal_form(p).conjugate).count == fixed_points(p).count);
    }
}

TEST_CASE("normal form of a general quadratic is x^2 + c exactly") {
    Polynomial p{Rational(1), Rational(3), Rational(2)};  // 2x^2 + 3x + 1
    auto nf = normal_form(p);
    CHECK(nf.conjugate.degree() == 2);
    CHECK(nf.conjugate.coeff(2) == 1);
    CHECK(nf.conjugate.coeff(1) == 0);
    CHECK(nf.conjugate.coeff(0) == Rational(2) * 1 + Rational(3, 2) - Rational(9, 4));
    AffineMap l = nf.map;
    CHECK(l.inverse().after(l) == AffineMap::identity());
}

TEST_CASE("displacement gap") {
    auto g = displacement_gap(kHalf);
    REQUIRE(g.has_value());
    CHECK(*g == Rational(1, 4));
    CHECK_FALSE(displacement_gap(kQuarter).has_value());
    CHECK_FALSE(displacement_gap(Polynomial::quadratic(Rational(-1))).has_value());
    // x^4 + 1: min of x^4 - x + 1 at x = 4^(-1/3), irrational.
    Polynomial q{Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)};
    auto gq = displacement_gap(q);
    REQUIRE(gq.has_value());
    double xs = std::pow(0.25, 1.0 / 3.0);
    double true_min = std::pow(xs, 4) - xs + 1.0;
    CHECK(gq->get_d() <= true_min);
    CHECK(gq->get_d() == doctest::Approx(true_min).epsilon(1e-12));
}

TEST_CASE("minimum lower bound and critical points") {
    CHECK(minimum_lower_bound(kHalf) == Rational(1, 2));
    CHECK(minimum_lower_bound(kHalf, Rational(3)) == Rational(19, 2));
    auto cps = critical_points(iterate(kHalf, 2));
    REQUIRE(cps.size() == 1);
    CHECK(cps[0] == doctest::Approx(0.0));
    auto cpm = critical_points(iterate(Polynomial::quadratic(Rational(-2)), 2));
    CHECK(cpm.size() == 3);
}

TEST_CASE("affine map algebra") {
    AffineMap l{Rational(3), Rational(-2)};
    CHECK(l.apply(Rational(1)) == 1);
    CHECK(l.after(l.inverse()) == AffineMap::identity());
    CHECK_THROWS_AS((AffineMap{Rational(0), Rational(1)}).inverse(), DomainError);
    Polynomial p{Rational(1), Rational(2), Rational(3)};
    auto c = conjugate(p, l);
    for (int i = -3; i <= 3; ++i) {
        Rational x(i, 2);
        CHECK(evaluate(c, l.apply(x)) == l.apply(evaluate(p, x)));
    }
}

TEST_CASE("to_string and from_strings") {
    CHECK(kHalf.to_string() == "x^2 + 1/2");
    CHECK(Polynomial::from_strings({"1/4", "0", "1"}) == kQuarter);
    CHECK(kQuarter.to_strings() == std::vector<std::string>{"1/4", "0", "1"});
    CHECK(Polynomial().to_string() == "0");
}
