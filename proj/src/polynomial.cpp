#include "gsdyn/polynomial.hpp"

#include "gsdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gsdyn {

namespace {

// Integer-coefficient image of a rational polynomial: value = sum c_i x^i / den.
struct IntegerPoly {
    std::vector<Integer> coeffs;
    Integer den{1};
};

IntegerPoly to_integer_poly(const std::vector<Rational>& coeffs) {
    IntegerPoly out;
    for (const auto& c : coeffs) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), c.get_den_mpz_t());
    out.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        Integer scaled = out.den / c.get_den();
        out.coeffs.push_back(c.get_num() * scaled);
    }
    return out;
}

std::size_t max_bits(const std::vector<Integer>& v) {
    std::size_t bits = 1;
    for (const auto& c : v) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

std::size_t bit_length(std::size_t n) {
    std::size_t bits = 0;
    while (n > 0) {
        ++bits;
        n >>= 1;
    }
    return bits;
}

Integer kronecker_pack(const std::vector<Integer>& c, std::size_t lo, std::size_t hi, std::size_t slot_bits) {
    if (hi - lo == 1) return c[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    Integer low = kronecker_pack(c, lo, mid, slot_bits);
    Integer high = kronecker_pack(c, mid, hi, slot_bits);
    mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), slot_bits * (mid - lo));
    return low + high;
}

// Inverse of kronecker_pack for signed digits with |digit| < 2^(slot_bits - 2).
void kronecker_unpack(const Integer& value, std::size_t lo, std::size_t count, std::size_t slot_bits,
                      std::vector<Integer>& out) {
    if (count == 1) {
        out[lo] = value;
        return;
    }
    std::size_t h = count / 2;
    std::size_t shift = slot_bits * h;
    Integer low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), value.get_mpz_t(), shift);
    Integer half;
    mpz_setbit(half.get_mpz_t(), shift - 1);
    if (low >= half) {
        Integer full;
        mpz_setbit(full.get_mpz_t(), shift);
        low -= full;
    }
    Integer high = value - low;
    mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), shift);
    kronecker_unpack(low, lo, h, slot_bits, out);
    kronecker_unpack(high, lo + h, count - h, slot_bits, out);
}

std::vector<Integer> multiply_integer(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size() + b.size() - 1;
    std::vector<Integer> out(n);
    if (std::min(a.size(), b.size()) < 16 || a.size() * b.size() < 4096) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
            }
        }
        return out;
    }
    std::size_t slot = max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 3;
    Integer pa = kronecker_pack(a, 0, a.size(), slot);
    Integer pb = kronecker_pack(b, 0, b.size(), slot);
    Integer prod = pa * pb;
    kronecker_unpack(prod, 0, n, slot, out);
    return out;
}

std::vector<Rational> multiply_rational(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    auto ia = to_integer_poly(a);
    auto ib = to_integer_poly(b);
    auto prod = multiply_integer(ia.coeffs, ib.coeffs);
    Integer den = ia.den * ib.den;
    std::vector<Rational> out;
    out.reserve(prod.size());
    for (auto& c : prod) {
        Rational r(c, den);
        r.canonicalize();
        out.push_back(std::move(r));
    }
    return out;
}

int sign_of(const Rational& r) { return sgn(r); }

// Sum |c_i| R^i, an upper bound of |p| on [-R, R].
Rational abs_bound(const Polynomial& p, const Rational& R) {
    Rational out(0);
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) out = out * R + abs(c[i]);
    return out;
}

Rational max_abs(const Rational& a, const Rational& b) {
    Rational aa = abs(a);
    Rational bb = abs(b);
    return aa > bb ? aa : bb;
}

Rational cauchy_bound(const Polynomial& p) {
    Rational m(0);
    const auto& lead = p.leading();
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.coeffs()[static_cast<std::size_t>(i)] / lead);
        if (r > m) m = r;
    }
    // ceil(m) + 1 keeps the bound a small integer.
    Integer ceil_m;
    mpz_cdiv_q(ceil_m.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
    return Rational(ceil_m + 1);
}

RootInterval refine_with(const Polynomial& sq, const SturmSequence& sturm, RootInterval iv, const Rational& width) {
    while (!iv.exact() && iv.width() > width) {
        Rational mid = iv.midpoint();
        int s_mid = sign_of(evaluate(sq, mid));
        if (s_mid == 0) {
            iv.lo = mid;
            iv.hi = mid;
            break;
        }
        int s_lo = sign_of(evaluate(sq, iv.lo));
        bool root_left;
        if (s_lo == 0) {
            root_left = sturm.count_in(iv.lo, mid) >= 1;
        } else {
            root_left = s_lo != s_mid;
        }
        if (root_left) iv.hi = mid; else iv.lo = mid;
    }
    return iv;
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { normalize(); }

void Polynomial::normalize() {
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::identity() { return Polynomial({Rational(0), Rational(1)}); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::quadratic(const Rational& c) { return Polynomial({c, Rational(0), Rational(1)}); }

Polynomial Polynomial::from_strings(const std::vector<std::string>& coeffs) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (const auto& s : coeffs) v.push_back(parse_rational(s));
    return Polynomial(std::move(v));
}

Rational Polynomial::coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

const Rational& Polynomial::leading() const {
    if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative(std::size_t order) const {
    if (order >= coeffs_.size()) return Polynomial();
    std::vector<Rational> v(coeffs_.size() - order);
    for (std::size_t i = order; i < coeffs_.size(); ++i) {
        Integer falling = factorial(i) / factorial(i - order);
        v[i - order] = coeffs_[i] * Rational(falling);
    }
    return Polynomial(std::move(v));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    coeffs_ = multiply_rational(coeffs_, o.coeffs_);
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

std::vector<std::string> Polynomial::to_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(gsdyn::to_string(c));
    return out;
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const auto& c = coeffs_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        bool unit = a == 1 && i > 0;
        if (!unit) os << gsdyn::to_string(a);
        if (i > 0) os << (unit ? "" : "*") << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

// ------------------------------------------------------------- division, gcd

DivMod divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {Polynomial(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(da - db + 1), Rational(0));
    const Rational& lb = b.leading();
    for (int i = da; i >= db; --i) {
        const Rational& top = rem[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        Rational factor = top / lb;
        quot[static_cast<std::size_t>(i - db)] = factor;
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

namespace {

Polynomial make_monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * Rational(1 / p.leading());
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = make_monic(a);
    Polynomial y = make_monic(b);
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).remainder;
        x = std::move(y);
        y = make_monic(r);
    }
    return make_monic(x);
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.degree() <= 0) return make_monic(p);
    Polynomial g = gcd(p, p.derivative());
    return make_monic(divmod(p, g).quotient);
}

// ---------------------------------------------------------------- evaluation

Rational evaluate(const Polynomial& p, const Rational& x) {
    Rational acc(0);
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc *= x;
        acc += c[i];
    }
    return acc;
}

double evaluate(const Polynomial& p, double x) {
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i].get_d();
    return acc;
}

BigFloat evaluate(const Polynomial& p, const BigFloat& x) {
    BigFloat acc(0.0, x.precision());
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc *= x;
        acc += BigFloat(c[i], x.precision());
    }
    return acc;
}

// -------------------------------------------------------------- composition

Polynomial compose(const Polynomial& p, const Polynomial& q, std::size_t degree_cap) {
    if (p.degree() <= 0) return p;
    if (q.degree() <= 0) return Polynomial::constant(evaluate(p, q.coeff(0)));
    std::size_t target = static_cast<std::size_t>(p.degree()) * static_cast<std::size_t>(q.degree());
    if (target > degree_cap) {
        throw DegreeCapError("composition degree " + std::to_string(target) + " exceeds cap " +
                             std::to_string(degree_cap) + "; use iterate_eval for orbit values");
    }
    const auto& c = p.coeffs();
    Polynomial acc = Polynomial::constant(c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc *= q;
        acc += Polynomial::constant(c[i]);
    }
    return acc;
}

Polynomial iterate(const Polynomial& p, std::size_t m, std::size_t degree_cap) {
    if (m == 0) return Polynomial::identity();
    if (p.degree() >= 2) {
        // Check before building anything: deg p_m = deg(p)^m.
        double log_deg = static_cast<double>(m) * std::log(static_cast<double>(p.degree()));
        if (log_deg > std::log(static_cast<double>(degree_cap)) + 1e-9) {
            throw DegreeCapError("iterate of degree " + std::to_string(p.degree()) + "^" + std::to_string(m) +
                                 " exceeds cap " + std::to_string(degree_cap) + "; use iterate_eval");
        }
    }
    Polynomial acc = p;
    for (std::size_t k = 1; k < m; ++k) acc = compose(p, acc, degree_cap);
    return acc;
}

LogValue evaluate_log(const Polynomial& p, const LogValue& y) {
    if (p.is_zero()) return LogValue::zero();
    if (y.is_zero()) return LogValue::from_double(p.coeff(0).get_d());
    if (y.log_abs() < 700.0) {
        double v = evaluate(p, y.to_double());
        if (std::isfinite(v)) return LogValue::from_double(v);
    }
    const int deg = p.degree();
    if (deg == 0) return LogValue::from_double(p.coeff(0).get_d());
    const Rational& lead = p.leading();
    // rho(y) = sum_{j=1..deg} (c_{deg-j}/lead) u^j with u = 1/y.
    double u = static_cast<double>(y.sign()) * std::exp(-y.log_abs());
    double rho = 0.0;
    for (int j = deg; j >= 1; --j) {
        double r = Rational(p.coeff(static_cast<std::size_t>(deg - j)) / lead).get_d();
        rho = (rho + r) * u;
    }
    double one_plus = 1.0 + rho;
    int sign = sgn(lead) * ((deg % 2 == 0) ? 1 : y.sign()) * (one_plus > 0 ? 1 : (one_plus < 0 ? -1 : 0));
    double magnitude = static_cast<double>(deg) * y.log_abs() + gsdyn::log_abs(lead) + std::log(std::fabs(one_plus));
    return LogValue::from_log(sign, magnitude);
}

LogValue iterate_eval(const Polynomial& p, std::size_t m, double x, double switch_threshold) {
    std::vector<double> c;
    c.reserve(p.coeffs().size());
    for (const auto& r : p.coeffs()) c.push_back(r.get_d());
    double y = x;
    std::size_t step = 0;
    for (; step < m; ++step) {
        double next = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) next = next * y + c[i];
        if (!std::isfinite(next) || std::fabs(next) >= switch_threshold) break;
        y = next;
    }
    if (step == m) return LogValue::from_double(y);
    LogValue ly = LogValue::from_double(y);
    for (; step < m; ++step) ly = evaluate_log(p, ly);
    return ly;
}

// ------------------------------------------------------------ Sturm, roots

SturmSequence::SturmSequence(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
    Polynomial base = squarefree_part(p);
    chain_.push_back(base);
    if (base.degree() <= 0) return;
    Polynomial next = base.derivative();
    next *= Rational(1 / abs(next.leading()));
    chain_.push_back(next);
    while (chain_.back().degree() > 0) {
        const auto& a = chain_[chain_.size() - 2];
        const auto& b = chain_.back();
        Polynomial r = -divmod(a, b).remainder;
        if (r.is_zero()) break;
        r *= Rational(1 / abs(r.leading()));
        chain_.push_back(std::move(r));
    }
}

int SturmSequence::variations_at(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain_) {
        int s = sgn(evaluate(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::variations_at_infinity(int direction) const {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain_) {
        if (p.is_zero()) continue;
        int s = sgn(p.leading());
        if (direction < 0 && p.degree() % 2 != 0) s = -s;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::count_in(const Rational& a, const Rational& b) const {
    return variations_at(a) - variations_at(b);
}

int SturmSequence::count_real() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const std::optional<Rational>& max_width) {
    if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
    Polynomial sq = squarefree_part(p);
    std::vector<RootInterval> out;
    if (sq.degree() <= 0) return out;
    if (sq.degree() == 1) {
        Rational r = -sq.coeff(0) / sq.coeff(1);
        out.push_back({r, r});
        return out;
    }
    SturmSequence sturm(sq);
    Rational M = cauchy_bound(sq);
    // Depth-first bisection of (lo, hi]; stack keeps output sorted.
    std::vector<std::pair<Rational, Rational>> stack{{-M, M}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int c = sturm.count_in(lo, hi);
        if (c == 0) continue;
        if (c == 1) {
            if (evaluate(sq, hi) == 0) out.push_back({hi, hi});
            else out.push_back({lo, hi});
            continue;
        }
        Rational mid = (lo + hi) / 2;
        stack.push_back({mid, hi});
        stack.push_back({lo, mid});
    }
    if (max_width) {
        for (auto& iv : out) iv = refine_with(sq, sturm, iv, *max_width);
    }
    return out;
}

RootInterval refine_root(const Polynomial& p, RootInterval interval, const Rational& width) {
    Polynomial sq = squarefree_part(p);
    SturmSequence sturm(sq);
    return refine_with(sq, sturm, std::move(interval), width);
}

Rational max_abs_real_root(const Polynomial& p) {
    Rational out(0);
    for (const auto& iv : isolate_real_roots(p)) {
        Rational m = max_abs(iv.lo, iv.hi);
        if (m > out) out = m;
    }
    return out;
}

std::string to_string(FixedPointClass c) {
    switch (c) {
        case FixedPointClass::None: return "none";
        case FixedPointClass::One: return "one";
        case FixedPointClass::TwoOrMore: return "two_or_more";
    }
    return "unknown";
}

FixedPointReport fixed_points(const Polynomial& p) {
    if (p.degree() < 1) throw PreconditionError("fixed_points requires degree >= 1");
    FixedPointReport report;
    Polynomial q = p - Polynomial::identity();
    if (q.is_zero()) {
        report.count = -1;
        report.classification = FixedPointClass::TwoOrMore;
        return report;
    }
    if (q.degree() == 0) return report;
    report.points = isolate_real_roots(q);
    report.count = static_cast<int>(report.points.size());
    report.classification = report.count == 0   ? FixedPointClass::None
                            : report.count == 1 ? FixedPointClass::One
                                                : FixedPointClass::TwoOrMore;
    return report;
}

// -------------------------------------------------------------- conjugation

AffineMap AffineMap::inverse() const {
    if (alpha == 0) throw DomainError("affine map with alpha = 0 is not invertible");
    Rational a = 1 / alpha;
    return {a, -beta * a};
}

AffineMap AffineMap::after(const AffineMap& other) const {
    return {alpha * other.alpha, alpha * other.beta + beta};
}

Polynomial conjugate(const Polynomial& p, const AffineMap& l) {
    Polynomial inner = l.inverse().as_polynomial();
    Polynomial mid = compose(p, inner, std::numeric_limits<std::size_t>::max());
    return mid * l.alpha + Polynomial::constant(l.beta);
}

namespace {

std::optional<Integer> exact_root(const Integer& value, unsigned long n) {
    Integer root;
    if (value < 0 && n % 2 == 0) return std::nullopt;
    int exact = mpz_root(root.get_mpz_t(), value.get_mpz_t(), n);
    if (!exact) return std::nullopt;
    return root;
}

}  // namespace

Conjugation conjugate_to_monic(const Polynomial& p) {
    if (p.degree() < 2 || p.degree() % 2 != 0)
        throw UnsupportedError("conjugate_to_monic requires even degree >= 2");
    Conjugation out;
    const Rational& lead = p.leading();
    if (lead == 1) {
        out.conjugate = p;
        out.scale = 1.0;
        return out;
    }
    auto e = static_cast<unsigned long>(p.degree() - 1);
    auto num_root = exact_root(lead.get_num(), e);
    auto den_root = exact_root(lead.get_den(), e);
    Rational b;
    if (num_root && den_root) {
        b = Rational(*num_root, *den_root);
        b.canonicalize();
        out.exact_monic = true;
    } else {
        double log_b = log_abs(lead) / static_cast<double>(e);
        double bd = std::exp(log_b) * (lead < 0 ? -1.0 : 1.0);
        b = rational_from_double(bd);
        out.exact_monic = false;
    }
    out.scale = b.get_d();
    out.map = AffineMap{b, Rational(0)};
    out.conjugate = conjugate(p, out.map);
    return out;
}

Conjugation normal_form(const Polynomial& p) {
    if (p.degree() != 2) return conjugate_to_monic(p);
    const Rational& a = p.coeffs()[2];
    const Rational& a1 = p.coeffs()[1];
    Conjugation out;
    out.map = AffineMap{a, a1 / 2};
    out.conjugate = conjugate(p, out.map);
    out.exact_monic = true;
    out.scale = a.get_d();
    return out;
}

// ----------------------------------------------------------- minima, gaps

Rational minimum_lower_bound(const Polynomial& p, const std::optional<Rational>& from) {
    if (p.is_zero()) return Rational(0);
    if (p.degree() == 0) return p.coeff(0);
    if (p.leading() < 0) throw PreconditionError("minimum_lower_bound requires a positive leading coefficient");
    if (!from && p.degree() % 2 != 0) throw PreconditionError("global minimum requires even degree");
    std::optional<Rational> best;
    auto consider = [&](const Rational& v) {
        if (!best || v < *best) best = v;
    };
    if (from) consider(evaluate(p, *from));
    Polynomial dp = p.derivative();
    if (dp.degree() >= 1) {
        Polynomial ddp = dp.derivative();
        for (auto iv : isolate_real_roots(dp)) {
            if (from && iv.hi < *from) continue;
            if (iv.exact()) {
                if (!from || iv.lo >= *from) consider(evaluate(p, iv.lo));
                continue;
            }
            Rational scale = 1 + max_abs(iv.lo, iv.hi);
            Rational width = scale / Rational(Integer(1) << 80);
            iv = refine_root(dp, iv, width);
            if (iv.exact()) {
                if (!from || iv.lo >= *from) consider(evaluate(p, iv.lo));
                continue;
            }
            // |p(x) - p(mid)| <= max|p'| * w/2 on the interval.
            Rational R = max_abs(iv.lo, iv.hi);
            Rational lipschitz = abs_bound(dp, R);
            consider(evaluate(p, iv.midpoint()) - lipschitz * iv.width() / 2);
        }
    }
    if (!best) throw NumericalError("minimum_lower_bound: no candidate points");
    return *best;
}

std::optional<Rational> displacement_gap(const Polynomial& p) {
    Polynomial q = p - Polynomial::identity();
    if (q.is_zero()) return std::nullopt;
    if (q.degree() == 0) {
        if (q.coeff(0) > 0) return q.coeff(0);
        return std::nullopt;
    }
    if (q.degree() % 2 != 0 || q.leading() < 0) return std::nullopt;
    if (SturmSequence(q).count_real() > 0) return std::nullopt;
    Rational lb = minimum_lower_bound(q);
    if (lb <= 0) throw NumericalError("displacement_gap: could not certify a positive lower bound");
    return lb;
}

std::vector<double> critical_points(const Polynomial& p) {
    std::vector<double> out;
    Polynomial dp = p.derivative();
    if (dp.degree() < 1) return out;
    for (const auto& iv : isolate_real_roots(dp)) {
        Rational scale = 1 + max_abs(iv.lo, iv.hi);
        auto refined = refine_root(dp, iv, scale / Rational(Integer(1) << 60));
        out.push_back(refined.midpoint().get_d());
    }
    return out;
}

}  // namespace gsdyn
