#include "gsdyn/faadibruno.hpp"

#include "gsdyn/errors.hpp"
#include "gsdyn/parallel.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace gsdyn {

bool MultiplicityVector::valid() const {
    if (n < 1 || k < 1 || static_cast<int>(m.size()) != n) return false;
    long count = 0;
    long weight = 0;
    for (int l = 1; l <= n; ++l) {
        int e = multiplicity(l);
        if (e < 0) return false;
        count += e;
        weight += static_cast<long>(l) * e;
    }
    return count == k && weight == n;
}

std::string MultiplicityVector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
    os << ")";
    return os.str();
}

namespace {

// Parts are chosen largest first; `largest` caps the next part.
void descend(int remaining_n, int remaining_k, int largest, std::vector<int>& m, int n, int k,
             std::vector<MultiplicityVector>& out) {
    if (remaining_k == 0) {
        if (remaining_n == 0) out.push_back({n, k, m});
        return;
    }
    // Each of the remaining parts is at least 1 and at most `largest`.
    if (remaining_k > remaining_n || static_cast<long>(remaining_k) * largest < remaining_n) return;
    int top = std::min(largest, remaining_n - (remaining_k - 1));
    for (int l = top; l >= 1; --l) {
        ++m[static_cast<std::size_t>(l - 1)];
        descend(remaining_n - l, remaining_k - 1, l, m, n, k, out);
        --m[static_cast<std::size_t>(l - 1)];
    }
}

}  // namespace

std::vector<MultiplicityVector> enumerate_H(int n, int k) {
    if (n < 1 || k < 1) throw DomainError("enumerate_H requires n >= 1 and k >= 1");
    std::vector<MultiplicityVector> out;
    if (n < k) return out;
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    descend(n, k, n, m, n, k, out);
    std::sort(out.begin(), out.end(),
              [](const MultiplicityVector& a, const MultiplicityVector& b) { return a.m > b.m; });
    return out;
}

const std::vector<MultiplicityVector>& enumerate_H_cached(int n, int k) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<MultiplicityVector>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, k});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, k), enumerate_H(n, k)).first;
    return it->second;
}

Integer faa_coefficient(const MultiplicityVector& v) {
    Integer den = 1;
    for (int l = 1; l <= v.n; ++l) {
        int e = v.multiplicity(l);
        if (e == 0) continue;
        den *= factorial(static_cast<std::size_t>(e));
        den *= ipow(factorial(static_cast<std::size_t>(l)), static_cast<std::size_t>(e));
    }
    const Integer& num = factorial(static_cast<std::size_t>(v.n));
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw NumericalError("Faa di Bruno coefficient is not an integer for " + v.to_string());
    Integer out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

PartitionProductCheck partition_product_check(const MultiplicityVector& v) {
    if (!v.valid()) throw DomainError("partition_product_check: invalid multiplicity vector " + v.to_string());
    Integer lhs = 1;
    Integer prod_fact = 1;
    for (int l = 1; l <= v.n; ++l) {
        int e = v.multiplicity(l);
        if (e == 0) continue;
        lhs *= ipow(Integer(l), static_cast<std::size_t>(l) * static_cast<std::size_t>(e));
        prod_fact *= ipow(factorial(static_cast<std::size_t>(l)), static_cast<std::size_t>(e));
    }
    PartitionProductCheck r;
    r.lhs = Rational(lhs);
    r.rhs = Rational(ipow(Integer(v.n), static_cast<std::size_t>(v.n)) * prod_fact,
                     factorial(static_cast<std::size_t>(v.n)));
    r.rhs.canonicalize();
    r.holds = r.lhs <= r.rhs;
    return r;
}

InverseBinomialSum inverse_binomial_sum(int n) {
    if (n < 1) throw DomainError("inverse_binomial_sum requires n >= 1");
    auto un = static_cast<std::size_t>(n);
    InverseBinomialSum out;
    out.direct = 0;
    Rational inner = 0;
    for (std::size_t k = 0; k <= un; ++k) {
        out.direct += Rational(Integer(1), binomial(un, k));
        inner += Rational(Integer(1) << static_cast<mp_bitcnt_t>(k), Integer(k + 1));
    }
    out.direct.canonicalize();
    out.closed_form = Rational(Integer(n + 1), Integer(1) << static_cast<mp_bitcnt_t>(n)) * inner;
    out.closed_form.canonicalize();
    return out;
}

PartitionFactorialSum partition_factorial_sum(int n, int k) {
    if (n < 1 || k < 1) throw DomainError("partition_factorial_sum requires n, k >= 1");
    PartitionFactorialSum out;
    out.value = 0;
    if (n < k) {
        out.warning = "H(" + std::to_string(n) + "," + std::to_string(k) + ") is empty; sum is 0";
        return out;
    }
    for (const auto& v : enumerate_H_cached(n, k)) {
        Integer prod = 1;
        for (int l = 1; l <= n; ++l) {
            int e = v.multiplicity(l);
            if (e) prod *= ipow(factorial(static_cast<std::size_t>(l)), static_cast<std::size_t>(e));
        }
        out.value += prod;
    }
    return out;
}

std::vector<LemmaRow> lemma_sweep(int n_max, unsigned jobs) {
    if (n_max < 1) throw DomainError("lemma_sweep requires n_max >= 1");
    std::vector<std::pair<int, int>> keys;
    for (int n = 1; n <= n_max; ++n)
        for (int k = 1; k <= n; ++k) keys.emplace_back(n, k);
    std::vector<LemmaRow> rows(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        auto [n, k] = keys[i];
        auto elements = enumerate_H(n, k);
        LemmaRow row;
        row.n = n;
        row.k = k;
        row.count = elements.size();
        row.n_factorial = factorial(static_cast<std::size_t>(n));
        row.sum = 0;
        for (const auto& v : elements) {
            if (!v.valid()) row.product_holds = false;
            if (!partition_product_check(v).holds) row.product_holds = false;
            Integer prod = 1;
            for (int l = 1; l <= n; ++l) {
                int e = v.multiplicity(l);
                if (e) prod *= ipow(factorial(static_cast<std::size_t>(l)), static_cast<std::size_t>(e));
            }
            row.sum += prod;
        }
        row.sum_holds = row.sum <= row.n_factorial && (k != 1 || row.sum == row.n_factorial);
        rows[i] = std::move(row);
    });
    return rows;
}

Rational composite_derivative(const Polynomial& f, const Polynomial& g, int n, const Rational& x) {
    DerivativeOracle<Rational> fo = [&](int order, const Rational& y) {
        return evaluate(f.derivative(static_cast<std::size_t>(order)), y);
    };
    DerivativeOracle<Rational> go = [&](int order, const Rational& y) {
        return evaluate(g.derivative(static_cast<std::size_t>(order)), y);
    };
    return composite_derivative(fo, go, n, x, Rational(0));
}

double composite_derivative(const DerivativeOracle<double>& f, const DerivativeOracle<double>& g, int n, double x) {
    return composite_derivative(f, g, n, x, 0.0);
}

// ------------------------------------------------------------------- jets

namespace {

const std::vector<std::vector<double>>& log_binomials(int N) {
    static std::mutex mutex;
    static std::vector<std::vector<double>> table;
    std::lock_guard<std::mutex> lock(mutex);
    while (static_cast<int>(table.size()) <= N) {
        int n = static_cast<int>(table.size());
        std::vector<double> row(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k)
            row[static_cast<std::size_t>(k)] = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        table.push_back(std::move(row));
    }
    return table;
}

// Bell table B[n][k] for n, k <= N from derivatives g[1..N].
template <class T, class Scale>
std::vector<std::vector<T>> bell_table(const std::vector<T>& g, int N, const T& zero, const T& one, Scale scale) {
    std::vector<std::vector<T>> B(static_cast<std::size_t>(N + 1), std::vector<T>(static_cast<std::size_t>(N + 1), zero));
    B[0][0] = one;
    for (int n = 1; n <= N; ++n) {
        for (int k = 1; k <= n; ++k) {
            T acc = zero;
            for (int i = 1; i <= n - k + 1; ++i) {
                const T& prev = B[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(k - 1)];
                const T& gi = g[static_cast<std::size_t>(i)];
                if (prev == zero || gi == zero) continue;
                acc += scale(n - 1, i - 1) * gi * prev;
            }
            B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = acc;
        }
    }
    return B;
}

}  // namespace

ComposedJet compose_jet(const LogJet& f_at_g, const ComposedJet& g) {
    const int N = static_cast<int>(g.value.size()) - 1;
    if (N < 0 || f_at_g.size() != g.value.size() || g.envelope.size() != g.value.size())
        throw DomainError("compose_jet: jets must have equal, positive length");
    const auto& lb = log_binomials(N);
    auto scale = [&](int n, int k) {
        return LogValue::from_log(1, lb[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
    };
    auto B = bell_table(g.value, N, LogValue::zero(), LogValue::one(), scale);
    auto E = bell_table(g.envelope, N, LogValue::zero(), LogValue::one(), scale);
    ComposedJet out;
    out.value.assign(static_cast<std::size_t>(N + 1), LogValue::zero());
    out.envelope.assign(static_cast<std::size_t>(N + 1), LogValue::zero());
    out.value[0] = f_at_g[0];
    out.envelope[0] = f_at_g[0].abs();
    for (int n = 1; n <= N; ++n) {
        LogValue v = LogValue::zero();
        LogValue e = LogValue::zero();
        for (int k = 1; k <= n; ++k) {
            const auto& fk = f_at_g[static_cast<std::size_t>(k)];
            if (fk.is_zero()) continue;
            v += fk * B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
            e += fk.abs() * E[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        }
        out.value[static_cast<std::size_t>(n)] = v;
        out.envelope[static_cast<std::size_t>(n)] = e;
    }
    return out;
}

std::vector<double> compose_jet(const std::vector<double>& f_at_g, const std::vector<double>& g_jet) {
    const int N = static_cast<int>(g_jet.size()) - 1;
    if (N < 0 || f_at_g.size() != g_jet.size()) throw DomainError("compose_jet: jets must have equal, positive length");
    auto scale = [](int n, int k) { return binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k)).get_d(); };
    auto B = bell_table(g_jet, N, 0.0, 1.0, scale);
    std::vector<double> out(static_cast<std::size_t>(N + 1), 0.0);
    out[0] = f_at_g[0];
    for (int n = 1; n <= N; ++n) {
        Accumulator<double> acc(0.0);
        for (int k = 1; k <= n; ++k) acc.add(f_at_g[static_cast<std::size_t>(k)] * B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
        out[static_cast<std::size_t>(n)] = acc.value();
    }
    return out;
}

PolynomialJet::PolynomialJet(const Polynomial& p, int order) : order_(order) {
    if (order < 0) throw DomainError("PolynomialJet requires order >= 0");
    derivs_.push_back(p);
    for (int k = 1; k <= order; ++k) derivs_.push_back(derivs_.back().derivative());
}

LogJet PolynomialJet::at(const LogValue& y) const {
    LogJet out;
    out.reserve(derivs_.size());
    for (const auto& d : derivs_) out.push_back(evaluate_log(d, y));
    return out;
}

std::vector<ComposedJet> iterate_jets(const Polynomial& psi, int m_max, int order, double x) {
    if (m_max < 0 || order < 0) throw DomainError("iterate_jets requires m_max, order >= 0");
    PolynomialJet pj(psi, order);
    std::vector<ComposedJet> out;
    ComposedJet id;
    id.value.assign(static_cast<std::size_t>(order + 1), LogValue::zero());
    id.value[0] = LogValue::from_double(x);
    if (order >= 1) id.value[1] = LogValue::one();
    id.envelope = id.value;
    for (auto& e : id.envelope) e = e.abs();
    out.push_back(id);
    for (int m = 1; m <= m_max; ++m) {
        const auto& prev = out.back();
        out.push_back(compose_jet(pj.at(prev.value[0]), prev));
    }
    return out;
}

}  // namespace gsdyn
