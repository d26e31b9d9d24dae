#include "gsdyn/quadrature.hpp"

#include <limits>

namespace gsdyn {

namespace {

struct Panel {
    double a, b, fa, fm, fb, whole;
};

void simpson_recurse(const std::function<double(double)>& f, const Panel& p, double tolerance,
                     int depth, QuadratureResult& out) {
    double m = 0.5 * (p.a + p.b);
    double lm = 0.5 * (p.a + m);
    double rm = 0.5 * (m + p.b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    double delta = left + right - p.whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tolerance) {
        if (depth <= 0 && std::fabs(delta) > 15.0 * tolerance) out.converged = false;
        out.value += left + right + delta / 15.0;
        out.error_estimate += std::fabs(delta) / 15.0;
        return;
    }
    simpson_recurse(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tolerance, depth - 1, out);
    simpson_recurse(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tolerance, depth - 1, out);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tolerance, int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, {a, b, fa, fm, fb, whole}, tolerance, max_depth, out);
    return out;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               int max_iterations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < max_iterations; ++i) {
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(lo) + std::fabs(hi)))
            break;
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

}  // namespace gsdyn
