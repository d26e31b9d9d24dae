#pragma once

// Orbit growth of fixed-point-free polynomials: iterate lower-bound
// certificates, derivative growth of iterates, orbit classification, Cesaro
// averages and seminorm sweeps of f o psi_m.

#include "gsdyn/polynomial.hpp"
#include "gsdyn/seminorms.hpp"
#include "gsdyn/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gsdyn {

// Chebyshev nodes on [-radius, radius] plus the real critical points of
// psi_1, ..., psi_depth (depth lowered while deg(psi)^depth exceeds the cap).
GridSpec dynamics_grid(const Polynomial& psi, double radius = 50.0, int points = 201, int critical_depth = 6);

// log|psi_m(x)| for m = 0..m_max.
std::vector<double> orbit_log_abs(const Polynomial& psi, double x, int m_max);

struct IterateBoundCertificate {
    double b = 2.0;
    int m0 = 0;          // smallest m0 that passed the grid check
    int m0_proof = 0;    // m0 from the constructive recipe
    double B = 0.0;
    Rational a_gap;      // phi(x) - x >= a_gap
    Rational min_phi;    // certified lower bound of min phi
    Conjugation normal;  // phi = L o psi o L^{-1}
    double e = 1.0;      // psi = l o phi o l^{-1}, l(x) = e x + d, l = L^{-1}
    double d = 0.0;
    int k_max = 6;
    GridSpec grid;
    double min_margin = 0.0;  // min over grid, 1 <= k <= k_max of log|psi_{m0+k}| - 2^k log b
};

// Builds the certificate for a fixed-point-free even-degree psi. Throws
// PreconditionError when psi has fixed points, UnsupportedError for odd degree.
IterateBoundCertificate find_m0(const Polynomial& psi, double b, int k_max,
                                const std::optional<GridSpec>& grid = std::nullopt);

struct IterateBoundVerification {
    bool passed = false;
    double min_margin = 0.0;
    double witness_x = 0.0;  // location of the smallest margin (the violation when failed)
    int witness_k = 0;
    std::size_t points_checked = 0;
    std::string detail;
};

// Re-checks log|psi_{m0+k}(x)| >= 2^k log b for 1 <= k <= k_max. The default grid
// is the certificate grid refined 10x, plus the same critical points.
IterateBoundVerification verify_iterate_lower_bound(const IterateBoundCertificate& cert, const Polynomial& psi,
                                                    const std::optional<GridSpec>& grid = std::nullopt);

struct DerivativeBoundReport {
    double alpha = 2.0;
    int n_max = 0;
    int m_max = 0;
    std::size_t grid_points = 0;

    // |psi_m^(n)(x)| <= C r^n n!^2 (1+|psi_m(x)|)^alpha: smallest C per scanned r.
    std::vector<std::pair<double, double>> log_C_by_r;  // (r, log C)
    double r = 0.0;                   // r with the smallest C
    double log_C = 0.0;
    double C = 0.0;
    double max_ratio_observed = 0.0;  // max of |psi_m^(n)| / (r^n n!^2 (1+|psi_m|)^alpha) at the chosen r
    int argmax_n = 0;
    int argmax_m = 0;
    double argmax_x = 0.0;

    // Induction form c n! r^n n^n (1+|phi_m|)^alpha for the monic normal form phi.
    double c = 0.0;
    double lambda = 0.0;  // (2p)! c^(2p-1)
    double x0 = 0.0;
    bool x0_exact = false;  // x0 from exact root isolation (integer alpha)
    int m0 = 0;             // phi_m >= x0 for m >= m0
    int d_order = 0;        // orders n used for D (all nonzero derivatives when d_order >= deg phi_m0)
    double log_D = 0.0;
    double log_r_proof = 0.0;
    bool induction_holds = false;
    double induction_min_slack = 0.0;  // min of log rhs - log lhs
    int induction_witness_n = 0;
    int induction_witness_m = 0;
    double induction_witness_x = 0.0;
    std::vector<std::pair<double, double>> one_step_ratio;  // (x, lhs/rhs of the one-step inequality)

    std::size_t sign_unstable = 0;  // jets whose envelope exceeds |value| by 1e8
};

DerivativeBoundReport derivative_growth_ratio(const Polynomial& psi, double alpha, int n_max, int m_max,
                                              const std::optional<GridSpec>& grid = std::nullopt, unsigned jobs = 1);

struct OrbitReport {
    std::optional<int> diverges_at;
    bool bounded_hint = false;
    std::vector<double> orbit_prefix;  // psi_0(x), psi_1(x), ... (at most 64 entries)
    double doubling_radius = 0.0;      // K with |psi(x)| >= 2|x| for |x| >= K (inf if none)
    double threshold_used = 0.0;       // max(escape_threshold, K)
};

// Smallest K (rational upper bound) with |psi(x)| >= 2|x| whenever |x| >= K;
// empty when no such K exists (degree <= 1).
std::optional<Rational> doubling_radius(const Polynomial& psi);

OrbitReport orbit_classify(const Polynomial& psi, double x, int horizon, double escape_threshold);

// (1/n) sum_{m=1..n} f(psi_m(x)).
double cesaro_average(const SmoothFunction& f, const Polynomial& psi, int n, double x);

struct PowerBoundSweep {
    std::vector<SeminormResult> rows;  // m = 0..m_max
    double a_effective = 0.0;
    bool outside_hypothesis = false;  // a = 2
    bool has_fixed_points = false;
    std::optional<int> certificate_m0;  // b = 2 certificate, when psi is fixed-point free
    bool bounded = false;
    bool eventually_decaying = false;
    std::string verdict;
};

// a_effective: Gevrey(d_sigma)/Gevrey(d_omega) index ratio, or the ratio of the
// scalings for LogPower weights with equal p. Requires a >= 2 (a = 2 is flagged).
double relative_scaling(const WeightSpec& omega, const WeightSpec& sigma);

PowerBoundSweep power_bound_seminorm_sweep(const SmoothFunction& f, const Polynomial& psi, const WeightSpec& omega,
                                           const WeightSpec& sigma, double lambda, int m_max,
                                           const SeminormParams& trunc, unsigned jobs = 1);

}  // namespace gsdyn
