// annulus.hpp
//
// Value-distribution analytics for sqrt(b) F(b).  The closure of
// sum |a(gamma_n)| e^{i theta_n} over independent phases is an annulus with
// outer radius C = sum |a| and inner radius c = |a_1| - sum_{n>=2} |a| when
// the largest coefficient dominates, a disk of radius C otherwise.  The x
// marginal of the uniform measure on that set is the limiting density of
// sqrt(b) F(b); its second moment constant is A = (1/2) sum |a|^2.
//
// Classification refuses to answer inside the numerical-doubt band: when
// |c| does not exceed the truncation tail bound the geometry is reported as
// indeterminate via an error rather than guessed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "muzeta/errors.hpp"
#include "muzeta/mobius.hpp"
#include "muzeta/ramanujan.hpp"
#include "muzeta/summation.hpp"
#include "muzeta/zeros.hpp"

namespace muzeta {

enum class RegionShape { annulus, disk };

struct AnnulusGeometry {
    double C = 0.0;  // outer radius, sum of magnitudes
    double c = 0.0;  // dominant magnitude minus the rest (meaningful when > 0)
    RegionShape classification = RegionShape::annulus;
    int n_used = 0;
    double truncation_tail_bound = 0.0;
};

struct DensitySpec {
    double C = 0.0;
    double c = 0.0;
    RegionShape classification = RegionShape::annulus;
};

inline DensitySpec density_spec(const AnnulusGeometry& g) {
    return DensitySpec{g.C, g.classification == RegionShape::annulus ? g.c : 0.0,
                       g.classification};
}

// Sort by descending magnitude; ties broken by ascending ordinate.
inline std::vector<Coefficient> rank_coefficients(std::vector<Coefficient> coeffs) {
    if (coeffs.empty())
        throw precondition_error("rank_coefficients: empty coefficient list");
    std::stable_sort(coeffs.begin(), coeffs.end(),
                     [](const Coefficient& a, const Coefficient& b) {
                         if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
                         return a.gamma < b.gamma;
                     });
    return coeffs;
}

inline AnnulusGeometry geometry(const std::vector<Coefficient>& ranked,
                                double tail_bound) {
    if (ranked.empty()) throw precondition_error("geometry: empty coefficient list");
    if (!(tail_bound >= 0.0)) throw precondition_error("geometry: tail_bound must be >= 0");
    if (!std::is_sorted(ranked.begin(), ranked.end(),
                        [](const Coefficient& a, const Coefficient& b) {
                            return a.magnitude > b.magnitude;
                        }))
        throw precondition_error("geometry: input must be ranked by descending magnitude");
    KahanSum<double> rest;
    for (std::size_t i = 1; i < ranked.size(); ++i) rest.add(ranked[i].magnitude);
    AnnulusGeometry g;
    g.n_used = static_cast<int>(ranked.size());
    g.truncation_tail_bound = tail_bound;
    g.C = ranked.front().magnitude + rest.value();
    g.c = ranked.front().magnitude - rest.value();
    if (g.c > tail_bound) {
        g.classification = RegionShape::annulus;
    } else if (g.c < -tail_bound) {
        g.classification = RegionShape::disk;
    } else {
        throw indeterminate_error(
            "geometry: |c| = " + std::to_string(std::abs(g.c)) +
            " does not exceed the truncation tail bound " + std::to_string(tail_bound) +
            "; annulus-vs-disk cannot be classified beyond numerical doubt");
    }
    return g;
}

// ---------------------------------------------------------------------------
// Limiting density of sqrt(b) F(b) and its exact integrals.
// ---------------------------------------------------------------------------
namespace detail {

inline void check_density_spec(const DensitySpec& s) {
    const bool annulus = s.classification == RegionShape::annulus;
    if (!(s.C > 0.0) || !std::isfinite(s.C) ||
        (annulus && (!(s.c >= 0.0) || s.c >= s.C)))
        throw precondition_error("density: invalid spec (need 0 <= c < C)");
}

// integral of sqrt(r^2 - t^2) dt from -r to min(x, r)
inline double semicircle_cum(double r, double x) {
    if (r <= 0.0) return 0.0;
    if (x <= -r) return 0.0;
    if (x >= r) return 0.5 * kPi * r * r;
    return 0.5 * (x * std::sqrt(r * r - x * x) + r * r * (std::asin(x / r) + 0.5 * kPi));
}

}  // namespace detail

inline double density(const DensitySpec& spec, double x) {
    detail::check_density_spec(spec);
    const double C = spec.C;
    const double ax = std::abs(x);
    if (ax >= C) return 0.0;
    const double outer = std::sqrt(C * C - x * x);
    if (spec.classification == RegionShape::disk)
        return 2.0 * outer / (detail::kPi * C * C);
    const double c = spec.c;
    const double denom = detail::kPi * (C * C - c * c);
    if (ax >= c) return 2.0 * outer / denom;
    return 2.0 * (outer - std::sqrt(c * c - x * x)) / denom;
}

inline double density_cdf(const DensitySpec& spec, double x) {
    detail::check_density_spec(spec);
    const double C = spec.C;
    if (spec.classification == RegionShape::disk)
        return 2.0 * detail::semicircle_cum(C, x) / (detail::kPi * C * C);
    const double c = spec.c;
    return 2.0 * (detail::semicircle_cum(C, x) - detail::semicircle_cum(c, x)) /
           (detail::kPi * (C * C - c * c));
}

// Closed-form integral over [-C, C]; equals 1 for a valid spec.
inline double density_integral(const DensitySpec& spec) {
    return density_cdf(spec, spec.C);
}

// A = (1/2) sum |a(gamma)|^2; order-free (sum of squares).
inline double second_moment_constant(const std::vector<Coefficient>& coeffs) {
    if (coeffs.empty())
        throw precondition_error("second_moment_constant: empty coefficient list");
    KahanSum<double> acc;
    for (const auto& c : coeffs) acc.add(c.magnitude * c.magnitude);
    return 0.5 * acc.value();
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature of F(x)^2 on [1, X] and the slope fit of
// the cumulative integral against log X.
// ---------------------------------------------------------------------------
namespace detail {

// 7-15 Gauss-Kronrod nodes and weights on [-1, 1] (QUADPACK values).
inline constexpr std::array<double, 8> kGK15X = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kGK15WK = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGK15WG = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double kronrod = 0.0;
    double gauss = 0.0;
};

template <typename Fn>
PanelResult gk15(Fn&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    PanelResult r;
    const double f_mid = f(mid);
    r.kronrod = kGK15WK[7] * f_mid;
    r.gauss = kGK15WG[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = hw * kGK15X[i];
        const double v = f(mid - dx) + f(mid + dx);
        r.kronrod += kGK15WK[i] * v;
        if (i % 2 == 1) r.gauss += kGK15WG[i / 2] * v;
    }
    r.kronrod *= hw;
    r.gauss *= hw;
    return r;
}

// Accept a panel when the Kronrod-Gauss discrepancy is below
// abs_rate * width + rel_tol * |value|.  The width-proportional budget keeps
// the total error linear in the range and gives refinement a natural floor
// when the integrand itself carries evaluation noise.
template <typename Fn>
double gk15_adaptive(Fn&& f, double a, double b, double abs_rate, double rel_tol,
                     int depth, long* evals) {
    const PanelResult r = gk15(f, a, b);
    *evals += 15;
    const double err = std::abs(r.kronrod - r.gauss);
    if (err <= abs_rate * (b - a) + rel_tol * std::abs(r.kronrod)) return r.kronrod;
    if (depth <= 0 || b - a < 1e-10)
        throw numerical_error(
            "quadrature: panel [" + std::to_string(a) + ", " + std::to_string(b) +
            "] error estimate " + std::to_string(err) +
            " above tolerance at maximum refinement depth");
    const double mid = 0.5 * (a + b);
    return gk15_adaptive(f, a, mid, abs_rate, rel_tol, depth - 1, evals) +
           gk15_adaptive(f, mid, b, abs_rate, rel_tol, depth - 1, evals);
}

}  // namespace detail

struct SecondMomentReport {
    std::vector<double> grid;       // X values
    std::vector<double> integrals;  // integral of F^2 over [1, X]
    double integral = 0.0;          // value at the last grid point
    double fitted_slope = 0.0;      // OLS slope of integral vs log X
    double model_A = 0.0;           // (1/2) sum |a|^2 from the zero table, if given
    long evaluations = 0;
};

// Integrate f(x)^2 dx cumulatively over [1, X_j] for an increasing grid,
// then fit integral against log X.  Works in u = log x; initial panels are
// sized for integrands whose significant oscillations stay below ~30 rad
// per log-unit (true for F: coefficients beyond the second zero are
// negligible at this precision), and the Kronrod error estimate drives
// refinement after that.
template <typename Fn>
SecondMomentReport second_moment_fit(Fn&& f, std::vector<double> grid,
                                     double panel_width = 0.35,
                                     double abs_rate = 1e-12,
                                     double rel_tol = 1e-9) {
    if (grid.empty()) throw precondition_error("second_moment_fit: empty grid");
    std::sort(grid.begin(), grid.end());
    if (!(grid.front() >= 1.0))
        throw precondition_error("second_moment_fit: grid must start at X >= 1");
    SecondMomentReport rep;
    rep.grid = grid;
    auto integrand = [&](double u) {
        const double x = std::exp(u);
        const double v = f(x);
        return v * v * x;
    };
    double u_lo = 0.0;
    KahanSum<long double> cum;
    for (double X : grid) {
        const double u_hi = std::log(X);
        const int n_panels =
            std::max(1, static_cast<int>(std::ceil((u_hi - u_lo) / panel_width)));
        for (int p = 0; p < n_panels; ++p) {
            const double a = u_lo + (u_hi - u_lo) * p / n_panels;
            const double b = u_lo + (u_hi - u_lo) * (p + 1) / n_panels;
            cum.add(detail::gk15_adaptive(integrand, a, b, abs_rate, rel_tol, 12,
                                          &rep.evaluations));
        }
        rep.integrals.push_back(static_cast<double>(cum.value()));
        u_lo = u_hi;
    }
    rep.integral = rep.integrals.back();
    // OLS slope of I against log X
    const std::size_t n = grid.size();
    if (n >= 2) {
        double su = 0.0, si = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            su += std::log(grid[j]);
            si += rep.integrals[j];
        }
        su /= static_cast<double>(n);
        si /= static_cast<double>(n);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double du = std::log(grid[j]) - su;
            num += du * (rep.integrals[j] - si);
            den += du * du;
        }
        rep.fitted_slope = num / den;
    }
    return rep;
}

// Second moment of F itself.  Per-point tolerance 3e-7/sqrt(x) keeps the
// worst-case coherent tail contribution to the integral below 2e-10 while
// the cutoff stays within the sieve.
inline SecondMomentReport empirical_second_moment(double X, const ZeroTable& zeros,
                                                  const MobiusSieve& sieve) {
    if (!(X >= 10.0)) throw precondition_error("empirical_second_moment: X must be >= 10");
    std::vector<double> grid;
    const double lo = std::max(10.0, X / 100.0);
    for (int j = 0; j <= 4; ++j)
        grid.push_back(lo * std::pow(X / lo, static_cast<double>(j) / 4.0));
    auto F = [&](double x) {
        const double tol = std::max(2e-7 / std::sqrt(x), f_direct_min_tol(x, sieve));
        return f_direct(x, sieve, tol);
    };
    // the absolute error budget per log-unit sits just above the noise the
    // per-point tolerance induces in the squared integrand
    SecondMomentReport rep = second_moment_fit(F, grid, 0.35, 1e-10, 1e-6);
    rep.model_A = second_moment_constant(coefficients_for(zeros, 1.0));
    return rep;
}

// ---------------------------------------------------------------------------
// Sampled distribution of sqrt(b) F(b) against the model density.
// ---------------------------------------------------------------------------
struct DistributionReport {
    double b_min = 0.0, b_max = 0.0;
    int samples = 0;
    AnnulusGeometry geometry;
    double second_moment = 0.0;      // A
    double ks_distance = 0.0;        // empirical CDF vs model CDF
    double observed_min = 0.0, observed_max = 0.0;
    double correction_budget = 0.0;  // max |sqrt(b) * correction| over the range
    std::vector<double> sample_b;
    std::vector<double> sample_value;  // sqrt(b) F(b) by zero sum + corrections
    double max_direct_diff = 0.0;      // spot check against the direct series
    int direct_checks = 0;
};

// Samples sqrt(b) F(b) at log-uniform b through the zero-sum route (the
// direct series is spot-checked on a subset), computes the Kolmogorov-
// Smirnov distance to the model CDF, and reports extremes against +-C.
inline DistributionReport distribution_compare(double b_min, double b_max,
                                               int samples, const ZeroTable& zeros,
                                               const MobiusSieve& sieve, int K = 50) {
    if (!(b_min >= detail::kPi) || !(b_min < b_max))
        throw precondition_error("distribution_compare: need pi <= b_min < b_max");
    if (samples < 100)
        throw precondition_error("distribution_compare: need samples >= 100");
    DistributionReport rep;
    rep.b_min = b_min;
    rep.b_max = b_max;
    rep.samples = samples;
    auto ranked = rank_coefficients(coefficients_for(zeros, 1.0));
    const double gamma_last = zeros.ordinates.back();
    rep.geometry = geometry(ranked, coefficient_tail_bound(std::max(gamma_last, 15.0)));
    rep.second_moment = second_moment_constant(ranked);
    const DensitySpec spec = density_spec(rep.geometry);

    rep.sample_b.resize(static_cast<std::size_t>(samples));
    rep.sample_value.resize(static_cast<std::size_t>(samples));
    const double log_lo = std::log(b_min);
    const double log_hi = std::log(b_max);
    for (int i = 0; i < samples; ++i) {
        const double u = log_lo + (log_hi - log_lo) * (i + 0.5) / samples;
        const double b = std::exp(u);
        const double v =
            std::sqrt(b) * (zero_sum(b, ranked) + correction_sum(b, K).value);
        rep.sample_b[static_cast<std::size_t>(i)] = b;
        rep.sample_value[static_cast<std::size_t>(i)] = v;
    }
    // correction budget: |sqrt(b) corr| decreases in b, so the maximum over
    // the range sits at b_min; add the zero-sum truncation allowance
    const CorrectionSum corr_lo = correction_sum(b_min, K);
    rep.correction_budget = std::sqrt(b_min) * (std::abs(corr_lo.value) + corr_lo.error_bound) +
                            rep.geometry.truncation_tail_bound;
    // KS distance against the model CDF
    std::vector<double> sorted = rep.sample_value;
    std::sort(sorted.begin(), sorted.end());
    rep.observed_min = sorted.front();
    rep.observed_max = sorted.back();
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = density_cdf(spec, sorted[i]);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(samples);
        const double lo = static_cast<double>(i) / static_cast<double>(samples);
        ks = std::max(ks, std::max(std::abs(hi - cdf), std::abs(cdf - lo)));
    }
    rep.ks_distance = ks;
    // spot check the zero-sum route against the direct series where feasible
    const int checks = std::min(12, samples);
    for (int j = 0; j < checks; ++j) {
        const std::size_t idx =
            static_cast<std::size_t>((samples - 1) * static_cast<std::int64_t>(j) / std::max(1, checks - 1));
        const double b = rep.sample_b[idx];
        const double tol = std::max(1e-9, f_direct_min_tol(b, sieve));
        if (f_direct_cutoff(b, tol) > sieve.limit()) continue;
        const double direct = std::sqrt(b) * f_direct(b, sieve, tol);
        rep.max_direct_diff = std::max(
            rep.max_direct_diff, std::abs(direct - rep.sample_value[idx]));
        ++rep.direct_checks;
    }
    return rep;
}

}  // namespace muzeta
