// acceptance.hpp
//
// End-to-end verification suite.  Each criterion is pinned to an explicit
// tolerance and prints one pass/fail line; the same engine backs the `check`
// subcommand and the acceptance test binary.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "muzeta/annulus.hpp"
#include "muzeta/figures.hpp"
#include "muzeta/mobius.hpp"
#include "muzeta/ramanujan.hpp"
#include "muzeta/special.hpp"
#include "muzeta/zeros.hpp"

namespace muzeta {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    std::int64_t sieve_limit = 100000000;  // 10^8
    bool quick = false;  // smaller grids for smoke runs; tolerances unchanged
};

// Reference values: the first ten coefficient magnitudes as printed (they
// are truncations, so "matches" means lying in [v, v + unit-in-last-digit)),
// and the annulus radii to the printed six digits.
inline constexpr std::array<double, 10> kReferenceCoeffMagnitudes = {
    2.9255e-5, 8.2702e-8, 2.8609e-9, 4.0789e-11, 5.2534e-12,
    9.4006e-14, 8.7272e-15, 1.0550e-15, 3.0507e-17, 8.3287e-18};
inline constexpr double kReferenceOuterRadius = 0.0000293414;
inline constexpr double kReferenceInnerRadius = 0.0000291702;

namespace detail {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// computed matches a printed truncation `ref` with `digits` significant
// digits shown: ref <= computed < ref + one unit in the last printed digit
inline bool matches_truncation(double computed, double ref, int digits) {
    const double unit = std::pow(10.0, std::floor(std::log10(ref)) - (digits - 1));
    return computed >= ref - 1e-9 * ref && computed < ref + unit;
}

}  // namespace detail

class AcceptanceSuite {
  public:
    explicit AcceptanceSuite(const AcceptanceOptions& opt)
        : opt_(opt), sieve_(opt.sieve_limit), zeros500_(load_embedded(500)) {
        coeffs500_ = rank_coefficients(coefficients_for(zeros500_, 1.0));
        coeffs50_.assign(coeffs500_.begin(), coeffs500_.begin() + 50);
    }

    std::vector<CriterionResult> run_all() {
        std::vector<CriterionResult> r;
        r.push_back(table_reproduction());
        r.push_back(radii_reproduction());
        {
            auto pair = residual_and_envelope();
            r.push_back(pair.first);
            r.push_back(pair.second);
        }
        r.push_back(density_normalization());
        r.push_back(second_moment());
        r.push_back(riesz_identities());
        r.push_back(wmh_ratio());
        r.push_back(property_suites());
        return r;
    }

    // --- criterion 1 -------------------------------------------------------
    CriterionResult table_reproduction() {
        CriterionResult c{"1", "coefficient-table reproduction (n = 1..10, 4 digits)", true, ""};
        double worst_rel = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double mag = coeffs500_[static_cast<std::size_t>(i)].magnitude;
            const double ref = kReferenceCoeffMagnitudes[static_cast<std::size_t>(i)];
            const double rel = std::abs(mag - ref) / ref;
            worst_rel = std::max(worst_rel, rel);
            if (!detail::matches_truncation(mag, ref, 5) || rel > 5e-4) c.pass = false;
        }
        c.detail = "worst relative deviation " + detail::fmt(worst_rel);
        return c;
    }

    // --- criterion 2 -------------------------------------------------------
    CriterionResult radii_reproduction() {
        CriterionResult c{"2", "radii C, c to 6 digits; 500-zero stability to 10 digits", true, ""};
        std::vector<Coefficient> first10(coeffs500_.begin(), coeffs500_.begin() + 10);
        const auto g10 = geometry(first10, coefficient_tail_bound(zeros500_.ordinates[10]));
        const auto g500 = geometry(coeffs500_, coefficient_tail_bound(zeros500_.ordinates.back()));
        const double relC = std::abs(g10.C - kReferenceOuterRadius) / kReferenceOuterRadius;
        const double relc = std::abs(g10.c - kReferenceInnerRadius) / kReferenceInnerRadius;
        const double stabC = std::abs(g500.C - g10.C) / g10.C;
        const double stabc = std::abs(g500.c - g10.c) / g10.c;
        c.pass = relC <= 5e-6 && relc <= 5e-6 && stabC <= 5e-10 && stabc <= 5e-10 &&
                 g10.classification == RegionShape::annulus;
        c.detail = "C dev " + detail::fmt(relC) + ", c dev " + detail::fmt(relc) +
                   ", 500-zero drift " + detail::fmt(std::max(stabC, stabc));
        return c;
    }

    // --- criteria 3 and 4 (shared samples) ---------------------------------
    std::pair<CriterionResult, CriterionResult> residual_and_envelope() {
        CriterionResult c3{"3", "identity residual <= certified bound + 1e-8 (200 b, 50 zeros, K = 50)", true, ""};
        CriterionResult c4{"4", "envelope |sqrt(b) F(b)| <= sum|a| + (sqrt(pi)/sqrt(b)) |F(pi/b)|", true, ""};
        const int samples = opt_.quick ? 40 : 200;
        const int K = 50;
        double C50 = 0.0;
        for (const auto& a : coeffs50_) C50 += a.magnitude;
        double worst_excess = -1e30, worst_margin = -1e30, max_resid = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double b = detail::kPi *
                std::pow(1e4 / detail::kPi, i / (samples - 1.0));
            const EvalRecord rec = evaluate(b, coeffs50_, K, sieve_, 1e-9);
            max_resid = std::max(max_resid, rec.residual);
            const double excess = rec.residual - (rec.error_bound + 1e-8);
            worst_excess = std::max(worst_excess, excess);
            if (excess > 0.0) c3.pass = false;
            // envelope as identity: both sides explicit, slack covers the
            // direct-evaluation tolerances only
            const double tol_small = 1e-12;
            const double f_small = f_direct(detail::kPi / b, sieve_, tol_small);
            const double lhs = std::sqrt(b) * std::abs(rec.direct);
            const double rhs = C50 + std::sqrt(detail::kPi / b) * std::abs(f_small);
            const double slack = std::sqrt(b) * rec.direct_tol +
                                 std::sqrt(detail::kPi / b) * tol_small + 1e-10;
            const double margin = lhs - (rhs + slack);
            worst_margin = std::max(worst_margin, margin);
            if (margin > 0.0) c4.pass = false;
        }
        c3.detail = "max residual " + detail::fmt(max_resid) + ", worst excess over bound " +
                    detail::fmt(worst_excess);
        c4.detail = "worst violation margin " + detail::fmt(worst_margin) +
                    " (negative means satisfied)";
        return {c3, c4};
    }

    // --- criterion 5 -------------------------------------------------------
    CriterionResult density_normalization() {
        CriterionResult c{"5", "density normalization: closed-form integral = 1 +- 1e-9, both branches", true, ""};
        std::vector<Coefficient> first10(coeffs500_.begin(), coeffs500_.begin() + 10);
        const auto g10 = geometry(first10, coefficient_tail_bound(zeros500_.ordinates[10]));
        const DensitySpec annulus = density_spec(g10);
        const DensitySpec disk{g10.C, 0.0, RegionShape::disk};
        const double ia = density_integral(annulus);
        const double id = density_integral(disk);
        // pointwise consistency: p equals the derivative of the closed-form CDF
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> ux(-g10.C, g10.C);
        double worst_p = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double x = ux(rng);
            const double h = 1e-7 * g10.C;
            if (std::abs(x) + 2 * h > g10.C) continue;
            const double dp = (density_cdf(annulus, x + h) - density_cdf(annulus, x - h)) / (2 * h);
            worst_p = std::max(worst_p, std::abs(dp - density(annulus, x)) /
                                            std::max(1.0 / g10.C, density(annulus, x)));
        }
        c.pass = std::abs(ia - 1.0) <= 1e-9 && std::abs(id - 1.0) <= 1e-9 && worst_p < 1e-4;
        c.detail = "annulus integral - 1 = " + detail::fmt(ia - 1.0) +
                   ", disk integral - 1 = " + detail::fmt(id - 1.0);
        return c;
    }

    // --- criterion 6 -------------------------------------------------------
    CriterionResult second_moment() {
        CriterionResult c{"6", "second moment: slope of integral(F^2) vs log X over [1e2, 1e4] within 25% of A", true, ""};
        const auto syn = second_moment_fit(
            [](double x) { return 1.0 / std::sqrt(x); },
            {1e2, 316.22776601683793, 1e3, 3162.2776601683795, 1e4});
        const bool syn_ok = std::abs(syn.fitted_slope - 1.0) <= 1e-3;
        const auto rep = empirical_second_moment(opt_.quick ? 1e3 : 1e4, zeros500_, sieve_);
        const double ratio = rep.fitted_slope / rep.model_A;
        const bool slope_ok = std::abs(ratio - 1.0) <= 0.25;
        // diagnostic: the same fit restricted to the top decade, where the
        // small-x correction tail of the formula has died off
        double top_slope = 0.0;
        if (rep.grid.size() >= 3) {
            const std::size_t n = rep.grid.size();
            double su = 0, si = 0;
            for (std::size_t j = n - 3; j < n; ++j) {
                su += std::log(rep.grid[j]);
                si += rep.integrals[j];
            }
            su /= 3; si /= 3;
            double num = 0, den = 0;
            for (std::size_t j = n - 3; j < n; ++j) {
                const double du = std::log(rep.grid[j]) - su;
                num += du * (rep.integrals[j] - si);
                den += du * du;
            }
            top_slope = num / den;
        }
        c.pass = syn_ok && slope_ok;
        c.detail = "slope/A = " + detail::fmt(ratio) + " (require within 25%); top-decade slope/A = " +
                   detail::fmt(top_slope / rep.model_A) + "; synthetic slope = " +
                   detail::fmt(syn.fitted_slope);
        return c;
    }

    // --- criterion 7 -------------------------------------------------------
    CriterionResult riesz_identities() {
        CriterionResult c{"7", "Riesz identities: P_1(x^2) = F(x) to 1e-10; expansion vs direct to 1e-6", true, ""};
        double worst1 = 0.0;
        for (double x : {2.0, 5.0, 10.0}) {
            const double d = std::abs(riesz_direct(1.0, x * x, sieve_, 1e-11) -
                                      f_direct(x, sieve_, 1e-11));
            worst1 = std::max(worst1, d);
            if (d > 1e-10) c.pass = false;
        }
        const double e1 = std::abs(riesz_expansion(1.0, 100.0, zeros500_, sieve_) -
                                   riesz_direct(1.0, 100.0, sieve_, 1e-9));
        const double e2 = std::abs(riesz_expansion(2.0, 100.0, zeros500_, sieve_) -
                                   riesz_direct(2.0, 100.0, sieve_, 1e-7));
        if (e1 > 1e-6 || e2 > 1e-6) c.pass = false;
        c.detail = "worst P_1 identity diff " + detail::fmt(worst1) +
                   "; expansion diffs k=1: " + detail::fmt(e1) + ", k=2: " + detail::fmt(e2);
        return c;
    }

    // --- criterion 8 -------------------------------------------------------
    CriterionResult wmh_ratio() {
        CriterionResult c{"8", "WMH ratio integral/log X bounded (<= 2x its value at X = 1e3)", true, ""};
        const double r0 = wmh_integral(1e3, sieve_) / std::log(1e3);
        double worst = 0.0;
        for (double X : {1e3, 1e4, 1e5, 1e6}) {
            const double r = wmh_integral(X, sieve_) / std::log(X);
            worst = std::max(worst, r / r0);
            if (r > 2.0 * r0) c.pass = false;
        }
        c.detail = "max ratio r(X)/r(1e3) = " + detail::fmt(worst);
        return c;
    }

    // --- criterion 9 -------------------------------------------------------
    CriterionResult property_suites() {
        CriterionResult c{"9", "property suites (Stirling, reflection, sieve oracle, zero count, evenness, CSV determinism)", true, ""};
        std::ostringstream note;
        // Stirling window: the residual of re log Gamma(1/4 - i g/2) against
        // -pi g/4 - (1/4) log g is O(1); its limit is log sqrt(2 pi) +
        // (log 2)/4 ~ 1.0922, so the honest window is 1.2 with stability
        // asserted across the range.
        {
            double lo = 1e30, hi = -1e30;
            for (double g = 10.0; g <= 500.0; g += 2.44140625) {
                const double r = log_gamma(complex_t(0.25, -0.5 * g)).real() +
                                 detail::kPi * g / 4.0 + 0.25 * std::log(g);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            const bool stable = (hi - lo) <= 0.01 && hi <= 1.2 && lo >= 0.9;
            if (!stable) c.pass = false;
            note << "stirling residual [" << detail::fmt(lo) << ", " << detail::fmt(hi)
                 << "] (limit 1.0922; the nominal 1.0 window is exceeded by the true constant)";
        }
        // reflection formula mod 2 pi i at 100 random points
        {
            std::mt19937 rng(271828);
            std::uniform_real_distribution<double> u(-20.0, 20.0);
            double worst = 0.0;
            int done = 0;
            while (done < 100) {
                complex_t s(u(rng), u(rng));
                if (std::abs(s.imag()) < 0.05) continue;  // stay off the pole line
                const complex_t d = log_gamma(s) + log_gamma(1.0 - s) -
                                    (std::log(complex_t(detail::kPi)) - detail::log_sin_pi(s));
                const double err = std::max(std::abs(d.real()),
                                            std::abs(std::remainder(d.imag(), 2.0 * detail::kPi)));
                worst = std::max(worst, err);
                ++done;
            }
            if (worst > 1e-9) c.pass = false;
            note << "; reflection worst " << detail::fmt(worst);
        }
        // functional-equation spot check: Z(t) is real
        {
            std::mt19937 rng(31415);
            std::uniform_real_distribution<double> u(1.0, 500.0);
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                const double t = u(rng);
                const complex_t z = zeta_critical(t);
                const double th = rs_theta(t);
                worst = std::max(worst, std::abs(z.real() * std::sin(th) + z.imag() * std::cos(th)));
            }
            if (worst > 1e-9) c.pass = false;
            note << "; Im(Z) worst " << detail::fmt(worst);
        }
        // sieve against brute-force factorization, and Mertens, up to 1e4
        {
            bool ok = true;
            std::int64_t m = 0;
            for (std::int64_t n = 1; n <= 10000; ++n) {
                std::int64_t v = n;
                int cnt = 0;
                bool squarefree = true;
                for (std::int64_t p = 2; p * p <= v; ++p) {
                    if (v % p == 0) {
                        v /= p;
                        ++cnt;
                        if (v % p == 0) { squarefree = false; break; }
                    }
                }
                const int brute = !squarefree ? 0 : ((v > 1 ? cnt + 1 : cnt) % 2 == 0 ? 1 : -1);
                if (brute != sieve_.mu(n)) { ok = false; break; }
                m += brute;
                if (n % 997 == 0 && m != mertens(static_cast<double>(n), sieve_)) { ok = false; break; }
            }
            if (!ok) c.pass = false;
            note << "; sieve oracle " << (ok ? "ok" : "FAILED");
        }
        // zero counts against the Riemann-von Mangoldt main term
        {
            double worst = 0.0;
            const auto& g = zeros500_.ordinates;
            for (std::size_t n = 1; n < g.size(); ++n) {
                const double T = 0.5 * (g[n - 1] + g[n]);
                worst = std::max(worst, std::abs(static_cast<double>(n) - zero_count_main_term(T)));
            }
            if (worst > 2.0) c.pass = false;
            note << "; zero-count worst dev " << detail::fmt(worst);
        }
        // density evenness at 1000 random points
        {
            std::vector<Coefficient> first10(coeffs500_.begin(), coeffs500_.begin() + 10);
            const auto g10 = geometry(first10, coefficient_tail_bound(zeros500_.ordinates[10]));
            const DensitySpec spec = density_spec(g10);
            std::mt19937 rng(999);
            std::uniform_real_distribution<double> u(0.0, 1.2 * g10.C);
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const double x = u(rng);
                worst = std::max(worst, std::abs(density(spec, x) - density(spec, -x)));
            }
            if (worst > 1e-12 / g10.C) c.pass = false;
            note << "; evenness worst " << detail::fmt(worst);
        }
        // CSV byte-identity for an identical figure configuration
        {
            auto pts = figure_grid(1.0, 10.0, opt_.quick ? 20 : 60, coeffs50_, 50, sieve_, 1e-9);
            std::ostringstream a, b;
            const std::vector<std::pair<std::string, std::string>> meta = {
                {"command", "figure"}, {"zeros", "embedded:50"}, {"K", "50"}};
            write_figure_csv(a, pts, meta);
            auto pts2 = figure_grid(1.0, 10.0, opt_.quick ? 20 : 60, coeffs50_, 50, sieve_, 1e-9);
            write_figure_csv(b, pts2, meta);
            const bool identical = a.str() == b.str() && !a.str().empty();
            if (!identical) c.pass = false;
            note << "; csv determinism " << (identical ? "ok" : "FAILED");
        }
        c.detail = note.str();
        return c;
    }

    const MobiusSieve& sieve() const { return sieve_; }
    const ZeroTable& zeros() const { return zeros500_; }

  private:
    AcceptanceOptions opt_;
    MobiusSieve sieve_;
    ZeroTable zeros500_;
    std::vector<Coefficient> coeffs500_;
    std::vector<Coefficient> coeffs50_;
};

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    AcceptanceSuite suite(opt);
    return suite.run_all();
}

}  // namespace muzeta
