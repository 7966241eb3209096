// special.hpp
//
// Special-function kernel: complex log-gamma, zeta on the critical line by
// Euler-Maclaurin summation with an explicit remainder bound, the derivative
// zeta'(1/2 + i*gamma) at a zero, zeta at odd integers, the Riemann-Siegel
// theta function and Hardy's Z, and the confluent hypergeometric series
// 1F1(k/2; 1/2; z).
//
// Everything here is a pure function of its arguments.  Internal coefficient
// tables are immutable constants; accumulation runs at long double precision
// where cancellation matters (near zeros of zeta on the line).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "muzeta/errors.hpp"
#include "muzeta/summation.hpp"

namespace muzeta {

using complex_t = std::complex<double>;

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr long double kPiL = 3.14159265358979323846264338327950288L;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364;  // log(sqrt(2*pi))

// Lanczos coefficients, g = 607/128, n = 15 (Godfrey's set).  Relative error
// of the rational part is below 1e-15 on Re(s) >= 1/2.
inline constexpr double kLanczosG = 4.7421875;
inline constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

template <typename T>
inline bool is_finite(const std::complex<T>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// log(sin(pi*z)) stable for large |Im z|; principal-ish branch, adequate for
// use inside the reflection formula (callers only need the value mod 2*pi*i).
inline complex_t log_sin_pi(complex_t z) {
    const complex_t w = kPi * z;
    const double y = w.imag();
    if (std::abs(y) < 8.0) return std::log(std::sin(w));
    const complex_t i(0.0, 1.0);
    if (y > 0.0) {
        // sin w = -e^{-iw} (1 - e^{2iw}) / (2i), |e^{2iw}| = e^{-2y} < 1,
        // and -1/(2i) = i/2.
        return -i * w + std::log(1.0 - std::exp(2.0 * i * w)) +
               std::log(complex_t(0.0, 0.5));
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// log_gamma: principal-branch log Gamma(s) for complex s, Lanczos
// approximation with reflection for Re(s) < 1/2.
// ---------------------------------------------------------------------------
inline complex_t log_gamma(complex_t s) {
    using namespace detail;
    if (!is_finite(s)) throw domain_error("log_gamma: non-finite argument");
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
        throw domain_error("log_gamma: pole at nonpositive integer " +
                           std::to_string(static_cast<long>(s.real())));
    if (s.real() < 0.5) {
        // Gamma(s) Gamma(1-s) = pi / sin(pi s)
        return std::log(complex_t(kPi)) - log_sin_pi(s) - log_gamma(1.0 - s);
    }
    const complex_t z = s - 1.0;
    complex_t series(kLanczos[0], 0.0);
    for (std::size_t k = 1; k < kLanczos.size(); ++k)
        series += kLanczos[k] / (z + static_cast<double>(k));
    const complex_t t = z + kLanczosG + 0.5;
    complex_t result =
        (z + 0.5) * std::log(t) - t + kLogSqrt2Pi + std::log(series);
    if (!is_finite(result)) throw numerical_error("log_gamma: non-finite result");
    return result;
}

// ---------------------------------------------------------------------------
// zeta_critical: zeta(1/2 + i t) for 0 <= t <= 10000 by Euler-Maclaurin with
// an explicit remainder bound driven below 1e-12.  Accumulation is done in
// long double because the partial sums cancel heavily near zeros.
// ---------------------------------------------------------------------------
namespace detail {

// B_{2k} / (2k)! for 2k = 2..30 as exact rationals evaluated in long double.
inline constexpr int kMaxBernoulli = 15;
inline const std::array<long double, kMaxBernoulli + 1> kB2kOver2kFact = [] {
    std::array<long double, kMaxBernoulli + 1> b{};
    const long double num[kMaxBernoulli + 1] = {
        0.0L, 1.0L / 6.0L, -1.0L / 30.0L, 1.0L / 42.0L, -1.0L / 30.0L,
        5.0L / 66.0L, -691.0L / 2730.0L, 7.0L / 6.0L, -3617.0L / 510.0L,
        43867.0L / 798.0L, -174611.0L / 330.0L, 854513.0L / 138.0L,
        -236364091.0L / 2730.0L, 8553103.0L / 6.0L, -23749461029.0L / 870.0L,
        8615841276005.0L / 14322.0L};
    long double fact = 1.0L;
    for (int k = 0; k <= kMaxBernoulli; ++k) {
        if (k > 0) fact *= static_cast<long double>(2 * k - 1) * (2 * k);
        b[static_cast<std::size_t>(k)] = (k == 0) ? 0.0L : num[k] / fact;
    }
    return b;
}();

using complex_ld = std::complex<long double>;

// Euler-Maclaurin evaluation of zeta(s), s = sigma + i t with sigma in (0, 2],
// t >= 0.  Returns the value; writes the remainder bound actually achieved.
inline complex_ld zeta_em(long double sigma, long double t, int terms,
                          long double* remainder_out = nullptr) {
    const complex_ld s(sigma, t);
    const complex_ld one(1.0L, 0.0L);
    const int N = terms;
    complex_ld sum(0.0L, 0.0L);
    // main sum 1..N-1, summed downward so small terms enter first
    for (int n = N - 1; n >= 1; --n) {
        const long double ln = std::log(static_cast<long double>(n));
        const long double mag = std::exp(-sigma * ln);
        sum += complex_ld(mag * std::cos(t * ln), -mag * std::sin(t * ln));
    }
    const long double lnN = std::log(static_cast<long double>(N));
    const long double NmS = std::exp(-sigma * lnN);  // |N^{-s}|
    const complex_ld N_minus_s(NmS * std::cos(t * lnN), -NmS * std::sin(t * lnN));
    const long double Nld = static_cast<long double>(N);
    sum += N_minus_s * Nld / (s - one);  // N^{1-s} / (s-1)
    sum += N_minus_s * 0.5L;
    // correction terms: T_k = B_{2k}/(2k)! * (s)(s+1)...(s+2k-2) * N^{-s-2k+1}.
    // Backlund's remainder bound after K terms: |T_{K+1}| * |s+2K+1|/(sigma+2K+1).
    complex_ld rising = s;              // (s)(s+1)...(s+2k-2), k = 1
    complex_ld npow = N_minus_s / Nld;  // N^{-s-2k+1},          k = 1
    long double last_bound = 1.0L;
    for (int k = 1; k < kMaxBernoulli; ++k) {
        sum += kB2kOver2kFact[static_cast<std::size_t>(k)] * rising * npow;
        const complex_ld rising_next =
            rising * (s + complex_ld(2.0L * k - 1.0L)) * (s + complex_ld(2.0L * k));
        const complex_ld npow_next = npow / (Nld * Nld);
        const long double next_term_mag =
            std::abs(kB2kOver2kFact[static_cast<std::size_t>(k + 1)]) *
            std::abs(rising_next) * std::abs(npow_next);
        last_bound = next_term_mag *
                     std::abs(s + complex_ld(2.0L * k + 1.0L)) / (sigma + 2.0L * k + 1.0L);
        if (last_bound < 1e-14L && k >= 3) break;
        rising = rising_next;
        npow = npow_next;
    }
    if (remainder_out) *remainder_out = last_bound;
    return sum;
}

// Choose the main-sum length so the correction series converges fast: the
// term ratio is roughly ((|s| + 2k) / (2 pi N))^2.
inline int zeta_em_terms(long double t) {
    const long double needed = 0.9L * t + 24.0L;
    return static_cast<int>(needed);
}

}  // namespace detail

inline complex_t zeta_critical(double t) {
    using namespace detail;
    if (!std::isfinite(t) || t < 0.0 || t > 10000.0)
        throw range_error("zeta_critical: t must lie in [0, 10000], got " +
                          std::to_string(t));
    int terms = zeta_em_terms(static_cast<long double>(t));
    long double bound = 0.0L;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const complex_ld z =
            zeta_em(0.5L, static_cast<long double>(t), terms, &bound);
        if (bound <= 1e-12L)
            return complex_t(static_cast<double>(z.real()),
                             static_cast<double>(z.imag()));
        terms *= 2;
    }
    throw numerical_error("zeta_critical: remainder bound " +
                          std::to_string(static_cast<double>(bound)) +
                          " did not reach 1e-12 at t = " + std::to_string(t));
}

// ---------------------------------------------------------------------------
// Riemann-Siegel theta and Hardy's Z.  Z(t) = e^{i theta(t)} zeta(1/2 + it)
// is real and changes sign at the ordinates of the critical-line zeros.
// ---------------------------------------------------------------------------
inline double rs_theta(double t) {
    // theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi
    const complex_t lg = log_gamma(complex_t(0.25, 0.5 * t));
    return lg.imag() - 0.5 * t * std::log(detail::kPi);
}

namespace detail {

// Long-double theta for the zero scanner: asymptotic series for t >= 16,
// double-precision Lanczos route below (only the sign of Z matters there).
inline long double rs_theta_ld(long double t) {
    if (t < 16.0L) return static_cast<long double>(rs_theta(static_cast<double>(t)));
    const long double u = t / 2.0L;
    long double th = u * std::log(u / kPiL) - u - kPiL / 8.0L;
    const long double t2 = t * t;
    th += 1.0L / (48.0L * t) + 7.0L / (5760.0L * t * t2) +
          31.0L / (80640.0L * t2 * t2 * t) + 127.0L / (430080.0L * t2 * t2 * t2 * t);
    return th;
}

inline long double hardy_z_ld(long double t) {
    long double bound = 0.0L;
    const complex_ld z = zeta_em(0.5L, t, zeta_em_terms(t), &bound);
    const long double th = rs_theta_ld(t);
    return z.real() * std::cos(th) - z.imag() * std::sin(th);
}

}  // namespace detail

inline double hardy_z(double t) {
    const complex_t z = zeta_critical(t);
    const double th = rs_theta(t);
    return z.real() * std::cos(th) - z.imag() * std::sin(th);
}

// ---------------------------------------------------------------------------
// zeta_prime_at_zero: zeta'(1/2 + i gamma) at a zero ordinate, by
// Richardson-extrapolated central differences of zeta_critical.
// The result must be nonzero: all zeros in range are simple, so a vanishing
// derivative flags a bad input ordinate.
// ---------------------------------------------------------------------------
inline complex_t zeta_prime_at_zero(double gamma) {
    if (!(gamma > 0.0)) throw precondition_error("zeta_prime_at_zero: gamma must be positive");
    const complex_t i(0.0, 1.0);
    auto diff = [&](double h) {
        // d/dt zeta(1/2+it) = i zeta'(s)  =>  zeta'(s) = -i * central difference
        return -i * (zeta_critical(gamma + h) - zeta_critical(gamma - h)) / (2.0 * h);
    };
    const complex_t d1 = diff(1e-4);
    const complex_t d2 = diff(5e-5);
    const complex_t d3 = diff(2.5e-5);
    const complex_t r1 = (4.0 * d2 - d1) / 3.0;
    const complex_t r2 = (4.0 * d3 - d2) / 3.0;
    const complex_t result = (16.0 * r2 - r1) / 15.0;
    if (std::abs(result) < 1e-12)
        throw simplicity_error(
            "zeta_prime_at_zero: derivative magnitude below 1e-12 at gamma = " +
            std::to_string(gamma) + "; input is not a simple-zero ordinate");
    return result;
}

// ---------------------------------------------------------------------------
// zeta_odd: zeta(m) for odd m in [3, 201] by direct summation, truncated when
// the integral tail bound N^{1-m}/(m-1) drops below 5e-16.
// ---------------------------------------------------------------------------
inline double zeta_odd(int m) {
    if (m < 3 || m > 201 || m % 2 == 0)
        throw domain_error("zeta_odd: m must be odd and in [3, 201], got " +
                           std::to_string(m));
    // cutoff: N^{1-m}/(m-1) <= 5e-16
    const double target = 5e-16;
    std::int64_t N = static_cast<std::int64_t>(
        std::ceil(std::pow((m - 1) * target, -1.0 / (m - 1))));
    N = std::max<std::int64_t>(N, 8);
    muzeta::KahanSum<long double> acc;
    for (std::int64_t n = N; n >= 1; --n)
        acc.add(std::pow(static_cast<long double>(n), -static_cast<long double>(m)));
    return static_cast<double>(acc.value());
}

// zeta(2k+1) for k = 1..100, computed once and cached (immutable after init).
inline double zeta_odd_cached(int m) {
    static const std::array<double, 100> table = [] {
        std::array<double, 100> t{};
        for (int k = 1; k <= 100; ++k) t[static_cast<std::size_t>(k - 1)] = zeta_odd(2 * k + 1);
        return t;
    }();
    if (m < 3 || m > 201 || m % 2 == 0)
        throw domain_error("zeta_odd: m must be odd and in [3, 201], got " +
                           std::to_string(m));
    return table[static_cast<std::size_t>((m - 3) / 2)];
}

// ---------------------------------------------------------------------------
// hyp1f1_half: 1F1(k/2; 1/2; z) for |z| <= 50.  For well-negative real part
// the Kummer transform 1F1(a;b;z) = e^z 1F1(b-a;b;-z) avoids cancellation.
// ---------------------------------------------------------------------------
namespace detail {

inline complex_t hyp1f1_series(double a, double b, complex_t z, int max_terms) {
    complex_t term(1.0, 0.0);
    complex_t sum(1.0, 0.0);
    for (int j = 0; j < max_terms; ++j) {
        term *= (a + j) * z / ((b + j) * (j + 1.0));
        sum += term;
        if (std::abs(term) < 1e-16 * (1.0 + std::abs(sum))) return sum;
    }
    throw convergence_error("hyp1f1: series did not converge within " +
                            std::to_string(max_terms) + " terms, |z| = " +
                            std::to_string(std::abs(z)));
}

}  // namespace detail

inline complex_t hyp1f1_half(double k, complex_t z, int max_terms = 500) {
    if (!(k >= 1.0)) throw precondition_error("hyp1f1_half: k must be >= 1");
    if (!detail::is_finite(z) || std::abs(z) > 50.0)
        throw range_error("hyp1f1_half: |z| must be <= 50");
    const double a = 0.5 * k;
    const double b = 0.5;
    if (z.real() < -1.0)
        return std::exp(z) * detail::hyp1f1_series(b - a, b, -z, max_terms);
    return detail::hyp1f1_series(a, b, z, max_terms);
}

}  // namespace muzeta
