// mobius.hpp
//
// Mobius function by linear sieve, Mertens partial sums, the exact
// piecewise integral of (M(x)/x)^2, and the absolutely convergent
// evaluation of
//
//     F(b) = sum_{n>=1} mu(n)/n * e^{-(b/n)^2}.
//
// F is always computed through the subtracted form
//
//     F(b) = sum_{n<=N} mu(n)/n * (e^{-(b/n)^2} - 1),
//
// which is legitimate because sum mu(n)/n = 0 and has O(b^2/n^3) terms, so
// the truncation error carries the explicit bound b^2 / (2 N^2).

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "muzeta/errors.hpp"
#include "muzeta/summation.hpp"

namespace muzeta {

class MobiusSieve {
  public:
    static constexpr std::int64_t kMaxLimit = 100000000;  // 10^8

    explicit MobiusSieve(std::int64_t limit) : limit_(limit) {
        if (limit < 1 || limit > kMaxLimit)
            throw capacity_error("MobiusSieve: limit must be in [1, 1e8], got " +
                                 std::to_string(limit));
        mu_.assign(static_cast<std::size_t>(limit) + 1, 1);
        mu_[0] = 0;
        std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
        std::vector<std::int32_t> primes;
        for (std::int64_t i = 2; i <= limit; ++i) {
            if (!composite[static_cast<std::size_t>(i)]) {
                primes.push_back(static_cast<std::int32_t>(i));
                mu_[static_cast<std::size_t>(i)] = -1;
            }
            for (std::int32_t p : primes) {
                const std::int64_t ip = i * p;
                if (ip > limit) break;
                composite[static_cast<std::size_t>(ip)] = true;
                if (i % p == 0) {
                    mu_[static_cast<std::size_t>(ip)] = 0;
                    break;
                }
                mu_[static_cast<std::size_t>(ip)] =
                    static_cast<std::int8_t>(-mu_[static_cast<std::size_t>(i)]);
            }
        }
    }

    std::int64_t limit() const { return limit_; }

    int mu(std::int64_t n) const {
        if (n < 1 || n > limit_)
            throw capacity_error("MobiusSieve::mu: n = " + std::to_string(n) +
                                 " outside sieve limit " + std::to_string(limit_));
        return mu_[static_cast<std::size_t>(n)];
    }

    // unchecked access for hot loops
    const std::int8_t* data() const { return mu_.data(); }

  private:
    std::int64_t limit_;
    std::vector<std::int8_t> mu_;
};

// M(x) = sum_{n <= x} mu(n).
inline std::int64_t mertens(double x, const MobiusSieve& sieve) {
    if (!(x >= 1.0)) throw precondition_error("mertens: x must be >= 1");
    const std::int64_t nx = static_cast<std::int64_t>(std::floor(x));
    if (nx > sieve.limit())
        throw capacity_error("mertens: floor(x) = " + std::to_string(nx) +
                             " exceeds sieve limit " + std::to_string(sieve.limit()));
    std::int64_t m = 0;
    const std::int8_t* mu = sieve.data();
    for (std::int64_t n = 1; n <= nx; ++n) m += mu[n];
    return m;
}

// Exact value of the integral from 1 to X of (M(x)/x)^2 dx.  M is a step
// function, so each piece [n, n+1) contributes M(n)^2 (1/n - 1/(n+1)).
inline double wmh_integral(double X, const MobiusSieve& sieve) {
    if (!(X >= 1.0)) throw precondition_error("wmh_integral: X must be >= 1");
    if (X > static_cast<double>(sieve.limit()))
        throw capacity_error("wmh_integral: X = " + std::to_string(X) +
                             " exceeds sieve limit " + std::to_string(sieve.limit()));
    const std::int64_t nx = static_cast<std::int64_t>(std::floor(X));
    const std::int8_t* mu = sieve.data();
    KahanSum<long double> acc;
    std::int64_t m = 0;
    for (std::int64_t n = 1; n < nx; ++n) {
        m += mu[n];
        const long double md = static_cast<long double>(m);
        acc.add(md * md * (1.0L / n - 1.0L / (n + 1)));
    }
    m += mu[nx];
    const long double md = static_cast<long double>(m);
    acc.add(md * md * (1.0L / nx - 1.0L / static_cast<long double>(X)));
    return static_cast<double>(acc.value());
}

namespace detail {

// expm1(-x) for 0 <= x <= 0.04 by a short Horner polynomial; relative error
// below 3e-14, cheap enough for 1e8-term loops.
inline double expm1_neg_small(double x) {
    return -x * (1.0 - x / 2.0 * (1.0 - x / 3.0 * (1.0 - x / 4.0 *
                 (1.0 - x / 5.0 * (1.0 - x / 6.0)))));
}

inline double f_term(double b2, const std::int8_t* mu, std::int64_t n) {
    const int m = mu[n];
    if (m == 0) return 0.0;
    const double inv = 1.0 / static_cast<double>(n);
    const double x = b2 * inv * inv;
    double e;
    if (x > 745.0) {
        e = -1.0;  // e^{-x} underflows; the term is exactly -mu/n
    } else if (x < 0.04) {
        e = expm1_neg_small(x);
    } else {
        e = std::expm1(-x);
    }
    return (m > 0) ? inv * e : -inv * e;
}

}  // namespace detail

// Cutoff for the subtracted form: tail bound b^2 sum_{n>N} n^{-3} <= b^2/(2N^2).
inline std::int64_t f_direct_cutoff(double b, double tol) {
    const double n = std::ceil(b * std::sqrt(0.5 / tol));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

// F(b) within tol.  Throws capacity_error when the required cutoff exceeds
// the sieve.
inline double f_direct(double b, const MobiusSieve& sieve, double tol) {
    if (!(b > 0.0)) throw precondition_error("f_direct: b must be positive");
    if (!(tol > 0.0)) throw precondition_error("f_direct: tol must be positive");
    const std::int64_t N = f_direct_cutoff(b, tol);
    if (N > sieve.limit())
        throw capacity_error("f_direct: cutoff " + std::to_string(N) + " for b = " +
                             std::to_string(b) + ", tol = " + std::to_string(tol) +
                             " exceeds sieve limit " + std::to_string(sieve.limit()) +
                             " (minimum achievable tol is b^2/(2 limit^2))");
    const double b2 = b * b;
    const std::int8_t* mu = sieve.data();
    return chunked_sum(1, N, [b2, mu](std::int64_t n) {
        return detail::f_term(b2, mu, n);
    });
}

// Smallest tolerance f_direct can certify for this b with this sieve.  The
// tiny bump keeps the cutoff at or below the limit after rounding.
inline double f_direct_min_tol(double b, const MobiusSieve& sieve) {
    const double L = static_cast<double>(sieve.limit());
    return b * b / (2.0 * L * L) * (1.0 + 1e-9);
}

}  // namespace muzeta
