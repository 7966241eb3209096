#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "muzeta/mobius.hpp"
#include "muzeta/special.hpp"
#include "muzeta/summation.hpp"

using namespace muzeta;

namespace {

// trial-division oracle
int mu_brute(std::int64_t n) {
    int cnt = 0;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            ++cnt;
            if (n % p == 0) return 0;
        }
    }
    if (n > 1) ++cnt;
    return cnt % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("sieve values and capacity") {
    CHECK_THROWS_AS(MobiusSieve(0), muzeta::capacity_error);
    CHECK_THROWS_AS(MobiusSieve(MobiusSieve::kMaxLimit + 1), muzeta::capacity_error);
    const MobiusSieve s(30);
    const int want[11] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
    for (int n = 1; n <= 10; ++n) CHECK(s.mu(n) == want[n]);
    CHECK(s.mu(30) == -1);  // 2*3*5
    CHECK_THROWS_AS(s.mu(31), muzeta::capacity_error);
    CHECK_THROWS_AS(s.mu(0), muzeta::capacity_error);
}

TEST_CASE("sieve matches trial division up to 1e4 and divisor sums vanish") {
    const MobiusSieve s(10000);
    for (std::int64_t n = 1; n <= 10000; ++n) CHECK(s.mu(n) == mu_brute(n));
    // sum over divisors of mu is zero for n >= 2 (spot check)
    for (std::int64_t n = 2; n <= 2000; ++n) {
        int sum = 0;
        for (std::int64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            sum += s.mu(d);
            if (d * d != n) sum += s.mu(n / d);
        }
        CHECK(sum == 0);
    }
}

TEST_CASE("mertens") {
    const MobiusSieve s(100000);
    CHECK(mertens(1.0, s) == 1);
    CHECK(mertens(2.0, s) == 0);
    CHECK(mertens(10.0, s) == -1);
    CHECK(mertens(30.0, s) == -3);
    CHECK(mertens(10.7, s) == -1);  // floor semantics
    std::int64_t running = 0;
    for (int n = 1; n <= 10000; ++n) running += mu_brute(n);
    CHECK(mertens(10000.0, s) == running);
    CHECK_THROWS_AS(mertens(1e6, s), muzeta::capacity_error);
    CHECK_THROWS_AS(mertens(0.5, s), muzeta::precondition_error);
}

TEST_CASE("wmh integral exact pieces") {
    const MobiusSieve s(1000);
    CHECK(wmh_integral(2.0, s) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(wmh_integral(3.0, s) == doctest::Approx(0.5).epsilon(1e-15));
    // M = -1 on [3,4): adds 1/3 - 1/3.5 over [3, 3.5]
    CHECK(wmh_integral(3.5, s) ==
          doctest::Approx(0.5 + (1.0 / 3.0 - 1.0 / 3.5)).epsilon(1e-14));
    CHECK_THROWS_AS(wmh_integral(2000.0, s), muzeta::capacity_error);
}

TEST_CASE("wmh integral agrees with composite Gauss quadrature on each piece") {
    const std::int64_t X = 1000000;
    const MobiusSieve s(X);
    const double got = wmh_integral(static_cast<double>(X), s);
    // per-unit-interval 5-point Gauss: M is constant on [n, n+1), so this is
    // an independent high-order route to the same integral (~5e6 samples)
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                                 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    KahanSum<long double> acc;
    std::int64_t m = 0;
    const std::int8_t* mu = s.data();
    for (std::int64_t n = 1; n < X; ++n) {
        m += mu[n];
        const double m2 = static_cast<double>(m) * static_cast<double>(m);
        if (m2 == 0.0) continue;
        double piece = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double x = static_cast<double>(n) + 0.5 + 0.5 * gx[i];
            piece += gw[i] / (x * x);
        }
        acc.add(0.5L * m2 * piece);
    }
    const double oracle = static_cast<double>(acc.value());
    CHECK(std::abs(got - oracle) / oracle < 1e-6);
}

TEST_CASE("wmh ratio to log X stays bounded on the decade grid") {
    const MobiusSieve s(1000000);
    double prev_bound = 0.0;
    const double r100 = wmh_integral(100.0, s) / std::log(100.0);
    for (double X : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double r = wmh_integral(X, s) / std::log(X);
        CHECK(r <= r100 * 1.0 + 1e-12);  // decreasing on this grid
        prev_bound = r;
    }
    CHECK(prev_bound > 0.0);
}

TEST_CASE("f_direct basics and certified cutoff") {
    const MobiusSieve s(10000000);
    CHECK(std::abs(f_direct(1e-6, s, 1e-12)) < 1e-10);
    CHECK_THROWS_AS(f_direct(10.0, s, 0.0), muzeta::precondition_error);
    CHECK_THROWS_AS(f_direct(-1.0, s, 1e-9), muzeta::precondition_error);
    CHECK_THROWS_AS(f_direct(1000.0, s, 1e-12), muzeta::capacity_error);
    CHECK(f_direct_cutoff(10.0, 1e-10) == 707107);
    // min tol keeps the cutoff within the sieve
    const double tol = f_direct_min_tol(9000.0, s);
    CHECK(f_direct_cutoff(9000.0, tol) <= s.limit());
}

TEST_CASE("f_direct against a long-double brute-force sum at b = pi") {
    const MobiusSieve s(10000000);
    KahanSum<long double> acc;
    for (std::int64_t n = 10000000; n >= 1; --n) {
        const int m = s.mu(n);
        if (!m) continue;
        long double x = 3.14159265358979323846L / n;
        x *= x;
        acc.add(m * std::expm1(-x) / static_cast<long double>(n));
    }
    const double brute = static_cast<double>(acc.value());
    CHECK(std::abs(f_direct(detail::kPi, s, 1e-10) - brute) < 1e-10);
}

TEST_CASE("subtracted form agrees with raw partial sums up to the known drift") {
    // raw partial sums S_N = sum_{n<=N} mu(n) e^{-(b/n)^2} / n differ from
    // F(b) by m_N = sum_{n<=N} mu(n)/n, which decays slowly; averaging over a
    // dyadic window leaves a remainder far above machine precision, so the
    // assertion budget is 5e-4, not the naive machine-level figure.
    const MobiusSieve s(2000000);
    for (double b : {1.0, 2.0, 5.0}) {
        const double f = f_direct(b, s, 1e-11);
        KahanSum<long double> raw;
        KahanSum<long double> mN;
        long double cesaro = 0.0L;
        std::int64_t window = 0;
        for (std::int64_t n = 1; n <= 1000000; ++n) {
            const int m = s.mu(n);
            if (m) {
                long double x = static_cast<long double>(b) / n;
                x *= x;
                raw.add(m * std::exp(-x) / static_cast<long double>(n));
                mN.add(static_cast<long double>(m) / n);
            }
            if (n > 500000) {
                cesaro += raw.value();
                ++window;
            }
        }
        const double averaged = static_cast<double>(cesaro / window);
        CHECK(std::abs(averaged - f) < 5e-4);
        // the identity S_N - m_N = subtracted partial sum holds to roundoff
        const double identity =
            static_cast<double>(raw.value() - mN.value());
        const double tail_bound = b * b / (2.0 * 1e12);
        CHECK(std::abs(identity - f) < tail_bound + 1e-10);
    }
}

TEST_CASE("chunked_sum matches straight Kahan summation") {
    std::vector<double> v(250000);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& x : v) x = u(rng);
    KahanSum<double> plain;
    for (double x : v) plain.add(x);
    const double chunked = chunked_sum(
        0, static_cast<std::int64_t>(v.size()) - 1,
        [&](std::int64_t i) { return v[static_cast<std::size_t>(i)]; }, 1 << 12);
    CHECK(std::abs(chunked - plain.value()) < 1e-12);
    // identical call, identical bytes
    const double again = chunked_sum(
        0, static_cast<std::int64_t>(v.size()) - 1,
        [&](std::int64_t i) { return v[static_cast<std::size_t>(i)]; }, 1 << 12);
    CHECK(chunked == again);
}
