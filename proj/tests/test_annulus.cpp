#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "muzeta/annulus.hpp"

using namespace muzeta;

namespace {

Coefficient synthetic(double gamma, double magnitude) {
    Coefficient c;
    c.gamma = gamma;
    c.value = {magnitude, 0.0};
    c.magnitude = magnitude;
    c.log_magnitude = std::log(magnitude);
    return c;
}

}  // namespace

TEST_CASE("rank_coefficients ordering and ties") {
    const auto ranked10 = rank_coefficients(coefficients_for(load_embedded(10), 1.0));
    for (std::size_t i = 0; i < ranked10.size(); ++i)
        CHECK(ranked10[i].gamma ==
              load_embedded(10).ordinates[i]);  // already ordinate-ordered
    const auto tied = rank_coefficients({synthetic(30.0, 1.0), synthetic(20.0, 1.0)});
    CHECK(tied[0].gamma == 20.0);
    const auto single = rank_coefficients({synthetic(14.1, 2.0)});
    CHECK(single.size() == 1);
    CHECK_THROWS_AS(rank_coefficients({}), muzeta::precondition_error);
}

TEST_CASE("geometry arithmetic and classification") {
    const auto g = geometry({synthetic(10, 3.0), synthetic(11, 1.0), synthetic(12, 1.0)}, 0.0);
    CHECK(g.C == doctest::Approx(5.0));
    CHECK(g.c == doctest::Approx(1.0));
    CHECK(g.classification == RegionShape::annulus);

    const auto disk = geometry({synthetic(10, 2.0), synthetic(11, 1.5), synthetic(12, 1.4)}, 0.0);
    CHECK(disk.classification == RegionShape::disk);
    CHECK(disk.C == doctest::Approx(4.9));

    // |c| inside the tail bound: refuse to classify
    CHECK_THROWS_AS(geometry({synthetic(10, 1.0), synthetic(11, 1.0)}, 1e-12),
                    muzeta::indeterminate_error);
    // unranked input rejected
    CHECK_THROWS_AS(geometry({synthetic(10, 1.0), synthetic(11, 2.0)}, 0.0),
                    muzeta::precondition_error);
}

TEST_CASE("geometry monotonicity under adding a coefficient") {
    auto coeffs = rank_coefficients(coefficients_for(load_embedded(11), 1.0));
    std::vector<Coefficient> ten(coeffs.begin(), coeffs.begin() + 10);
    const auto g10 = geometry(ten, 0.0);
    const auto g11 = geometry(coeffs, 0.0);
    const double m = coeffs[10].magnitude;
    CHECK(g11.C - g10.C == doctest::Approx(m).epsilon(1e-9));
    CHECK(g10.c - g11.c == doctest::Approx(m).epsilon(1e-9));
}

TEST_CASE("density formulas, boundaries, and normalization") {
    const auto ranked = rank_coefficients(coefficients_for(load_embedded(10), 1.0));
    const auto g = geometry(ranked, coefficient_tail_bound(52.97));
    const auto spec = density_spec(g);
    CHECK(density(spec, g.C) == 0.0);
    CHECK(density(spec, -g.C) == 0.0);
    CHECK(density(spec, 1.000001 * g.C) == 0.0);
    CHECK(std::abs(density_integral(spec) - 1.0) < 1e-9);

    const DensitySpec disk{2.0, 0.0, RegionShape::disk};
    CHECK(density(disk, 0.0) == doctest::Approx(2.0 / (detail::kPi * 2.0)).epsilon(1e-14));
    CHECK(std::abs(density_integral(disk) - 1.0) < 1e-12);

    DensitySpec bad{1.0, 1.5, RegionShape::annulus};
    CHECK_THROWS_AS(density(bad, 0.0), muzeta::precondition_error);
}

TEST_CASE("density is even") {
    const auto ranked = rank_coefficients(coefficients_for(load_embedded(10), 1.0));
    const auto spec = density_spec(geometry(ranked, coefficient_tail_bound(52.97)));
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.2 * spec.C);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        CHECK(density(spec, x) == density(spec, -x));
    }
}

TEST_CASE("density CDF endpoints and monotonicity") {
    const auto ranked = rank_coefficients(coefficients_for(load_embedded(10), 1.0));
    const auto spec = density_spec(geometry(ranked, coefficient_tail_bound(52.97)));
    CHECK(density_cdf(spec, -spec.C) == 0.0);
    CHECK(density_cdf(spec, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(density_cdf(spec, spec.C) == doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(-spec.C, spec.C);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        CHECK(density_cdf(spec, a) <= density_cdf(spec, b) + 1e-15);
    }
}

TEST_CASE("second moment constant") {
    CHECK(second_moment_constant({synthetic(10, 2.0)}) == doctest::Approx(2.0));
    const auto c500 = rank_coefficients(coefficients_for(load_embedded(500), 1.0));
    std::vector<Coefficient> c10(c500.begin(), c500.begin() + 10);
    const double A1 = second_moment_constant({c500.front()});
    CHECK(A1 == doctest::Approx(0.5 * 2.9255e-5 * 2.9255e-5).epsilon(1e-3));
    CHECK(std::abs(second_moment_constant(c500) - second_moment_constant(c10)) /
              second_moment_constant(c10) <
          1e-9);
    // order-free
    auto shuffled = c10;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(3));
    CHECK(second_moment_constant(shuffled) ==
          doctest::Approx(second_moment_constant(c10)).epsilon(1e-14));
    CHECK_THROWS_AS(second_moment_constant({}), muzeta::precondition_error);
}

TEST_CASE("second_moment_fit calibration on known integrands") {
    // F = x^{-1/2}: integral is log X exactly, slope 1
    const auto syn = second_moment_fit([](double x) { return 1.0 / std::sqrt(x); },
                                       {1e2, 316.22776601683793, 1e3, 3162.2776601683795, 1e4});
    CHECK(std::abs(syn.fitted_slope - 1.0) < 1e-3);
    CHECK(syn.integral == doctest::Approx(std::log(1e4)).epsilon(1e-9));
    // F = x: integral (X^3-1)/3
    const auto cube = second_moment_fit([](double x) { return x; }, {2.0, 4.0});
    CHECK(cube.integral == doctest::Approx((64.0 - 1.0) / 3.0).epsilon(1e-9));
    CHECK_THROWS_AS(second_moment_fit([](double) { return 1.0; }, {}),
                    muzeta::precondition_error);
    CHECK_THROWS_AS(second_moment_fit([](double) { return 1.0; }, {0.5, 2.0}),
                    muzeta::precondition_error);
}

TEST_CASE("empirical second moment grows and reports the model constant") {
    const MobiusSieve sieve(1000000);
    const auto zeros = load_embedded(20);
    const auto r10 = empirical_second_moment(10.0, zeros, sieve);
    const auto r100 = empirical_second_moment(100.0, zeros, sieve);
    CHECK(r100.integral > r10.integral);  // nonnegative integrand
    CHECK(r10.model_A == doctest::Approx(4.2795e-10).epsilon(1e-3));
    CHECK_THROWS_AS(empirical_second_moment(5.0, zeros, sieve), muzeta::precondition_error);
}

TEST_CASE("distribution_compare obeys the envelope and its KS trend") {
    const auto zeros = load_embedded(50);
    const MobiusSieve sieve(10000000);
    CHECK_THROWS_AS(distribution_compare(1.0, 100.0, 200, zeros, sieve),
                    muzeta::precondition_error);
    CHECK_THROWS_AS(distribution_compare(4.0, 100.0, 50, zeros, sieve),
                    muzeta::precondition_error);

    const auto rep = distribution_compare(detail::kPi + 1e-3, 1e4, 2000, zeros, sieve);
    const double cap = rep.geometry.C + rep.correction_budget + 1e-9;
    CHECK(rep.observed_max <= cap);
    CHECK(rep.observed_min >= -cap);
    CHECK(rep.observed_max >= 0.8 * rep.geometry.C);
    CHECK(rep.ks_distance > 0.0);
    CHECK(rep.ks_distance <= 1.0);
    CHECK(rep.direct_checks > 0);

    // identical configuration, identical samples
    const auto rep2 = distribution_compare(detail::kPi + 1e-3, 1e4, 2000, zeros, sieve);
    CHECK(rep.sample_value == rep2.sample_value);
    CHECK(rep.ks_distance == rep2.ks_distance);
}

TEST_CASE("KS distance shrinks as range and sample count grow") {
    const auto zeros = load_embedded(50);
    const MobiusSieve sieve(10000000);
    const auto d1 = distribution_compare(detail::kPi + 1e-3, 1e4, 2000, zeros, sieve);
    const auto d2 = distribution_compare(100.0, 1e5, 20000, zeros, sieve);
    const auto d3 = distribution_compare(100.0, 1e6, 100000, zeros, sieve);
    CHECK(d2.ks_distance < d1.ks_distance);
    CHECK(d3.ks_distance < d2.ks_distance);
    // the observed maximum pushes into the outer rim
    CHECK(d3.observed_max >= 0.8 * d3.geometry.C);
}
