#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "heis/special_fn.hpp"

using namespace heis;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

// Brute-force oracle: explicit degree-5 Hermite polynomial from the Rodrigues
// definition, exact rational coefficients.
double h5_oracle(double u) {
    const double H5 = 32.0 * std::pow(u, 5) - 160.0 * std::pow(u, 3) + 120.0 * u;
    const double norm = std::sqrt(std::sqrt(kPi) * 32.0 * 120.0);
    return H5 * std::exp(-0.5 * u * u) / norm;
}

// Explicit degree-4 Laguerre polynomial times e^{-v/2}.
double laguerre4_oracle(double v) {
    const double L4 = (24.0 - 96.0 * v + 72.0 * v * v - 16.0 * v * v * v + v * v * v * v) / 24.0;
    return L4 * std::exp(-0.5 * v);
}
}  // namespace

TEST_CASE("hermite_fn pinned values") {
    CHECK(hermite_fn(0, 0.0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-12));
    CHECK(hermite_fn(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-12));
    CHECK(hermite_fn(1, 0.0) == doctest::Approx(0.0));
    CHECK(hermite_fn(5, 1.3) == doctest::Approx(h5_oracle(1.3)).epsilon(1e-12));
}

TEST_CASE("hermite_fn matches the explicit polynomial up to degree 20") {
    // relative 1e-10 against direct evaluation; degree 20 built by the raw
    // polynomial recurrence in long double
    for (double u : {-3.7, -1.0, 0.4, 2.9}) {
        long double H_prev = 1.0L;
        long double H_cur = 2.0L * u;
        long double fact = 1.0L;
        for (int l = 1; l <= 20; ++l) {
            fact *= l;
            if (l >= 2) {
                const long double H_next = 2.0L * u * H_cur - 2.0L * (l - 1) * H_prev;
                H_prev = H_cur;
                H_cur = H_next;
            }
            const long double norm =
                std::sqrt(std::sqrt((long double)kPi) * std::pow(2.0L, l) * fact);
            const double direct =
                static_cast<double>(H_cur / norm * std::exp(-0.5L * (long double)u * u));
            CHECK(hermite_fn(l, u) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("hermite stays finite deep into degree and argument range") {
    for (int ell : {10, 500, 10000}) {
        for (double u : {0.0, 1.0, 37.0, 41.0, 500.0, 1000.0, -1000.0}) {
            CHECK(std::isfinite(hermite_fn(ell, u)));
        }
    }
}

TEST_CASE("oscillator equation residual via ladder relations") {
    for (int ell : {0, 1, 5, 40, 200}) {
        for (int i = 0; i <= 80; ++i) {
            const double u = -20.0 + 0.5 * i;
            const double res =
                std::abs(-hermite_fn_d2(ell, u) + u * u * hermite_fn(ell, u) -
                         (2.0 * ell + 1.0) * hermite_fn(ell, u));
            CHECK(res < 1e-6 * (2.0 * ell + 1.0));
        }
    }
}

TEST_CASE("hermite orthonormality under trapezoid quadrature") {
    const int n = 3000;
    const double lo = -15.0, hi = 15.0;
    const double step = (hi - lo) / n;
    std::vector<std::vector<double>> cols(n + 1);
    for (int i = 0; i <= n; ++i) cols[i] = hermite_column(15, lo + i * step);
    for (int l1 = 0; l1 <= 15; ++l1) {
        for (int l2 = l1; l2 <= 15; ++l2) {
            double acc = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double w = (i == 0 || i == n) ? 0.5 : 1.0;
                acc += w * cols[i][l1] * cols[i][l2];
            }
            acc *= step;
            const double expect = l1 == l2 ? 1.0 : 0.0;
            CHECK(std::abs(acc - expect) < 1e-8);
        }
    }
}

TEST_CASE("hermite_rescaled pinned values and rejection") {
    CHECK(hermite_rescaled(0, 1, 0.0) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
    CHECK(hermite_rescaled(3, 2, 0.25) ==
          doctest::Approx(hermite_fn(3, std::sqrt(4.0 * kPi) * 0.25) * std::pow(4.0 * kPi, 0.25))
              .epsilon(1e-12));
    CHECK_THROWS_AS(hermite_rescaled(0, 0, 0.0), std::invalid_argument);
    // hard zero beyond the underflow cutoff
    CHECK(hermite_rescaled(0, 1, 40.0 / std::sqrt(2.0 * kPi) + 1.0) == 0.0);
}

TEST_CASE("hermite_rescaled keeps unit L2 norm") {
    for (int ell : {0, 2, 7}) {
        for (int lambda : {1, -3, 5}) {
            const double r = hermite_rescaled_radius(ell, lambda, 1e-14);
            const int n = 4000;
            const double step = 2.0 * r / n;
            double acc = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double u = -r + i * step;
                const double w = (i == 0 || i == n) ? 0.5 : 1.0;
                const double v = hermite_rescaled(ell, lambda, u);
                acc += w * v * v;
            }
            CHECK(acc * step == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("laguerre_fn pinned values") {
    for (double v : {0.0, 1.0, 4.0}) CHECK(laguerre_fn(0, v) == doctest::Approx(std::exp(-0.5 * v)));
    for (int ell : {0, 1, 4, 17}) CHECK(laguerre_fn(ell, 0.0) == doctest::Approx(1.0));
    CHECK(laguerre_fn(4, 2.5) == doctest::Approx(laguerre4_oracle(2.5)).epsilon(1e-12));
    CHECK_THROWS_AS(laguerre_fn(1, -0.5), std::invalid_argument);
}

TEST_CASE("laguerre recurrence matches the polynomial oracle for l <= 20") {
    // direct binomial-sum evaluation in long double
    for (double v : {0.3, 2.0, 9.5, 31.0}) {
        for (int l = 0; l <= 20; ++l) {
            long double sum = 0.0L;
            long double binom = 1.0L;  // C(l, l-k) at k=0
            long double vk = 1.0L;
            long double kfact = 1.0L;
            for (int k = 0; k <= l; ++k) {
                if (k > 0) {
                    binom = binom * (l - k + 1) / k;
                    vk *= v;
                    kfact *= k;
                }
                const long double term = binom * vk / kfact;
                sum += (k % 2 == 0 ? term : -term);
            }
            const double direct = static_cast<double>(sum * std::exp(-0.5L * (long double)v));
            CHECK(laguerre_fn(l, v) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("laguerre bounds over the log grid") {
    double fitted = 0.0;
    for (int i = 0; i < 160; ++i) {
        const double v = std::exp(std::log(1e-3) + (std::log(1e4) - std::log(1e-3)) * (i + 0.5) / 160);
        const auto la = laguerre_column(500, v);
        for (int l = 0; l <= 500; ++l) {
            CHECK(std::abs(la[l]) <= 1.0 + 1e-12);
            fitted = std::max(fitted, std::abs(la[l]) * v / (2.0 * l + 1.0));
        }
    }
    // the measured constant is reported, the rigorous recurrence bound caps it
    CHECK(fitted <= laguerre_tail_constant());
    CHECK(fitted > 0.0);
    CHECK(laguerre_fitted_constant(200) <= laguerre_tail_constant());
}

TEST_CASE("hermite/laguerre connection residual") {
    CHECK(hermite_laguerre_residual(0, 0.0, 0.0, 200) < 1e-10);
    CHECK(hermite_laguerre_residual(3, 1.0, 0.5, 400) < 1e-8);
    CHECK(hermite_laguerre_residual(1, 0.0, 2.0, 400) < 1e-8);
}
