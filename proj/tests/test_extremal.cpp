#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "heis/extremal.hpp"
#include "heis/rng.hpp"

using namespace heis;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("indicator windows") {
    const WindowSpec w = make_window(100, 3);
    double n2 = 0.0;
    for (const auto& z : w.gamma.gamma) n2 += std::norm(z);
    CHECK(n2 == 7.0);
    CHECK_THROWS_AS(make_window(16, 2), std::invalid_argument);  // 8A = lambda
    CHECK_THROWS_AS(make_window(8, 1), std::invalid_argument);
}

TEST_CASE("closed-form lower bound") {
    // direct substitution, composed by hand once
    const double direct = std::exp(-9.0 * kPi / 100.0) * std::exp(-100.0 * kPi / 9.0) *
                          std::pow(6.0 / kPi, 2) * 107.0;
    CHECK(lemma_lower_bound(100, 3) == doctest::Approx(direct).epsilon(1e-14));
    CHECK_THROWS_AS(lemma_lower_bound(8, 1), std::invalid_argument);

    // A ~ sqrt(lambda) keeps both exponentials bounded below
    for (int lambda : {100, 400, 1600}) {
        const int A = static_cast<int>(std::sqrt(static_cast<double>(lambda)));
        const double e1 = std::exp(-kPi * A * A / static_cast<double>(lambda));
        const double e2 = std::exp(-kPi * lambda / static_cast<double>(A * A));
        CHECK(e1 * e2 > std::exp(-2.5 * kPi));
    }
}

TEST_CASE("lattice sum dominates the lemma bound") {
    for (int lambda : {96, 150, 220}) {
        for (int A : {2, 3}) {
            const WindowSpec w = make_window(lambda, A);
            const auto rhs = rhs_lattice_sum(w.gamma, 0, 1e-4);
            CHECK(rhs.value >= lemma_lower_bound(lambda, A));
        }
    }
}

TEST_CASE("sharpness scan over a short ladder") {
    const ScalingReport rep = sharpness_scan({64, 128, 256, 512}, 1e-4);
    // 8 floor(sqrt(64)) = 64 is not < 64, so lambda = 64 must be skipped
    REQUIRE(rep.skipped.size() == 1);
    CHECK(rep.skipped[0] == 64);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(row.ratio >= 1.0);
        CHECK(row.rhs_value >= row.lemma_bound);
        CHECK(row.mu == doctest::Approx(std::sqrt(kTwoPi * row.lambda)));
        const double r4 = std::pow(row.ratio, 4) * std::pow(2.0 * row.A + 1.0, 2);
        CHECK(r4 == doctest::Approx(row.rhs_value).epsilon(1e-12));
    }
    CHECK(rep.fit_rows == 3);
    // pre-asymptotic but already near the square-root law
    CHECK(rep.fitted_slope > 0.3);
    CHECK(rep.fitted_slope < 0.7);
}

TEST_CASE("upper-bound constant") {
    // lambda = 1, l = 0 is the square of the 1D Gaussian sum
    double theta1d = 0.0;
    for (int a = -40; a <= 40; ++a) theta1d += std::exp(-kPi * a * a);
    const auto ub = upper_bound_constant(1, 0, 1e-8);
    CHECK(std::abs(ub.value - theta1d * theta1d) < 1e-10);

    // Riemann limit: the Gaussian lattice sum approaches lambda
    const auto big = upper_bound_constant(4096, 0, 1e-3);
    CHECK(std::abs(big.value - 4096.0) / 4096.0 < 0.05);

    // growth no faster than mu^{0.55} in fitted slope over a small grid
    std::vector<double> lx, ly;
    for (int lambda : {32, 64, 128, 256, 512, 1024}) {
        for (int ell : {0, 1, 3}) {
            const auto r = upper_bound_constant(lambda, ell, 1e-3);
            const double mu = std::sqrt(kTwoPi * lambda * (2.0 * ell + 1.0));
            lx.push_back(std::log(mu));
            ly.push_back(std::log(std::pow(r.value, 0.25)));
        }
    }
    CHECK(ols_slope(lx, ly) < 0.55);
}

TEST_CASE("quartic objective: lambda = 1 forces the theta constant") {
    const QuarticObjective obj(1, 2);
    const std::vector<cdouble> phase{std::exp(cdouble(0, 0.93))};
    const auto ub = upper_bound_constant(1, 2, 1e-10);
    CHECK(obj.eval(phase) == doctest::Approx(ub.value).epsilon(1e-12));
}

TEST_CASE("quartic objective invariances") {
    Rng rng(151);
    const int lambda = 6;
    const QuarticObjective obj(lambda, 1);
    std::vector<cdouble> g(lambda);
    for (auto& z : g) z = rng.cnormal();

    std::vector<cdouble> rotated = g;
    const cdouble phase = std::exp(cdouble(0, 0.41));
    for (auto& z : rotated) z *= phase;
    CHECK(obj.eval(rotated) == doctest::Approx(obj.eval(g)).epsilon(1e-13));

    // q-modulation at theta_0 = j/lambda multiplies each S column by a unit
    // phase; the objective is exactly invariant
    for (int j = 1; j < lambda; ++j) {
        std::vector<cdouble> mod = g;
        for (int q = 0; q < lambda; ++q)
            mod[q] *= std::exp(cdouble(0, kTwoPi * q * j / lambda));
        CHECK(obj.eval(mod) == doctest::Approx(obj.eval(g)).epsilon(1e-12));

        CoeffVector a, b;
        a.lambda = lambda;
        a.gamma = g;
        b.lambda = lambda;
        b.gamma = mod;
        const auto sa = s_table(a);
        const auto sb = s_table(b);
        for (std::size_t t = 0; t < sa.size(); ++t)
            CHECK(std::abs(std::abs(sa[t]) - std::abs(sb[t])) < 1e-11);
    }
}

TEST_CASE("analytic gradient against central differences") {
    Rng rng(157);
    for (const auto& [lambda, ell] : std::vector<std::pair<int, int>>{{3, 0}, {5, 1}, {8, 2}}) {
        const QuarticObjective obj(lambda, ell);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<cdouble> g(lambda);
            for (auto& z : g) z = rng.cnormal();
            const auto grad = obj.grad(g);
            const double eps = 1e-5;
            for (int p = 0; p < lambda; ++p) {
                for (int part = 0; part < 2; ++part) {
                    auto gp = g;
                    auto gm = g;
                    const cdouble delta = part == 0 ? cdouble(eps, 0.0) : cdouble(0.0, eps);
                    gp[p] += delta;
                    gm[p] -= delta;
                    const double fd = (obj.eval(gp) - obj.eval(gm)) / (2 * eps);
                    const double an = part == 0 ? 2.0 * grad[p].real() : 2.0 * grad[p].imag();
                    CHECK(std::abs(fd - an) < 1e-5 * std::max(1.0, std::abs(an)));
                }
            }
        }
    }
}

TEST_CASE("projected gradient ascent") {
    const ExtremizerResult res = maximize_ratio(8, 0, 4, 400, 20240101);
    CHECK(res.converged);
    CHECK(res.restarts_used == 4);

    // never below any seed candidate: indicator and delta seeds evaluated here
    const QuarticObjective obj(8, 0);
    std::vector<cdouble> delta(8, cdouble(0.0, 0.0));
    delta[0] = 1.0;
    const double q_delta = obj.eval(delta);
    CHECK(std::pow(res.ratio, 4) >= q_delta - 1e-12);

    // monotone ascent on every logged trajectory
    for (const auto& traj : res.trajectories) {
        for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj[i] >= traj[i - 1]);
    }

    // the reported coefficients reproduce the reported ratio on the sphere
    double n2 = 0.0;
    for (const auto& z : res.gamma_star.gamma) n2 += std::norm(z);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(obj.eval(res.gamma_star.gamma) == doctest::Approx(std::pow(res.ratio, 4)).epsilon(1e-12));

    // determinism
    const ExtremizerResult res2 = maximize_ratio(8, 0, 4, 400, 20240101);
    CHECK(res2.ratio == res.ratio);
}

TEST_CASE("bernstein ceiling is linear in mu") {
    Calibration cal;
    cal.bernstein_c_fit = 0.77;
    CHECK(bernstein_ceiling(2.0, cal) == doctest::Approx(2.0 * bernstein_ceiling(1.0, cal)));
    CHECK_THROWS_AS(bernstein_ceiling(0.0, cal), std::invalid_argument);
}

TEST_CASE("frozen calibration file loads") {
    const Calibration cal = load_calibration();
    CHECK(cal.laguerre_rigorous_c == doctest::Approx(2.0));
    CHECK(cal.bernstein_c_fit > 0.0);
    CHECK(cal.window_envelope_safety > 0.0);
}
