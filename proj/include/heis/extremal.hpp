#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "heis/basis.hpp"
#include "heis/calibration.hpp"
#include "heis/key_identity.hpp"

namespace heis {

// Indicator window 1_{[-A,A]} on Z/lambda Z; requires 8A < lambda.
struct WindowSpec {
    int lambda = 0;
    int A = 0;
    CoeffVector gamma;
};
WindowSpec make_window(int lambda, int A);

// Closed-form lower bound for the indicator-window lattice sum:
//   e^{-pi A^2/lambda} e^{-pi lambda/A^2} (2A/pi)^2 (lambda + 2A + 1).
double lemma_lower_bound(int lambda, int A);

struct ScalingRow {
    int lambda = 0;
    int A = 0;
    double mu = 0.0;     // sqrt(2 pi lambda), the l = 0 eigenvalue of sqrt(L_M)
    double ratio = 0.0;  // rhs^{1/4} / ||gamma||_2
    double rhs_value = 0.0;
    double lemma_bound = 0.0;
    long long truncation_radius = 0;
    double tail_bound = 0.0;
};
struct ScalingReport {
    std::vector<ScalingRow> rows;
    std::vector<int> skipped;  // lambdas violating 8 floor(sqrt(lambda)) < lambda
    double fitted_slope = 0.0;
    std::pair<double, double> slope_window{0.45, 0.55};
    int fit_rows = 0;  // rows with lambda >= 128 entering the log-log fit
};

// Indicator windows with A = floor(sqrt(lambda)); least-squares slope of
// log ratio against log mu over the rows with lambda >= 128.
ScalingReport sharpness_scan(const std::vector<int>& lambdas, double tol, int threads = 1);

struct UpperBoundResult {
    double value = 0.0;  // sum_{a,b} |La_l(pi(a^2+b^2)/lambda)|^2
    long long truncation_radius = 0;
    double tail_bound = 0.0;
    bool tol_reached = true;
};
UpperBoundResult upper_bound_constant(int lambda, int ell, double tol);

// The smooth quartic Q(gamma) = sum_{a,b} |S(a,b)|^2 w(a,b)^2 folded over
// residue classes mod lambda (the lattice weight is summed per class once).
// eval runs in extended precision for moduli <= 128: the extremizer manifold
// is near-flat and the line search has to resolve objective differences well
// below 1e-15 relative.
class QuarticObjective {
public:
    QuarticObjective(int lambda, int ell);

    using cldouble = std::complex<long double>;

    int modulus() const { return modulus_; }
    double eval(const std::vector<cdouble>& gamma) const;
    // Full-precision value on extended-precision iterates: near the maximum
    // both the certifiable gains and the steps themselves sit below one
    // double ulp, so the ascent has to run on long double points.
    long double eval_precise(const std::vector<cldouble>& gamma) const;
    // dQ/d(conj gamma_p); the ambient real gradient is (2 Re g, 2 Im g).
    std::vector<cdouble> grad(const std::vector<cdouble>& gamma) const;

private:
    int modulus_;
    std::vector<double> class_weight_;  // |lambda| x |lambda|, sum of w^2 per class
    std::vector<std::complex<long double>> phase_;  // e^{2 pi i j / m}, j in [0, m)
};

struct ExtremizerResult {
    CoeffVector gamma_star;
    double ratio = 0.0;  // Q(gamma*)^{1/4} at unit coefficient norm
    int restarts_used = 0;
    bool converged = false;
    std::vector<std::vector<double>> trajectories;  // accepted objective values per restart
};

// Projected gradient ascent on the coefficient sphere with backtracking line
// search; restarts are seeded by the indicator window, a single-q delta, and
// random Gaussians.  Monotone by construction; convergence means the tangent
// gradient norm fell below 1e-8.
ExtremizerResult maximize_ratio(int lambda, int ell, int restarts, int max_iters,
                                std::uint64_t seed, int threads = 1);

// C_fit * mu with the frozen calibration constant.
double bernstein_ceiling(double mu, const Calibration& cal);

// Ordinary least squares slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace heis
