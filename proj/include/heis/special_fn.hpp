#pragma once

#include <vector>

namespace heis {

// L^2-normalised Hermite functions, h_0(u) = pi^{-1/4} e^{-u^2/2}, evaluated
// by the normalised three-term recurrence
//   h_{l+1}(u) = u sqrt(2/(l+1)) h_l(u) - sqrt(l/(l+1)) h_{l-1}(u),
// which stays in floating range for degrees where the raw polynomials would
// overflow.
double hermite_fn(int ell, double u);

// One recurrence pass returning h_0(u) .. h_{ell_max}(u).
std::vector<double> hermite_column(int ell_max, double u);

// First and second derivatives from the ladder relations,
// h_l' = (sqrt(2l) h_{l-1} - sqrt(2l+2) h_{l+1}) / 2, applied twice for h''.
double hermite_fn_d1(int ell, double u);
double hermite_fn_d2(int ell, double u);

// h_{l,lambda}(u) = (2 pi |lambda|)^{1/4} h_l(sqrt(2 pi |lambda|) u).
// Returns exactly 0 once sqrt(2 pi |lambda|) |u| > 40: below double underflow
// for every degree in range, and it caps the k-sums built on top.
// Throws std::invalid_argument for lambda = 0.
double hermite_rescaled(int ell, int lambda, double u);
double hermite_rescaled_d1(int ell, int lambda, double u);
double hermite_rescaled_d2(int ell, int lambda, double u);

// |u| beyond which |h_l| (resp. |h_{l,lambda}|) is below tail_eps; the
// turning point sqrt(2l+1) plus a Gaussian-tail offset.
double hermite_radius(int ell, double tail_eps);
double hermite_rescaled_radius(int ell, int lambda, double tail_eps);

// Laguerre function of type 0: L_l(v) e^{-v/2}, by the upward recurrence
//   (l+1) La_{l+1}(v) = (2l+1-v) La_l(v) - l La_{l-1}(v).
// Throws std::invalid_argument for v < 0.
double laguerre_fn(int ell, double v);
std::vector<double> laguerre_column(int ell_max, double v);

// |La_l(v)| <= laguerre_tail_constant() * (2l+1)/v for all v>0: the constant 2
// follows from |La| <= 1 combined with the three-term recurrence.
double laguerre_tail_constant();

// Measured sup of |La_l(v)| v/(2l+1) over l <= ell_max and a log grid of v;
// reported by the CLI next to the rigorous constant above.
double laguerre_fitted_constant(int ell_max);

// Residual of the Hermite/Laguerre connection
//   La_l((x^2+y^2)/2) = \int e^{i x xi} h_l(xi + y/2) h_l(xi - y/2) dxi,
// the integral taken by uniform trapezoid with quad_points points on
// [-2(6+sqrt(2l+1)), 2(6+sqrt(2l+1))].  Returns the modulus of the complex
// difference.
double hermite_laguerre_residual(int ell, double x, double y, int quad_points);

}  // namespace heis
