#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "heis/basis.hpp"
#include "heis/quadrature.hpp"

namespace heis {

// Full table of discrete short-time Fourier coefficients over Z/lambda Z:
//   V_gamma eta (a,b) = sum_q eta(q) conj(gamma(q-a)) e^{-2 pi i b q / lambda}.
struct STFTMatrix {
    int modulus = 1;
    std::vector<cdouble> table;  // row-major in the shift a

    cdouble at(long long a, long long b) const {
        long long am = a % modulus;
        if (am < 0) am += modulus;
        long long bm = b % modulus;
        if (bm < 0) bm += modulus;
        return table[static_cast<std::size_t>(am) * modulus + bm];
    }
};

// Per shift a, one length-|lambda| DFT of q -> eta(q) conj(gamma(q-a)).
STFTMatrix discrete_stft(const CoeffVector& gamma, const CoeffVector& eta);

// sum_{a,b} |V(a,b)|^2; equals lambda ||gamma||^2 ||eta||^2 (Moyal).
double moyal_sum(const STFTMatrix& m);

// S(a,b) = sum_q gamma_q conj(gamma_{q-b}) e^{2 pi i q a / lambda}, direct
// O(lambda) evaluation with lambda kept literal (signed).  For lambda > 0 the
// dictionary S(a,b) = V_gamma gamma(b, -a) holds; it is pinned by a test.
cdouble inner_sum(const CoeffVector& gamma, long long a, long long b);

// |lambda| x |lambda| table T[alpha*m + beta] = S(alpha, beta) computed with
// the modulus m = |lambda| (phases e^{+2 pi i q alpha / m}).
std::vector<cdouble> s_table(const CoeffVector& gamma);

// Lattice weight |w(a,b)| together with an envelope constant E such that
// |w(a,b)| <= E / (a^2 + b^2) away from 0; the envelope feeds the analytic
// tail bound of the lattice sums.
struct LatticeWeight {
    std::function<cdouble(long long a, long long b)> w;
    double envelope = 0.0;
    double support_s = 0.0;  // |w| numerically zero for a^2+b^2 > support_s
};

// The key-identity weight La_l(pi (a^2+b^2)/|lambda|); envelope from the
// rigorous constant 2 in the Laguerre decay bound.
LatticeWeight laguerre_weight(int lambda, int ell);

// (h, pi_lambda(a/lambda, b/lambda, 0) h) for a general real window, by line
// trapezoid; the envelope constant is fitted on the computed region with a
// safety factor (the rigorous decay bound is only stated for pure Laguerre
// weights).
LatticeWeight window_weight(int lambda, const LineWindow& h, int quad_points, int max_degree);

struct LatticeSumResult {
    double value = 0.0;
    long long truncation_radius = 0;
    double tail_bound = 0.0;
    bool tol_reached = true;
};

// sum_{a,b in Z} |S(a,b) w(a,b)|^2 truncated to a^2+b^2 <= R^2, R chosen so
// the analytic tail bound
//   ||gamma||^4 E^2 sum_{a^2+b^2 > R^2} (a^2+b^2)^{-2}  (the sum <= 2 pi/(R^2-2))
// is below tol * value, with radius cap 1e6 (reported when unreachable).
// S is |lambda|-periodic in both arguments, so only |lambda|^2 distinct values
// are ever computed.
LatticeSumResult lattice_sum_weighted(const CoeffVector& gamma, const LatticeWeight& weight,
                                      double tol);

// The key-identity right-hand side: Laguerre weight of degree ell.
LatticeSumResult rhs_lattice_sum(const CoeffVector& gamma, int ell, double tol);

struct IdentityResult {
    double residual = 0.0;  // |LHS^4 - RHS| / max(RHS, 1e-30)
    double lhs4 = 0.0;
    double rhs = 0.0;
    bool resolved = true;  // quadrature doubling flag and lattice tol both met
};

// Relative difference between the quadrature LHS ||sum_q gamma_q h_{lambda,q,l}||_4^4
// and the lattice-sum RHS.
IdentityResult identity_residual(const CoeffVector& gamma, int ell, double tol, int grid_n,
                                 int threads = 1);

// Same with a general window h replacing h_{l,lambda} on both sides
// (BWZ packet on the left, matrix-coefficient weight on the right).
IdentityResult identity_residual_window(const CoeffVector& gamma, const LineWindow& h,
                                        const LatticeWeight& weight, double tol, int grid_n,
                                        int threads = 1);

}  // namespace heis
