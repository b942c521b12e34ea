#pragma once

#include <array>
#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "heis/group.hpp"
#include "heis/quadrature.hpp"

namespace heis {

// Eigenfunction label (lambda, q, l) with q kept canonical in [0, |lambda|).
struct SectorIndex {
    int lambda = 1;
    int q = 0;
    int ell = 0;
};
SectorIndex make_sector_index(int lambda, long long q, int ell);

struct TorusIndex {
    std::array<int, 2> omega{0, 0};
};

using BasisIndex = std::variant<SectorIndex, TorusIndex>;

// Packet coefficients over Z/lambda Z.
struct CoeffVector {
    int lambda = 1;
    std::vector<cdouble> gamma;
};

// A finite expansion over the mixed eigenbasis.
struct Expansion {
    std::vector<std::pair<SectorIndex, cdouble>> sector_terms;
    std::vector<std::pair<TorusIndex, cdouble>> torus_terms;
};
double coeff_norm2(const Expansion& e);  // sum of |coefficient|^2

// chi_omega(Gamma(a,b,c)) = e^{2 pi i (omega_1 a + omega_2 b)}.
cdouble eval_chi(const TorusIndex& idx, const GroupElement& p);

// h_{lambda,q,l} by the truncated k-series; the omitted Gaussian tail is
// below tol.
cdouble eval_h(const SectorIndex& idx, const GroupElement& p, double tol);

// Alternative eigenfunctions g_{lambda,r,l} (Fourier transforms of the
// h-basis over the q index).
cdouble eval_g_ds(int lambda, int r, int ell, const GroupElement& p, double tol);

// Eigenvalues of the sub-Laplacian: 2 pi |lambda| (2l+1), resp. (2 pi)^2 |omega|^2.
double eigenvalue(const SectorIndex& idx);
double eigenvalue(const TorusIndex& idx);
double eigenvalue(const BasisIndex& idx);

// L_M applied by term-wise analytic differentiation of the truncated series
// (A_M hits the Hermite factor through the ladder relations, B_M = d_b + a d_c
// contributes 2 pi i (k + lambda a) per term).
cdouble apply_sublaplacian(const SectorIndex& idx, const GroupElement& p, double tol);
// Exact phase differentiation for the torus characters.
cdouble apply_sublaplacian(const TorusIndex& idx, const GroupElement& p);
// Same term-wise differentiation for the alternative basis g_{lambda,r,l}.
cdouble apply_sublaplacian_g_ds(int lambda, int r, int ell, const GroupElement& p, double tol);

// Both translation identities for BWZ functions: right translation by
// (q/lambda,0,0) produces e^{-2 pi i q b} e^{2 pi i q0 q / lambda}, and by
// (0,q/lambda,0) produces e^{2 pi i q a} while shifting q0 -> q0 - q.
// Returns the two absolute deviations.
std::pair<double, double> covariance_check(const SectorIndex& idx, int q_shift,
                                           const GroupElement& p, double tol);

struct GramResult {
    int n = 0;
    std::vector<cdouble> entries;  // row-major n x n
    double max_doubling_delta = 0.0;
    bool resolved = true;

    cdouble at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

// L^2(M) inner products of the listed basis functions by the midpoint tensor
// rule; flags underresolution when doubling the (a,b) grid moves any entry by
// more than 1e-6.
GramResult gram_matrix(const std::vector<BasisIndex>& indices, int grid_n, int threads = 1);

// One eigenvalue mu of sqrt(L_M) with its multiplicity content.  Exactly one
// of the two lists is populated: 2 pi m = 4 pi^2 n has no positive integer
// solutions.
struct SpectralLine {
    double mu = 0.0;
    long long m = 0;   // sector lines: mu^2 = 2 pi m, m = |lambda|(2l+1)
    long long n = -1;  // torus lines: mu^2 = (2 pi)^2 n, n = |omega|^2
    std::vector<std::pair<int, int>> lambda_sectors;  // (lambda, l), multiplicity |lambda| each
    std::vector<std::array<int, 2>> torus_points;
    long long multiplicity() const;
};

// All spectral lines with mu <= mu_max, ordered by mu.
std::vector<SpectralLine> enumerate_spectrum(double mu_max);

// Keeps the terms with central frequency lambda (torus terms count as 0).
Expansion project_pr_lambda(const Expansion& e, int lambda);

// Keeps the terms in the mu-eigenspace of sqrt(L_M); membership is decided on
// the exact integers m = |lambda|(2l+1) and n = |omega|^2.
Expansion project_pi_mu(const Expansion& e, double mu);

}  // namespace heis
