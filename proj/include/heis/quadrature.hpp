#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "heis/group.hpp"

namespace heis {

using cdouble = std::complex<double>;

// Midpoint samples of [0,1)^2 at ((i+1/2)/n_a, (j+1/2)/n_b), row-major in i.
// Midpoint offsets keep every sample away from the lattice points of Gamma,
// where the fundamental-domain reduction branches.
struct Grid2 {
    int n_a = 0;
    int n_b = 0;
    std::vector<cdouble> values;

    cdouble& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_b + j]; }
    const cdouble& at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_b + j]; }
    double a_of(int i) const { return (i + 0.5) / n_a; }
    double b_of(int j) const { return (j + 0.5) / n_b; }
};

// Real window on the line with a concentration radius: |eval| is negligible
// outside |u| <= radius.
struct LineWindow {
    std::function<double(double)> eval;
    double radius = 1.0;
};

// h_{l,lambda} with radius from the Hermite concentration scale.
LineWindow hermite_window(int ell, int lambda, double tail_eps = 1e-12);

// A fixed-lambda packet f(a,b) = sum_q gamma_q BWZ_{lambda,q}(window)(a,b,0)
// sampled on a Grid2; bandwidth_k is the k-truncation radius actually used.
// |f| is 1-periodic in a since f(a+1,b) = e^{-2 pi i lambda b} f(a,b).
struct SectorFunction {
    int lambda = 0;
    int bandwidth_k = 0;
    Grid2 grid;
};

SectorFunction sample_sector(int lambda, const std::vector<cdouble>& gamma, const LineWindow& w,
                             int n_a, int n_b, int threads = 1);

// Plain midpoint value of \int_{[0,1]^2} |f|^4 for a sampled sector function.
double l4_power_of_grid(const SectorFunction& sf);

struct L4Result {
    double value = 0.0;           // ||sum_q gamma_q BWZ(window)||_{L^4(M)}^4
    double doubling_delta = 0.0;  // relative change under grid doubling
    bool resolved = true;
    int bandwidth_k = 0;
};

// Fourth power of the L^4(M) norm via the 2D reduction (the c-variable drops
// for a fixed-lambda packet).  Exact in b once the grid resolves 4x the
// k-bandwidth, spectrally accurate in a.
L4Result l4_norm_sector(int lambda, const std::vector<cdouble>& gamma, const LineWindow& w,
                        int n_a, int n_b, int threads = 1);

using PointFn = std::function<cdouble(const GroupElement&)>;

struct InnerResult {
    cdouble value{0.0, 0.0};
    double doubling_delta = 0.0;
    bool resolved = true;
};

// \int_M f conj(g): midpoint tensor rule on [0,1)^3 with the c-resolution
// chosen above twice the declared central bandwidth, so the c-integral is
// exact for the trigonometric content.  The doubling flag reruns at twice the
// (a,b) resolution.
InnerResult l2_inner_M(const PointFn& f, const PointFn& g, int grid_n, int central_bandwidth,
                       int threads = 1);

enum class TorusL4Route { quadrature, plancherel };

struct TorusNormResult {
    double value = 0.0;  // the L^p norm itself
    double doubling_delta = 0.0;
    bool resolved = true;
};

// L^p norm on T^2 of sum_omega c_omega chi_omega for p in {2,4}.  p=2 is
// Plancherel (exact).  p=4 integrates |.|^4 by the 2D midpoint rule, or uses
// the exact correlation-sum route when requested.
TorusNormResult lp_norm_torus(const std::vector<std::pair<std::array<int, 2>, cdouble>>& coeffs,
                              int p, int grid_n, TorusL4Route route = TorusL4Route::quadrature);

}  // namespace heis
