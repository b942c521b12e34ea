#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace heis {

using cdouble = std::complex<double>;

// All omega in Z^2 with omega_1^2 + omega_2^2 = n; count is r_2(n).
struct CirclePoints {
    long long n = 0;
    std::vector<std::array<int, 2>> points;
};
CirclePoints circle_lattice_points(long long n);

// Correlation sums Gamma_rho = sum_{w1 - w2 = rho} c_{w1} conj(c_{w2}),
// stored sparsely over the finitely many difference vectors.
struct CorrelationTable {
    std::map<std::array<int, 2>, cdouble> entries;
};
CorrelationTable correlation_table(const CirclePoints& pts, const std::vector<cdouble>& c);

// ||sum c_w chi_w||_{L^4(T^2)}^4 = sum_rho |Gamma_rho|^2.
double l4_via_plancherel(const CorrelationTable& table);

// Number of real pairs (w1, w2) with |w1| = |w2| = r_prime and w1 - w2 = rho,
// from the circle-intersection quadratic: 2 when r'^2 > |rho|^2/4, 1 at
// tangency, 0 below.
int pair_solution_count(const std::array<int, 2>& rho, double r_prime);

// Random-trial certificate for the L^4 torus bound: for every n <= n_max with
// r_2(n) > 0 and `trials` random coefficient vectors, checks
//   ratio^4 = sum_rho |Gamma_rho|^2 / ||c||^4 <= 5
// and the off-diagonal part sum_{rho != 0} |Gamma_rho|^2 <= 4 ||c||^4.
struct ZygmundRow {
    long long n = 0;
    int r2 = 0;
    double max_ratio4 = 0.0;
    double max_offdiag_ratio = 0.0;  // sum_{rho!=0}|Gamma_rho|^2 / ||c||^4
};
struct ZygmundReport {
    std::uint64_t seed = 0;
    int trials = 0;
    double max_ratio4 = 0.0;
    long long argmax_n = 0;
    bool bound_holds = true;      // ratio^4 <= 5 everywhere
    bool offdiag_holds = true;    // off-diagonal sum <= 4||c||^4 everywhere
    std::vector<ZygmundRow> rows;
};
ZygmundReport zygmund_certificate(long long n_max, int trials, std::uint64_t seed, int threads = 1);

// Exhaustive check that every difference vector rho != 0 on the circle n is
// realised by at most two ordered pairs.
bool ordered_pairs_at_most_two(long long n_max);

}  // namespace heis
