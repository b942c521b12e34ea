#include "heis/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heis/parallel.hpp"
#include "heis/special_fn.hpp"
#include "heis/zygmund.hpp"

namespace heis {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

cdouble unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

double bwz_prefactor(int lambda) {
    // sqrt(|lambda|)/lambda, kept literal from the transform's normalisation.
    return (lambda > 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(std::abs(lambda)));
}

// k-range with |k/lambda + a| <= radius.
std::pair<int, int> k_window(int lambda, double a, double radius) {
    const double e1 = lambda * (-radius - a);
    const double e2 = lambda * (radius - a);
    const int lo = static_cast<int>(std::floor(std::min(e1, e2)));
    const int hi = static_cast<int>(std::ceil(std::max(e1, e2)));
    return {lo, hi};
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace

SectorIndex make_sector_index(int lambda, long long q, int ell) {
    if (lambda == 0) throw std::invalid_argument("make_sector_index: lambda must be nonzero");
    if (ell < 0) throw std::invalid_argument("make_sector_index: ell must be nonnegative");
    const long long mod = std::abs(lambda);
    long long qc = q % mod;
    if (qc < 0) qc += mod;
    return {lambda, static_cast<int>(qc), ell};
}

double coeff_norm2(const Expansion& e) {
    double s = 0.0;
    for (const auto& [idx, c] : e.sector_terms) s += std::norm(c);
    for (const auto& [idx, c] : e.torus_terms) s += std::norm(c);
    return s;
}

cdouble eval_chi(const TorusIndex& idx, const GroupElement& p) {
    return unit_phase(kTwoPi * (idx.omega[0] * p.a + idx.omega[1] * p.b));
}

cdouble eval_h(const SectorIndex& idx, const GroupElement& p, double tol) {
    const int lambda = idx.lambda;
    const double radius = hermite_rescaled_radius(idx.ell, lambda, 0.01 * tol);
    const auto [k_lo, k_hi] = k_window(lambda, p.a, radius);
    cdouble acc(0.0, 0.0);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double u = static_cast<double>(k) / lambda + p.a;
        const double hval = hermite_rescaled(idx.ell, lambda, u);
        if (hval == 0.0) continue;
        acc += unit_phase(kTwoPi * (-static_cast<double>(idx.q) * k / lambda + lambda * p.c + k * p.b)) *
               hval;
    }
    return bwz_prefactor(lambda) * acc;
}

cdouble eval_g_ds(int lambda, int r, int ell, const GroupElement& p, double tol) {
    if (lambda == 0) throw std::invalid_argument("eval_g_ds: lambda must be nonzero");
    const double radius = hermite_rescaled_radius(ell, lambda, 0.01 * tol);
    const double center = p.a + static_cast<double>(r) / lambda;
    const int k_lo = static_cast<int>(std::floor(-radius - center));
    const int k_hi = static_cast<int>(std::ceil(radius - center));
    cdouble acc(0.0, 0.0);
    for (int k1 = k_lo; k1 <= k_hi; ++k1) {
        const double hval = hermite_rescaled(ell, lambda, center + k1);
        if (hval == 0.0) continue;
        acc += unit_phase(kTwoPi * lambda * k1 * p.b) * hval;
    }
    return unit_phase(kTwoPi * (lambda * p.c + r * p.b)) * acc;
}

double eigenvalue(const SectorIndex& idx) {
    return kTwoPi * std::abs(idx.lambda) * (2.0 * idx.ell + 1.0);
}

double eigenvalue(const TorusIndex& idx) {
    const double n = static_cast<double>(idx.omega[0]) * idx.omega[0] +
                     static_cast<double>(idx.omega[1]) * idx.omega[1];
    return kTwoPi * kTwoPi * n;
}

double eigenvalue(const BasisIndex& idx) {
    return std::visit([](const auto& i) { return eigenvalue(i); }, idx);
}

cdouble apply_sublaplacian(const SectorIndex& idx, const GroupElement& p, double tol) {
    const int lambda = idx.lambda;
    // The second derivative mixes degrees l-2..l+2; take the wider window.
    const double radius = hermite_rescaled_radius(idx.ell + 2, lambda, 0.01 * tol);
    const auto [k_lo, k_hi] = k_window(lambda, p.a, radius);
    cdouble acc(0.0, 0.0);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double u = static_cast<double>(k) / lambda + p.a;
        const double osc = kTwoPi * lambda * u;
        const double val = -hermite_rescaled_d2(idx.ell, lambda, u) +
                           osc * osc * hermite_rescaled(idx.ell, lambda, u);
        if (val == 0.0) continue;
        acc += unit_phase(kTwoPi * (-static_cast<double>(idx.q) * k / lambda + lambda * p.c + k * p.b)) *
               val;
    }
    return bwz_prefactor(lambda) * acc;
}

cdouble apply_sublaplacian(const TorusIndex& idx, const GroupElement& p) {
    return eigenvalue(idx) * eval_chi(idx, p);
}

cdouble apply_sublaplacian_g_ds(int lambda, int r, int ell, const GroupElement& p, double tol) {
    if (lambda == 0) throw std::invalid_argument("apply_sublaplacian_g_ds: lambda must be nonzero");
    const double radius = hermite_rescaled_radius(ell + 2, lambda, 0.01 * tol);
    const double center = p.a + static_cast<double>(r) / lambda;
    const int k_lo = static_cast<int>(std::floor(-radius - center));
    const int k_hi = static_cast<int>(std::ceil(radius - center));
    cdouble acc(0.0, 0.0);
    for (int k1 = k_lo; k1 <= k_hi; ++k1) {
        const double u = center + k1;  // B_M contributes 2 pi i (r + lambda k1 + lambda a) = 2 pi i lambda u
        const double osc = kTwoPi * lambda * u;
        const double val =
            -hermite_rescaled_d2(ell, lambda, u) + osc * osc * hermite_rescaled(ell, lambda, u);
        if (val == 0.0) continue;
        acc += unit_phase(kTwoPi * lambda * k1 * p.b) * val;
    }
    return unit_phase(kTwoPi * (lambda * p.c + r * p.b)) * acc;
}

std::pair<double, double> covariance_check(const SectorIndex& idx, int q_shift,
                                           const GroupElement& p, double tol) {
    const int lambda = idx.lambda;
    const double step = static_cast<double>(q_shift) / lambda;

    const GroupElement pa = multiply(p, GroupElement{step, 0.0, 0.0});
    const cdouble lhs_a = eval_h(idx, pa, tol);
    const cdouble rhs_a = unit_phase(kTwoPi * (-q_shift * p.b + static_cast<double>(idx.q) * q_shift / lambda)) *
                          eval_h(idx, p, tol);

    const GroupElement pb = multiply(p, GroupElement{0.0, step, 0.0});
    const cdouble lhs_b = eval_h(idx, pb, tol);
    const SectorIndex shifted = make_sector_index(lambda, static_cast<long long>(idx.q) - q_shift, idx.ell);
    const cdouble rhs_b = unit_phase(kTwoPi * q_shift * p.a) * eval_h(shifted, p, tol);

    return {std::abs(lhs_a - rhs_a), std::abs(lhs_b - rhs_b)};
}

namespace {
int central_frequency(const BasisIndex& idx) {
    if (std::holds_alternative<SectorIndex>(idx)) return std::get<SectorIndex>(idx).lambda;
    return 0;
}

// c = 0 profile F(a,b) of a basis function on the midpoint grid, so that
// f(a,b,c) = e^{2 pi i lambda c} F(a,b).
std::vector<cdouble> profile_on_grid(const BasisIndex& idx, int n, int threads) {
    std::vector<cdouble> F(static_cast<std::size_t>(n) * n);
    if (std::holds_alternative<TorusIndex>(idx)) {
        const TorusIndex& t = std::get<TorusIndex>(idx);
        for (int i = 0; i < n; ++i) {
            const double a = (i + 0.5) / n;
            for (int j = 0; j < n; ++j) {
                const double b = (j + 0.5) / n;
                F[static_cast<std::size_t>(i) * n + j] =
                    unit_phase(kTwoPi * (t.omega[0] * a + t.omega[1] * b));
            }
        }
        return F;
    }
    const SectorIndex& s = std::get<SectorIndex>(idx);
    const int lambda = s.lambda;
    const double radius = hermite_rescaled_radius(s.ell, lambda, 1e-14);
    const double pref = bwz_prefactor(lambda);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        const double a = (static_cast<double>(i) + 0.5) / n;
        const auto [k_lo, k_hi] = k_window(lambda, a, radius);
        std::vector<int> ks;
        std::vector<cdouble> ck;
        for (int k = k_lo; k <= k_hi; ++k) {
            const double u = static_cast<double>(k) / lambda + a;
            const double hval = hermite_rescaled(s.ell, lambda, u);
            if (hval == 0.0) continue;
            ks.push_back(k);
            ck.push_back(pref * hval * unit_phase(-kTwoPi * static_cast<double>(s.q) * k / lambda));
        }
        for (int j = 0; j < n; ++j) {
            const double b = (j + 0.5) / n;
            cdouble acc(0.0, 0.0);
            if (!ks.empty()) {
                const cdouble stepb = unit_phase(kTwoPi * b);
                cdouble ph = unit_phase(kTwoPi * ks.front() * b);
                int prev = ks.front();
                for (std::size_t t = 0; t < ks.size(); ++t) {
                    for (; prev < ks[t]; ++prev) ph *= stepb;
                    acc += ck[t] * ph;
                }
            }
            F[i * n + j] = acc;
        }
    });
    return F;
}

std::vector<cdouble> gram_entries(const std::vector<BasisIndex>& indices, int grid_n, int n_c,
                                  int threads) {
    const std::size_t m = indices.size();
    std::vector<std::vector<cdouble>> profiles(m);
    parallel_for(m, threads, [&](std::size_t i) { profiles[i] = profile_on_grid(indices[i], grid_n, 1); });

    // c-factor of the tensor midpoint rule: (1/n_c) sum_kc e^{2 pi i d (kc+1/2)/n_c}.
    auto cfactor = [n_c](int d) {
        cdouble acc(0.0, 0.0);
        for (int kc = 0; kc < n_c; ++kc) acc += unit_phase(kTwoPi * d * (kc + 0.5) / n_c);
        return acc / static_cast<double>(n_c);
    };

    std::vector<cdouble> entries(m * m);
    parallel_for(m, threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < m; ++j) {
            const int d = central_frequency(indices[i]) - central_frequency(indices[j]);
            const cdouble cf = cfactor(d);
            if (std::abs(cf) < 1e-15) {
                entries[i * m + j] = cdouble(0.0, 0.0);
                continue;
            }
            std::vector<cdouble> rows(grid_n, cdouble(0.0, 0.0));
            for (int r = 0; r < grid_n; ++r) {
                cdouble acc(0.0, 0.0);
                for (int cidx = 0; cidx < grid_n; ++cidx) {
                    const std::size_t off = static_cast<std::size_t>(r) * grid_n + cidx;
                    acc += profiles[i][off] * std::conj(profiles[j][off]);
                }
                rows[r] = acc;
            }
            entries[i * m + j] =
                cf * tree_sum(std::move(rows)) / (static_cast<double>(grid_n) * grid_n);
        }
    });
    return entries;
}
}  // namespace

GramResult gram_matrix(const std::vector<BasisIndex>& indices, int grid_n, int threads) {
    int max_bw = 0;
    for (const auto& idx : indices) max_bw = std::max(max_bw, std::abs(central_frequency(idx)));
    const int n_c = std::max(4, next_pow2(2 * max_bw + 2));

    GramResult res;
    res.n = static_cast<int>(indices.size());
    const auto coarse = gram_entries(indices, grid_n, n_c, threads);
    res.entries = gram_entries(indices, 2 * grid_n, n_c, threads);
    for (std::size_t t = 0; t < res.entries.size(); ++t)
        res.max_doubling_delta = std::max(res.max_doubling_delta, std::abs(res.entries[t] - coarse[t]));
    res.resolved = res.max_doubling_delta < 1e-6;
    return res;
}

long long SpectralLine::multiplicity() const {
    long long total = 0;
    for (const auto& [lambda, ell] : lambda_sectors) total += std::abs(lambda);
    total += static_cast<long long>(torus_points.size());
    return total;
}

std::vector<SpectralLine> enumerate_spectrum(double mu_max) {
    if (mu_max <= 0.0) throw std::invalid_argument("enumerate_spectrum: mu_max must be positive");
    std::vector<SpectralLine> lines;

    // Sector lines mu = sqrt(2 pi m): lambda = +-d for divisors d of m with
    // odd cofactor, l = (m/d - 1)/2.
    const long long m_max = static_cast<long long>(std::floor(mu_max * mu_max / kTwoPi));
    for (long long m = 1; m <= m_max; ++m) {
        SpectralLine line;
        line.mu = std::sqrt(kTwoPi * static_cast<double>(m));
        line.m = m;
        for (long long d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            const long long cof = m / d;
            if (cof % 2 == 0) continue;
            const int ell = static_cast<int>((cof - 1) / 2);
            line.lambda_sectors.emplace_back(static_cast<int>(d), ell);
            line.lambda_sectors.emplace_back(static_cast<int>(-d), ell);
        }
        lines.push_back(std::move(line));
    }

    // Torus lines mu = 2 pi sqrt(n) for n with r_2(n) > 0 (n = 0 included:
    // the constants).
    const long long n_max =
        static_cast<long long>(std::floor((mu_max / kTwoPi) * (mu_max / kTwoPi)));
    for (long long n = 0; n <= n_max; ++n) {
        const CirclePoints pts = circle_lattice_points(n);
        if (pts.points.empty()) continue;
        SpectralLine line;
        line.mu = kTwoPi * std::sqrt(static_cast<double>(n));
        line.n = n;
        line.torus_points = pts.points;
        lines.push_back(std::move(line));
    }

    std::sort(lines.begin(), lines.end(),
              [](const SpectralLine& x, const SpectralLine& y) { return x.mu < y.mu; });
    return lines;
}

Expansion project_pr_lambda(const Expansion& e, int lambda) {
    Expansion out;
    for (const auto& term : e.sector_terms)
        if (term.first.lambda == lambda) out.sector_terms.push_back(term);
    if (lambda == 0) out.torus_terms = e.torus_terms;
    return out;
}

Expansion project_pi_mu(const Expansion& e, double mu) {
    const double mu2 = mu * mu;
    // Candidate integer lines; membership below is integer-exact.
    long long m_star = -1;
    const double m_real = mu2 / kTwoPi;
    if (std::abs(m_real - std::llround(m_real)) < 1e-9 * std::max(1.0, m_real) &&
        std::llround(m_real) > 0)
        m_star = std::llround(m_real);
    long long n_star = -1;
    const double n_real = mu2 / (kTwoPi * kTwoPi);
    if (std::abs(n_real - std::llround(n_real)) < 1e-9 * std::max(1.0, n_real) &&
        std::llround(n_real) >= 0)
        n_star = std::llround(n_real);

    Expansion out;
    for (const auto& term : e.sector_terms) {
        const long long m = static_cast<long long>(std::abs(term.first.lambda)) *
                            (2LL * term.first.ell + 1LL);
        if (m == m_star) out.sector_terms.push_back(term);
    }
    for (const auto& term : e.torus_terms) {
        const long long n = static_cast<long long>(term.first.omega[0]) * term.first.omega[0] +
                            static_cast<long long>(term.first.omega[1]) * term.first.omega[1];
        if (n == n_star) out.torus_terms.push_back(term);
    }
    return out;
}

}  // namespace heis
