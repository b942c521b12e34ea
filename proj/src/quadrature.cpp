#include "heis/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "heis/parallel.hpp"
#include "heis/special_fn.hpp"

namespace heis {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

cdouble unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace

LineWindow hermite_window(int ell, int lambda, double tail_eps) {
    LineWindow w;
    w.eval = [ell, lambda](double u) { return hermite_rescaled(ell, lambda, u); };
    w.radius = hermite_rescaled_radius(ell, lambda, tail_eps);
    return w;
}

SectorFunction sample_sector(int lambda, const std::vector<cdouble>& gamma, const LineWindow& w,
                             int n_a, int n_b, int threads) {
    if (lambda == 0) throw std::invalid_argument("sample_sector: lambda must be nonzero");
    const int mod = std::abs(lambda);
    if (static_cast<int>(gamma.size()) != mod)
        throw std::invalid_argument("sample_sector: coefficient count must equal |lambda|");

    // G(k) = sum_q gamma_q e^{-2 pi i q k / lambda}; |lambda|-periodic in k.
    std::vector<cdouble> G(mod);
    for (int k = 0; k < mod; ++k) {
        cdouble acc(0.0, 0.0);
        for (int q = 0; q < mod; ++q) acc += gamma[q] * unit_phase(-kTwoPi * q * k / lambda);
        G[k] = acc;
    }

    // k-window: |k/lambda + a| <= radius for a in [0,1).
    const double r = w.radius;
    const double lo_arg = lambda > 0 ? lambda * (-r - 1.0) : lambda * r;
    const double hi_arg = lambda > 0 ? lambda * r : lambda * (-r - 1.0);
    const int k_lo = static_cast<int>(std::floor(lo_arg)) - 1;
    const int k_hi = static_cast<int>(std::ceil(hi_arg)) + 1;

    SectorFunction sf;
    sf.lambda = lambda;
    sf.bandwidth_k = std::max(std::abs(k_lo), std::abs(k_hi));
    sf.grid.n_a = n_a;
    sf.grid.n_b = n_b;
    sf.grid.values.assign(static_cast<std::size_t>(n_a) * n_b, cdouble(0.0, 0.0));

    const double pref = (lambda > 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(mod));

    parallel_for(static_cast<std::size_t>(n_a), threads, [&](std::size_t i) {
        const double a = sf.grid.a_of(static_cast<int>(i));
        // nonzero terms for this row
        std::vector<int> ks;
        std::vector<cdouble> coeff;
        for (int k = k_lo; k <= k_hi; ++k) {
            const double u = static_cast<double>(k) / lambda + a;
            if (std::abs(u) > r) continue;
            const double hval = w.eval(u);
            if (hval == 0.0) continue;
            int km = k % mod;
            if (km < 0) km += mod;
            ks.push_back(k);
            coeff.push_back(pref * G[km] * hval);
        }
        for (int j = 0; j < n_b; ++j) {
            const double b = sf.grid.b_of(j);
            const cdouble step = unit_phase(kTwoPi * b);
            cdouble acc(0.0, 0.0);
            if (!ks.empty()) {
                cdouble ph = unit_phase(kTwoPi * ks.front() * b);
                int prev = ks.front();
                for (std::size_t t = 0; t < ks.size(); ++t) {
                    for (; prev < ks[t]; ++prev) ph *= step;
                    acc += coeff[t] * ph;
                }
            }
            sf.grid.at(static_cast<int>(i), j) = acc;
        }
    });
    return sf;
}

double l4_power_of_grid(const SectorFunction& sf) {
    std::vector<double> rows(sf.grid.n_a, 0.0);
    for (int i = 0; i < sf.grid.n_a; ++i) {
        double acc = 0.0;
        for (int j = 0; j < sf.grid.n_b; ++j) {
            const double m2 = std::norm(sf.grid.at(i, j));
            acc += m2 * m2;
        }
        rows[i] = acc;
    }
    return tree_sum(std::move(rows)) / (static_cast<double>(sf.grid.n_a) * sf.grid.n_b);
}

L4Result l4_norm_sector(int lambda, const std::vector<cdouble>& gamma, const LineWindow& w,
                        int n_a, int n_b, int threads) {
    const SectorFunction coarse = sample_sector(lambda, gamma, w, n_a, n_b, threads);
    const SectorFunction fine = sample_sector(lambda, gamma, w, 2 * n_a, 2 * n_b, threads);
    L4Result res;
    const double v_coarse = l4_power_of_grid(coarse);
    res.value = l4_power_of_grid(fine);
    res.bandwidth_k = fine.bandwidth_k;
    const double scale = std::max(res.value, 1e-300);
    res.doubling_delta = std::abs(res.value - v_coarse) / scale;
    res.resolved = res.doubling_delta < 1e-8;
    return res;
}

namespace {
cdouble inner_on_grid(const PointFn& f, const PointFn& g, int n_ab, int n_c, int threads) {
    std::vector<cdouble> rows(n_ab, cdouble(0.0, 0.0));
    parallel_for(static_cast<std::size_t>(n_ab), threads, [&](std::size_t i) {
        const double a = (static_cast<double>(i) + 0.5) / n_ab;
        cdouble acc(0.0, 0.0);
        for (int j = 0; j < n_ab; ++j) {
            const double b = (j + 0.5) / n_ab;
            for (int kc = 0; kc < n_c; ++kc) {
                const double c = (kc + 0.5) / n_c;
                const GroupElement p{a, b, c};
                acc += f(p) * std::conj(g(p));
            }
        }
        rows[i] = acc;
    });
    return tree_sum(std::move(rows)) / (static_cast<double>(n_ab) * n_ab * n_c);
}
}  // namespace

InnerResult l2_inner_M(const PointFn& f, const PointFn& g, int grid_n, int central_bandwidth,
                       int threads) {
    const int n_c = std::max(4, next_pow2(2 * central_bandwidth + 2));
    InnerResult res;
    const cdouble coarse = inner_on_grid(f, g, grid_n, n_c, threads);
    res.value = inner_on_grid(f, g, 2 * grid_n, n_c, threads);
    res.doubling_delta = std::abs(res.value - coarse);
    res.resolved = res.doubling_delta < 1e-8;
    return res;
}

namespace {
double torus_l4_quadrature(const std::vector<std::pair<std::array<int, 2>, cdouble>>& coeffs,
                           int grid_n) {
    std::vector<double> rows(grid_n, 0.0);
    for (int i = 0; i < grid_n; ++i) {
        const double x = (i + 0.5) / grid_n;
        double acc = 0.0;
        for (int j = 0; j < grid_n; ++j) {
            const double y = (j + 0.5) / grid_n;
            cdouble s(0.0, 0.0);
            for (const auto& [w, c] : coeffs) s += c * unit_phase(kTwoPi * (w[0] * x + w[1] * y));
            const double m2 = std::norm(s);
            acc += m2 * m2;
        }
        rows[i] = acc;
    }
    return tree_sum(std::move(rows)) / (static_cast<double>(grid_n) * grid_n);
}

double torus_l4_plancherel(const std::vector<std::pair<std::array<int, 2>, cdouble>>& coeffs) {
    // ||sum c_w chi_w||_4^4 = sum_rho |Gamma_rho|^2 with
    // Gamma_rho = sum_{w1 - w2 = rho} c_{w1} conj(c_{w2}).
    std::unordered_map<long long, cdouble> corr;
    corr.reserve(coeffs.size() * coeffs.size());
    auto key = [](int x, int y) {
        return (static_cast<long long>(x + (1 << 20)) << 24) | static_cast<long long>(y + (1 << 20));
    };
    for (const auto& [w1, c1] : coeffs)
        for (const auto& [w2, c2] : coeffs)
            corr[key(w1[0] - w2[0], w1[1] - w2[1])] += c1 * std::conj(c2);
    double total = 0.0;
    for (const auto& [k, v] : corr) total += std::norm(v);
    return total;
}
}  // namespace

TorusNormResult lp_norm_torus(const std::vector<std::pair<std::array<int, 2>, cdouble>>& coeffs,
                              int p, int grid_n, TorusL4Route route) {
    TorusNormResult res;
    if (p == 2) {
        double s = 0.0;
        for (const auto& [w, c] : coeffs) s += std::norm(c);
        res.value = std::sqrt(s);
        return res;
    }
    if (p != 4) throw std::invalid_argument("lp_norm_torus: p must be 2 or 4");
    if (route == TorusL4Route::plancherel) {
        res.value = std::pow(torus_l4_plancherel(coeffs), 0.25);
        return res;
    }
    const double coarse = torus_l4_quadrature(coeffs, grid_n);
    const double fine = torus_l4_quadrature(coeffs, 2 * grid_n);
    res.value = std::pow(fine, 0.25);
    res.doubling_delta = std::abs(fine - coarse) / std::max(fine, 1e-300);
    res.resolved = res.doubling_delta < 1e-8;
    return res;
}

}  // namespace heis
