#include "heis/key_identity.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "heis/fft.hpp"
#include "heis/special_fn.hpp"

namespace heis {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
constexpr long long kRadiusCap = 1000000;

cdouble unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

int checked_modulus(const CoeffVector& v, const char* who) {
    const int m = std::abs(v.lambda);
    if (m == 0) throw std::invalid_argument(std::string(who) + ": lambda must be nonzero");
    if (static_cast<int>(v.gamma.size()) != m)
        throw std::invalid_argument(std::string(who) + ": coefficient count must equal |lambda|");
    return m;
}

double norm2_of(const CoeffVector& v) {
    double s = 0.0;
    for (const auto& z : v.gamma) s += std::norm(z);
    return s;
}
}  // namespace

STFTMatrix discrete_stft(const CoeffVector& gamma, const CoeffVector& eta) {
    const int m = checked_modulus(gamma, "discrete_stft");
    if (checked_modulus(eta, "discrete_stft") != m)
        throw std::invalid_argument("discrete_stft: modulus mismatch");
    STFTMatrix out;
    out.modulus = m;
    out.table.resize(static_cast<std::size_t>(m) * m);
    std::vector<cdouble> row(m);
    for (int a = 0; a < m; ++a) {
        for (int q = 0; q < m; ++q) {
            int qa = (q - a) % m;
            if (qa < 0) qa += m;
            row[q] = eta.gamma[q] * std::conj(gamma.gamma[qa]);
        }
        fft::dft(row, /*inverse=*/false);  // V(a,b) = sum_q row(q) e^{-2 pi i b q / m}
        for (int b = 0; b < m; ++b) out.table[static_cast<std::size_t>(a) * m + b] = row[b];
    }
    return out;
}

double moyal_sum(const STFTMatrix& m) {
    double total = 0.0;
    for (const auto& z : m.table) total += std::norm(z);
    return total;
}

cdouble inner_sum(const CoeffVector& gamma, long long a, long long b) {
    const int m = checked_modulus(gamma, "inner_sum");
    cdouble acc(0.0, 0.0);
    for (int q = 0; q < m; ++q) {
        long long qb = (q - b) % m;
        if (qb < 0) qb += m;
        acc += gamma.gamma[q] * std::conj(gamma.gamma[qb]) *
               unit_phase(kTwoPi * static_cast<double>(q) * a / gamma.lambda);
    }
    return acc;
}

std::vector<cdouble> s_table(const CoeffVector& gamma) {
    const int m = checked_modulus(gamma, "s_table");
    std::vector<cdouble> table(static_cast<std::size_t>(m) * m);
    std::vector<cdouble> col(m);
    for (int b = 0; b < m; ++b) {
        for (int q = 0; q < m; ++q) {
            int qb = (q - b) % m;
            if (qb < 0) qb += m;
            col[q] = gamma.gamma[q] * std::conj(gamma.gamma[qb]);
        }
        fft::dft(col, /*inverse=*/true);  // S(alpha,b) = sum_q col(q) e^{+2 pi i alpha q / m}
        for (int alpha = 0; alpha < m; ++alpha)
            table[static_cast<std::size_t>(alpha) * m + b] = col[alpha];
    }
    return table;
}

LatticeWeight laguerre_weight(int lambda, int ell) {
    if (lambda == 0) throw std::invalid_argument("laguerre_weight: lambda must be nonzero");
    const int m = std::abs(lambda);
    LatticeWeight w;
    w.w = [m, ell](long long a, long long b) -> cdouble {
        const double v = kPi * static_cast<double>(a * a + b * b) / m;
        return laguerre_fn(ell, v);
    };
    w.envelope = laguerre_tail_constant() * (2.0 * ell + 1.0) * m / kPi;
    // The recurrence output vanishes identically once exp(-v/2) underflows.
    w.support_s = (1492.0 + 4.0 * ell) * m / kPi;
    return w;
}

LatticeWeight window_weight(int lambda, const LineWindow& h, int quad_points, int max_degree) {
    if (lambda == 0) throw std::invalid_argument("window_weight: lambda must be nonzero");
    const int m = std::abs(lambda);
    const double r = h.radius;

    // w(a,b) = int h(u) h(u + a/lambda) e^{-2 pi i u b} du over the window support.
    auto raw = [m, r, quad_points, h](long long a, long long b) -> cdouble {
        const double shift = static_cast<double>(a) / m;
        const double lo = std::max(-r, -r - shift);
        const double hi = std::min(r, r - shift);
        if (lo >= hi) return {0.0, 0.0};
        const double step = (hi - lo) / quad_points;
        cdouble acc(0.0, 0.0);
        for (int i = 0; i <= quad_points; ++i) {
            const double u = lo + i * step;
            const double weight = (i == 0 || i == quad_points) ? 0.5 : 1.0;
            acc += weight * h.eval(u) * h.eval(u + shift) * unit_phase(-kTwoPi * u * b);
        }
        return acc * step;
    };

    const double support_s = 2.0 * (2.0 * r * m) * (2.0 * r * m) + 64.0;

    // Envelope fitted on the computed region, with a factor-2 safety margin on
    // top of the Laguerre-type decay rate for the top Hermite degree present.
    auto cache = std::make_shared<std::unordered_map<long long, cdouble>>();
    auto keyed = [raw, cache, support_s](long long a, long long b) -> cdouble {
        if (static_cast<double>(a * a + b * b) > support_s) return {0.0, 0.0};
        const long long key = (a + (1LL << 22)) * (1LL << 23) + (b + (1LL << 22));
        auto it = cache->find(key);
        if (it != cache->end()) return it->second;
        const cdouble val = raw(a, b);
        cache->emplace(key, val);
        return val;
    };

    double sup = 1.0;
    const long long probe = static_cast<long long>(std::ceil(std::sqrt(support_s)));
    for (long long a = -probe; a <= probe; a += std::max<long long>(1, probe / 24)) {
        for (long long b = -probe; b <= probe; b += std::max<long long>(1, probe / 24)) {
            const long long s = a * a + b * b;
            if (s == 0 || static_cast<double>(s) > support_s) continue;
            const double decay = std::abs(keyed(a, b)) * kPi * static_cast<double>(s) /
                                 (m * (2.0 * max_degree + 1.0));
            sup = std::max(sup, decay);
        }
    }

    LatticeWeight w;
    w.w = keyed;
    w.envelope = 2.0 * sup * (2.0 * max_degree + 1.0) * m / kPi;
    w.support_s = support_s;
    return w;
}

LatticeSumResult lattice_sum_weighted(const CoeffVector& gamma, const LatticeWeight& weight,
                                      double tol) {
    const int m = checked_modulus(gamma, "lattice_sum_weighted");
    LatticeSumResult res;
    const double norm2 = norm2_of(gamma);
    if (norm2 == 0.0) {
        res.truncation_radius = 1;
        return res;
    }

    // All numerically nonzero terms live inside the weight support.
    const long long core_r =
        std::min<long long>(kRadiusCap, static_cast<long long>(std::ceil(std::sqrt(weight.support_s))) + 1);

    // S values: full |lambda|^2 table for small moduli; for large ones a
    // single length-|lambda| DFT row per shift b, used and discarded so the
    // footprint stays O(|lambda|).
    std::vector<cdouble> full;
    const bool use_full = m <= 512;
    if (use_full) full = s_table(gamma);
    std::vector<cdouble> row;
    auto load_row = [&](long long bm) {
        row.assign(m, cdouble(0.0, 0.0));
        for (int q = 0; q < m; ++q) {
            long long qb = (q - bm) % m;
            if (qb < 0) qb += m;
            row[q] = gamma.gamma[q] * std::conj(gamma.gamma[qb]);
        }
        fft::dft(row, /*inverse=*/true);  // row[alpha] = S(alpha, bm)
    };

    double value = 0.0;
    for (long long b = -core_r; b <= core_r; ++b) {
        const double rem = weight.support_s - static_cast<double>(b) * b;
        if (rem < 0.0) continue;
        long long bm = b % m;
        if (bm < 0) bm += m;
        if (!use_full) load_row(bm);
        const long long a_max = static_cast<long long>(std::floor(std::sqrt(rem)));
        for (long long a = -a_max; a <= a_max; ++a) {
            const cdouble wab = weight.w(a, b);
            if (wab == cdouble(0.0, 0.0)) continue;
            long long am = a % m;
            if (am < 0) am += m;
            const cdouble s = use_full ? full[static_cast<std::size_t>(am) * m + bm]
                                       : row[static_cast<std::size_t>(am)];
            value += std::norm(s * wab);
        }
    }
    res.value = value;

    // Smallest radius at which the analytic tail bound meets tol, >= the
    // computed core.
    const double target = tol * std::max(value, 1e-300);
    const double e2 = weight.envelope * weight.envelope * norm2 * norm2;
    double r_needed = std::sqrt(2.0 + kTwoPi * e2 / target);
    long long radius = static_cast<long long>(std::ceil(std::max(r_needed, static_cast<double>(core_r))));
    if (radius > kRadiusCap) {
        radius = kRadiusCap;
        res.tol_reached = false;
    }
    res.truncation_radius = radius;
    res.tail_bound = e2 * kTwoPi / (static_cast<double>(radius) * radius - 2.0);
    res.tol_reached = res.tol_reached && res.tail_bound <= tol * std::max(value, 1e-300);
    return res;
}

LatticeSumResult rhs_lattice_sum(const CoeffVector& gamma, int ell, double tol) {
    return lattice_sum_weighted(gamma, laguerre_weight(gamma.lambda, ell), tol);
}

IdentityResult identity_residual(const CoeffVector& gamma, int ell, double tol, int grid_n,
                                 int threads) {
    const LatticeSumResult rhs = rhs_lattice_sum(gamma, ell, tol);
    const L4Result lhs = l4_norm_sector(gamma.lambda, gamma.gamma,
                                        hermite_window(ell, gamma.lambda), grid_n, grid_n, threads);
    IdentityResult out;
    out.lhs4 = lhs.value;
    out.rhs = rhs.value;
    out.residual = std::abs(lhs.value - rhs.value) / std::max(rhs.value, 1e-30);
    out.resolved = lhs.resolved && rhs.tol_reached;
    return out;
}

IdentityResult identity_residual_window(const CoeffVector& gamma, const LineWindow& h,
                                        const LatticeWeight& weight, double tol, int grid_n,
                                        int threads) {
    const LatticeSumResult rhs = lattice_sum_weighted(gamma, weight, tol);
    const L4Result lhs = l4_norm_sector(gamma.lambda, gamma.gamma, h, grid_n, grid_n, threads);
    IdentityResult out;
    out.lhs4 = lhs.value;
    out.rhs = rhs.value;
    out.residual = std::abs(lhs.value - rhs.value) / std::max(rhs.value, 1e-30);
    out.resolved = lhs.resolved && rhs.tol_reached;
    return out;
}

}  // namespace heis
