#include "heis/zygmund.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "heis/parallel.hpp"
#include "heis/rng.hpp"

namespace heis {

CirclePoints circle_lattice_points(long long n) {
    if (n < 0) throw std::invalid_argument("circle_lattice_points: n must be nonnegative");
    CirclePoints out;
    out.n = n;
    if (n == 0) {
        out.points.push_back({0, 0});
        return out;
    }
    const long long root = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n))));
    for (long long w1 = -root - 1; w1 <= root + 1; ++w1) {
        const long long rem = n - w1 * w1;
        if (rem < 0) continue;
        long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(rem))));
        while (s * s > rem) --s;
        while ((s + 1) * (s + 1) <= rem) ++s;
        if (s * s != rem) continue;
        if (s == 0) {
            out.points.push_back({static_cast<int>(w1), 0});
        } else {
            out.points.push_back({static_cast<int>(w1), static_cast<int>(s)});
            out.points.push_back({static_cast<int>(w1), static_cast<int>(-s)});
        }
    }
    return out;
}

CorrelationTable correlation_table(const CirclePoints& pts, const std::vector<cdouble>& c) {
    if (c.size() != pts.points.size())
        throw std::invalid_argument("correlation_table: coefficients must align with points");
    CorrelationTable table;
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        for (std::size_t j = 0; j < pts.points.size(); ++j) {
            const std::array<int, 2> rho{pts.points[i][0] - pts.points[j][0],
                                         pts.points[i][1] - pts.points[j][1]};
            table.entries[rho] += c[i] * std::conj(c[j]);
        }
    }
    return table;
}

double l4_via_plancherel(const CorrelationTable& table) {
    double total = 0.0;
    for (const auto& [rho, v] : table.entries) total += std::norm(v);
    return total;
}

int pair_solution_count(const std::array<int, 2>& rho, double r_prime) {
    if (rho[0] == 0 && rho[1] == 0)
        throw std::invalid_argument("pair_solution_count: rho must be nonzero");
    // w1 = rho/2 + t rho^perp/|rho|, |w1|^2 = |rho|^2/4 + t^2 = r'^2.
    const double quarter = 0.25 * (static_cast<double>(rho[0]) * rho[0] +
                                   static_cast<double>(rho[1]) * rho[1]);
    const double disc = r_prime * r_prime - quarter;
    const double scale = std::max(1.0, r_prime * r_prime);
    if (std::abs(disc) <= 1e-12 * scale) return 1;
    return disc > 0.0 ? 2 : 0;
}

namespace {
// Flat key for sparse accumulation; differences of circle points stay well
// inside +-2^20.
long long rho_key(int x, int y) {
    return (static_cast<long long>(x + (1 << 20)) << 24) | static_cast<long long>(y + (1 << 20));
}

struct TrialStats {
    double ratio4 = 0.0;
    double offdiag_ratio = 0.0;
};

TrialStats run_trial(const CirclePoints& pts, Rng& rng) {
    const std::size_t m = pts.points.size();
    std::vector<cdouble> c(m);
    double norm2 = 0.0;
    for (auto& z : c) {
        z = rng.cnormal();
        norm2 += std::norm(z);
    }
    std::unordered_map<long long, cdouble> corr;
    corr.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            corr[rho_key(pts.points[i][0] - pts.points[j][0],
                         pts.points[i][1] - pts.points[j][1])] += c[i] * std::conj(c[j]);
    double total = 0.0;
    double offdiag = 0.0;
    const long long zero = rho_key(0, 0);
    for (const auto& [k, v] : corr) {
        const double a2 = std::norm(v);
        total += a2;
        if (k != zero) offdiag += a2;
    }
    const double denom = norm2 * norm2;
    return {total / denom, offdiag / denom};
}
}  // namespace

ZygmundReport zygmund_certificate(long long n_max, int trials, std::uint64_t seed, int threads) {
    ZygmundReport report;
    report.seed = seed;
    report.trials = trials;

    std::vector<long long> ns;
    for (long long n = 1; n <= n_max; ++n) ns.push_back(n);
    std::vector<ZygmundRow> rows(ns.size());

    parallel_for(ns.size(), threads, [&](std::size_t idx) {
        const long long n = ns[idx];
        const CirclePoints pts = circle_lattice_points(n);
        ZygmundRow row;
        row.n = n;
        row.r2 = static_cast<int>(pts.points.size());
        if (row.r2 > 0) {
            Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(n));
            for (int t = 0; t < trials; ++t) {
                const TrialStats st = run_trial(pts, rng);
                row.max_ratio4 = std::max(row.max_ratio4, st.ratio4);
                row.max_offdiag_ratio = std::max(row.max_offdiag_ratio, st.offdiag_ratio);
            }
        }
        rows[idx] = row;
    });

    for (const auto& row : rows) {
        if (row.r2 == 0) continue;
        report.rows.push_back(row);
        if (row.max_ratio4 > report.max_ratio4) {
            report.max_ratio4 = row.max_ratio4;
            report.argmax_n = row.n;
        }
        if (row.max_ratio4 > 5.0) report.bound_holds = false;
        if (row.max_offdiag_ratio > 4.0) report.offdiag_holds = false;
    }
    return report;
}

bool ordered_pairs_at_most_two(long long n_max) {
    for (long long n = 1; n <= n_max; ++n) {
        const CirclePoints pts = circle_lattice_points(n);
        if (pts.points.empty()) continue;
        std::unordered_map<long long, int> count;
        for (const auto& w1 : pts.points)
            for (const auto& w2 : pts.points) {
                if (w1 == w2) continue;
                if (++count[rho_key(w1[0] - w2[0], w1[1] - w2[1])] > 2) return false;
            }
    }
    return true;
}

}  // namespace heis
