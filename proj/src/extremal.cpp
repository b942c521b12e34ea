#include "heis/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heis/parallel.hpp"
#include "heis/rng.hpp"
#include "heis/special_fn.hpp"

namespace heis {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

WindowSpec make_window(int lambda, int A) {
    if (lambda <= 0) throw std::invalid_argument("make_window: lambda must be positive");
    if (A < 0 || 8 * A >= lambda)
        throw std::invalid_argument("make_window: need 0 <= A and 8A < lambda");
    WindowSpec w;
    w.lambda = lambda;
    w.A = A;
    w.gamma.lambda = lambda;
    w.gamma.gamma.assign(lambda, cdouble(0.0, 0.0));
    for (int q = -A; q <= A; ++q) {
        int qm = q % lambda;
        if (qm < 0) qm += lambda;
        w.gamma.gamma[qm] = cdouble(1.0, 0.0);
    }
    return w;
}

double lemma_lower_bound(int lambda, int A) {
    if (8 * A >= lambda) throw std::invalid_argument("lemma_lower_bound: need 8A < lambda");
    const double lam = lambda;
    const double a = A;
    return std::exp(-kPi * a * a / lam) * std::exp(-kPi * lam / (a * a)) *
           (2.0 * a / kPi) * (2.0 * a / kPi) * (lam + 2.0 * a + 1.0);
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ols_slope: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingReport sharpness_scan(const std::vector<int>& lambdas, double tol, int threads) {
    ScalingReport report;
    std::vector<int> valid;
    for (int lam : lambdas) {
        const int A = static_cast<int>(std::floor(std::sqrt(static_cast<double>(lam))));
        if (A < 1 || 8 * A >= lam) {
            report.skipped.push_back(lam);
            continue;
        }
        valid.push_back(lam);
    }

    std::vector<ScalingRow> rows(valid.size());
    parallel_for(valid.size(), threads, [&](std::size_t i) {
        const int lam = valid[i];
        const int A = static_cast<int>(std::floor(std::sqrt(static_cast<double>(lam))));
        const WindowSpec w = make_window(lam, A);
        const LatticeSumResult rhs = rhs_lattice_sum(w.gamma, 0, tol);
        ScalingRow row;
        row.lambda = lam;
        row.A = A;
        row.mu = std::sqrt(kTwoPi * lam);
        row.rhs_value = rhs.value;
        row.ratio = std::pow(rhs.value, 0.25) / std::sqrt(2.0 * A + 1.0);
        row.lemma_bound = lemma_lower_bound(lam, A);
        row.truncation_radius = rhs.truncation_radius;
        row.tail_bound = rhs.tail_bound;
        rows[i] = row;
    });
    report.rows = std::move(rows);

    std::vector<double> lx, ly;
    for (const auto& row : report.rows) {
        if (row.lambda < 128) continue;
        lx.push_back(std::log(row.mu));
        ly.push_back(std::log(row.ratio));
    }
    report.fit_rows = static_cast<int>(lx.size());
    if (lx.size() >= 2) report.fitted_slope = ols_slope(lx, ly);
    return report;
}

UpperBoundResult upper_bound_constant(int lambda, int ell, double tol) {
    if (lambda <= 0) throw std::invalid_argument("upper_bound_constant: lambda must be positive");
    const LatticeWeight w = laguerre_weight(lambda, ell);
    const long long core_r = static_cast<long long>(std::ceil(std::sqrt(w.support_s))) + 1;

    double value = 0.0;
    for (long long b = -core_r; b <= core_r; ++b) {
        const double rem = w.support_s - static_cast<double>(b) * b;
        if (rem < 0.0) continue;
        const long long a_max = static_cast<long long>(std::floor(std::sqrt(rem)));
        for (long long a = -a_max; a <= a_max; ++a) value += std::norm(w.w(a, b));
    }

    UpperBoundResult res;
    res.value = value;
    const double target = tol * std::max(value, 1e-300);
    const double e2 = w.envelope * w.envelope;
    double r_needed = std::sqrt(2.0 + kTwoPi * e2 / target);
    long long radius = static_cast<long long>(std::ceil(std::max(r_needed, static_cast<double>(core_r))));
    if (radius > 1000000) {
        radius = 1000000;
        res.tol_reached = false;
    }
    res.truncation_radius = radius;
    res.tail_bound = e2 * kTwoPi / (static_cast<double>(radius) * radius - 2.0);
    res.tol_reached = res.tol_reached && res.tail_bound <= tol * std::max(value, 1e-300);
    return res;
}

QuarticObjective::QuarticObjective(int lambda, int ell) {
    if (lambda <= 0) throw std::invalid_argument("QuarticObjective: lambda must be positive");
    modulus_ = lambda;
    const LatticeWeight w = laguerre_weight(lambda, ell);
    class_weight_.assign(static_cast<std::size_t>(lambda) * lambda, 0.0);
    const long long core_r = static_cast<long long>(std::ceil(std::sqrt(w.support_s))) + 1;
    for (long long b = -core_r; b <= core_r; ++b) {
        const double rem = w.support_s - static_cast<double>(b) * b;
        if (rem < 0.0) continue;
        const long long a_max = static_cast<long long>(std::floor(std::sqrt(rem)));
        long long bm = b % lambda;
        if (bm < 0) bm += lambda;
        for (long long a = -a_max; a <= a_max; ++a) {
            long long am = a % lambda;
            if (am < 0) am += lambda;
            class_weight_[static_cast<std::size_t>(am) * lambda + bm] += std::norm(w.w(a, b));
        }
    }
    phase_.resize(lambda);
    constexpr long double pi_l = 3.14159265358979323846264338327950288L;
    for (int j = 0; j < lambda; ++j) {
        const long double ang = 2.0L * pi_l * j / lambda;
        phase_[j] = {std::cos(ang), std::sin(ang)};
    }
}

namespace {
std::vector<cdouble> packet_s_table(int m, const std::vector<cdouble>& gamma) {
    CoeffVector v;
    v.lambda = m;
    v.gamma = gamma;
    return s_table(v);
}
}  // namespace

long double QuarticObjective::eval_precise(const std::vector<cldouble>& gamma) const {
    const int m = modulus_;
    if (m > 128) {
        std::vector<cdouble> rounded(gamma.size());
        for (std::size_t p = 0; p < gamma.size(); ++p)
            rounded[p] = {static_cast<double>(gamma[p].real()), static_cast<double>(gamma[p].imag())};
        const auto S = packet_s_table(m, rounded);
        long double q = 0.0L;
        for (std::size_t j = 0; j < S.size(); ++j)
            q += static_cast<long double>(class_weight_[j]) *
                 static_cast<long double>(std::norm(S[j]));
        return q;
    }
    std::vector<cldouble> prod(m);
    long double q = 0.0L;
    for (int beta = 0; beta < m; ++beta) {
        for (int p = 0; p < m; ++p) {
            const int pb = ((p - beta) % m + m) % m;
            prod[p] = gamma[p] * std::conj(gamma[pb]);
        }
        for (int alpha = 0; alpha < m; ++alpha) {
            cldouble s(0.0L, 0.0L);
            for (int p = 0; p < m; ++p) s += prod[p] * phase_[(p * alpha) % m];
            q += static_cast<long double>(class_weight_[static_cast<std::size_t>(alpha) * m + beta]) *
                 std::norm(s);
        }
    }
    return q;
}

double QuarticObjective::eval(const std::vector<cdouble>& gamma) const {
    std::vector<cldouble> lifted(gamma.size());
    for (std::size_t p = 0; p < gamma.size(); ++p) lifted[p] = {gamma[p].real(), gamma[p].imag()};
    return static_cast<double>(eval_precise(lifted));
}

std::vector<cdouble> QuarticObjective::grad(const std::vector<cdouble>& gamma) const {
    const int m = modulus_;
    const auto S = packet_s_table(m, gamma);
    std::vector<cdouble> g(m, cdouble(0.0, 0.0));
    for (int p = 0; p < m; ++p) {
        cdouble acc(0.0, 0.0);
        for (int alpha = 0; alpha < m; ++alpha) {
            for (int beta = 0; beta < m; ++beta) {
                const double wj = class_weight_[static_cast<std::size_t>(alpha) * m + beta];
                if (wj == 0.0) continue;
                const cdouble Sj = S[static_cast<std::size_t>(alpha) * m + beta];
                const int pb = (p + beta) % m;
                const int pmb = ((p - beta) % m + m) % m;
                const double ph1 = kTwoPi * static_cast<double>((p + beta) % m) * alpha / m;
                const double ph2 = -kTwoPi * static_cast<double>(p) * alpha / m;
                acc += wj * (gamma[pb] * cdouble(std::cos(ph1), std::sin(ph1)) * std::conj(Sj) +
                             Sj * gamma[pmb] * cdouble(std::cos(ph2), std::sin(ph2)));
            }
        }
        g[p] = acc;
    }
    return g;
}

namespace {
struct AscentOutcome {
    std::vector<cdouble> x;
    double q = 0.0;
    bool converged = false;
    std::vector<double> trajectory;
};

double real_dot(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

using cldouble = std::complex<long double>;

void normalize_ld(std::vector<cldouble>& v) {
    long double n = 0.0L;
    for (const auto& z : v) n += std::norm(z);
    if (n == 0.0L) return;
    const long double inv = 1.0L / std::sqrt(n);
    for (auto& z : v) z *= inv;
}

std::vector<cdouble> round_to_double(const std::vector<cldouble>& v) {
    std::vector<cdouble> out(v.size());
    for (std::size_t p = 0; p < v.size(); ++p)
        out[p] = {static_cast<double>(v[p].real()), static_cast<double>(v[p].imag())};
    return out;
}

// Projected ascent on the coefficient sphere with a Polak-Ribiere momentum
// direction and a backtracking (halving) line search plus one parabolic
// refinement.  The momentum term makes the near-flat extremizer valleys
// tractable; with beta = 0 this is plain steepest ascent.  Acceptance is
// strict, so the trajectory of accepted objective values never decreases.
// Iterates are carried in extended precision: close to the maximum both the
// certifiable gain and the step itself drop below one double ulp.
AscentOutcome projected_ascent(const QuarticObjective& obj, std::vector<cdouble> seed,
                               int max_iters) {
    std::vector<cldouble> x(seed.size());
    for (std::size_t p = 0; p < seed.size(); ++p) x[p] = {seed[p].real(), seed[p].imag()};
    normalize_ld(x);

    AscentOutcome out;
    long double q = obj.eval_precise(x);
    out.trajectory.push_back(static_cast<double>(q));
    std::vector<cdouble> dir_prev, tan_prev;
    double warm = 0.25;
    bool restarted = false;
    for (int iter = 0; iter < max_iters; ++iter) {
        const std::vector<cdouble> xd = round_to_double(x);
        const auto g = obj.grad(xd);
        // ambient real gradient is 2g; the tangent part removes the radial component
        std::vector<cdouble> t(g.size());
        const double radial = 2.0 * real_dot(g, xd);
        double tnorm2 = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) {
            t[p] = 2.0 * g[p] - radial * xd[p];
            tnorm2 += std::norm(t[p]);
        }
        if (std::sqrt(tnorm2) < 1e-8) {
            out.converged = true;
            break;
        }

        std::vector<cdouble> d = t;
        if (!dir_prev.empty()) {
            double num = 0.0;
            for (std::size_t p = 0; p < t.size(); ++p)
                num += t[p].real() * (t[p].real() - tan_prev[p].real()) +
                       t[p].imag() * (t[p].imag() - tan_prev[p].imag());
            const double beta = std::max(0.0, num / real_dot(tan_prev, tan_prev));
            for (std::size_t p = 0; p < t.size(); ++p) d[p] = t[p] + beta * dir_prev[p];
            if (real_dot(d, t) <= 0.0) d = t;
        }

        auto lifted = [&](double s) {
            std::vector<cldouble> trial(x.size());
            for (std::size_t p = 0; p < x.size(); ++p)
                trial[p] = x[p] + static_cast<long double>(s) * cldouble(d[p].real(), d[p].imag());
            normalize_ld(trial);
            return trial;
        };

        double s = warm;
        std::vector<cldouble> best = lifted(s);
        long double qs = obj.eval_precise(best);
        while (qs <= q && s >= 1e-18) {
            s *= 0.5;
            best = lifted(s);
            qs = obj.eval_precise(best);
        }
        if (qs <= q) {
            if (!dir_prev.empty() && !restarted) {
                // drop the momentum and retry once from the raw gradient
                dir_prev.clear();
                tan_prev.clear();
                warm = 1e-3;
                restarted = true;
                continue;
            }
            break;  // line search exhausted
        }
        restarted = false;

        // expand while improving, then one parabolic vertex refinement
        double s_hi = 2.0 * s;
        std::vector<cldouble> cand = lifted(s_hi);
        long double q_hi = obj.eval_precise(cand);
        while (q_hi > qs) {
            s = s_hi;
            qs = q_hi;
            best = std::move(cand);
            s_hi = 2.0 * s;
            cand = lifted(s_hi);
            q_hi = obj.eval_precise(cand);
        }
        const double s_lo = 0.5 * s;
        const long double q_lo = obj.eval_precise(lifted(s_lo));
        const long double denom = (static_cast<long double>(s_lo) - s) * (s_lo - s_hi) *
                                  (static_cast<long double>(s) - s_hi);
        if (denom != 0.0L) {
            const long double A =
                (s_hi * (qs - q_lo) + s * (q_lo - q_hi) + s_lo * (q_hi - qs)) / denom;
            const long double B = (s_hi * s_hi * (q_lo - qs) + s * s * (q_hi - q_lo) +
                                   s_lo * s_lo * (qs - q_hi)) /
                                  denom;
            if (A < 0.0L) {
                const double s_v = static_cast<double>(-B / (2.0L * A));
                if (s_v > 0.0) {
                    std::vector<cldouble> vert = lifted(s_v);
                    const long double q_v = obj.eval_precise(vert);
                    if (q_v > qs) {
                        s = s_v;
                        qs = q_v;
                        best = std::move(vert);
                    }
                }
            }
        }

        x = std::move(best);
        q = qs;
        out.trajectory.push_back(static_cast<double>(q));
        warm = s;
        dir_prev = std::move(d);
        tan_prev = std::move(t);
    }
    out.x = round_to_double(x);
    out.q = static_cast<double>(q);
    return out;
}
}  // namespace

ExtremizerResult maximize_ratio(int lambda, int ell, int restarts, int max_iters,
                                std::uint64_t seed, int threads) {
    if (restarts < 1) throw std::invalid_argument("maximize_ratio: restarts must be >= 1");
    const QuarticObjective obj(lambda, ell);
    const int m = lambda;

    std::vector<std::vector<cdouble>> seeds;
    {
        // (i) widest valid indicator window (A = 0 degenerates to a delta)
        int A = static_cast<int>(std::floor(std::sqrt(static_cast<double>(m))));
        while (A > 0 && 8 * A >= m) --A;
        std::vector<cdouble> ind(m, cdouble(0.0, 0.0));
        for (int q = -A; q <= A; ++q) ind[((q % m) + m) % m] = 1.0;
        seeds.push_back(std::move(ind));
        // (ii) single-q delta
        std::vector<cdouble> delta(m, cdouble(0.0, 0.0));
        delta[0] = 1.0;
        seeds.push_back(std::move(delta));
    }
    for (int r = static_cast<int>(seeds.size()); r < restarts; ++r) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(r));
        std::vector<cdouble> v(m);
        for (auto& z : v) z = rng.cnormal();
        seeds.push_back(std::move(v));
    }
    seeds.resize(static_cast<std::size_t>(restarts));

    // restarts run in parallel; selection below is a fixed-order scan
    // (max ratio, ties resolved by restart index)
    std::vector<AscentOutcome> outcomes(seeds.size());
    parallel_for(seeds.size(), threads,
                 [&](std::size_t r) { outcomes[r] = projected_ascent(obj, seeds[r], max_iters); });

    ExtremizerResult best;
    best.restarts_used = restarts;
    best.trajectories.resize(seeds.size());
    double best_q = -1.0;
    for (std::size_t r = 0; r < seeds.size(); ++r) {
        best.trajectories[r] = outcomes[r].trajectory;
        if (outcomes[r].q > best_q) {
            best_q = outcomes[r].q;
            best.converged = outcomes[r].converged;
            best.gamma_star.lambda = lambda;
            best.gamma_star.gamma = outcomes[r].x;
        }
    }
    best.ratio = std::pow(best_q, 0.25);
    return best;
}

double bernstein_ceiling(double mu, const Calibration& cal) {
    if (mu <= 0.0) throw std::invalid_argument("bernstein_ceiling: mu must be positive");
    return cal.bernstein_c_fit * mu;
}

}  // namespace heis
