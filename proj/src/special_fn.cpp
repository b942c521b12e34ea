#include "heis/special_fn.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace heis {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kQuarterRootPiInv = 0.75112554446494248285870300477623;  // pi^{-1/4}

double gaussian_offset(double tail_eps) {
    const double core = tail_eps > 0.0 && tail_eps < 1.0 ? std::sqrt(2.0 * std::log(1.0 / tail_eps)) + 2.0 : 2.0;
    return std::max(6.0, core);
}
}  // namespace

double hermite_fn(int ell, double u) {
    double prev = 0.0;
    double cur = kQuarterRootPiInv * std::exp(-0.5 * u * u);
    for (int l = 0; l < ell; ++l) {
        const double next =
            u * std::sqrt(2.0 / (l + 1)) * cur - std::sqrt(static_cast<double>(l) / (l + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> hermite_column(int ell_max, double u) {
    std::vector<double> h(static_cast<std::size_t>(ell_max) + 1);
    h[0] = kQuarterRootPiInv * std::exp(-0.5 * u * u);
    if (ell_max == 0) return h;
    h[1] = std::sqrt(2.0) * u * h[0];
    for (int l = 1; l < ell_max; ++l) {
        h[l + 1] = u * std::sqrt(2.0 / (l + 1)) * h[l] - std::sqrt(static_cast<double>(l) / (l + 1)) * h[l - 1];
    }
    return h;
}

double hermite_fn_d1(int ell, double u) {
    const auto h = hermite_column(ell + 1, u);
    const double lo = ell > 0 ? std::sqrt(2.0 * ell) * h[ell - 1] : 0.0;
    return 0.5 * (lo - std::sqrt(2.0 * (ell + 1)) * h[ell + 1]);
}

double hermite_fn_d2(int ell, double u) {
    // h_l'' = (sqrt(l(l-1)) h_{l-2} - (2l+1) h_l + sqrt((l+1)(l+2)) h_{l+2}) / 2
    const auto h = hermite_column(ell + 2, u);
    const double lo = ell > 1 ? std::sqrt(static_cast<double>(ell) * (ell - 1)) * h[ell - 2] : 0.0;
    const double hi = std::sqrt(static_cast<double>(ell + 1) * (ell + 2)) * h[ell + 2];
    return 0.5 * (lo - (2.0 * ell + 1.0) * h[ell] + hi);
}

namespace {
double rescale_factor(int lambda) {
    if (lambda == 0) throw std::invalid_argument("hermite_rescaled: lambda must be nonzero");
    return std::sqrt(2.0 * kPi * std::abs(lambda));
}
}  // namespace

double hermite_rescaled(int ell, int lambda, double u) {
    const double s = rescale_factor(lambda);
    const double v = s * u;
    if (std::abs(v) > 40.0) return 0.0;
    return std::sqrt(s) * hermite_fn(ell, v);
}

double hermite_rescaled_d1(int ell, int lambda, double u) {
    const double s = rescale_factor(lambda);
    const double v = s * u;
    if (std::abs(v) > 40.0) return 0.0;
    return std::sqrt(s) * s * hermite_fn_d1(ell, v);
}

double hermite_rescaled_d2(int ell, int lambda, double u) {
    const double s = rescale_factor(lambda);
    const double v = s * u;
    if (std::abs(v) > 40.0) return 0.0;
    return std::sqrt(s) * s * s * hermite_fn_d2(ell, v);
}

double hermite_radius(int ell, double tail_eps) {
    return std::sqrt(2.0 * ell + 1.0) + gaussian_offset(tail_eps);
}

double hermite_rescaled_radius(int ell, int lambda, double tail_eps) {
    return hermite_radius(ell, tail_eps) / rescale_factor(lambda);
}

double laguerre_fn(int ell, double v) {
    if (v < 0.0) throw std::invalid_argument("laguerre_fn: v must be nonnegative");
    double prev = 0.0;
    double cur = std::exp(-0.5 * v);
    for (int l = 0; l < ell; ++l) {
        const double next = ((2.0 * l + 1.0 - v) * cur - l * prev) / (l + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> laguerre_column(int ell_max, double v) {
    if (v < 0.0) throw std::invalid_argument("laguerre_column: v must be nonnegative");
    std::vector<double> la(static_cast<std::size_t>(ell_max) + 1);
    la[0] = std::exp(-0.5 * v);
    for (int l = 0; l < ell_max; ++l) {
        const double prev = l > 0 ? la[l - 1] : 0.0;
        la[l + 1] = ((2.0 * l + 1.0 - v) * la[l] - l * prev) / (l + 1);
    }
    return la;
}

double laguerre_tail_constant() {
    // v La_l = (2l+1) La_l - (l+1) La_{l+1} - l La_{l-1}, every term <= 1 in
    // modulus, so |La_l(v)| v <= 2(2l+1).
    return 2.0;
}

double laguerre_fitted_constant(int ell_max) {
    const int grid = 600;
    const double lo = std::log(1e-3);
    const double hi = std::log(1e4);
    double best = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double v = std::exp(lo + (hi - lo) * (i + 0.5) / grid);
        const auto la = laguerre_column(ell_max, v);
        for (int l = 0; l <= ell_max; ++l) {
            best = std::max(best, std::abs(la[l]) * v / (2.0 * l + 1.0));
        }
    }
    return best;
}

double hermite_laguerre_residual(int ell, double x, double y, int quad_points) {
    const double half = 2.0 * (6.0 + std::sqrt(2.0 * ell + 1.0));
    const double step = 2.0 * half / quad_points;
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i <= quad_points; ++i) {
        const double xi = -half + i * step;
        const double w = (i == 0 || i == quad_points) ? 0.5 : 1.0;
        const double prod = hermite_fn(ell, xi + 0.5 * y) * hermite_fn(ell, xi - 0.5 * y);
        acc += w * prod * std::complex<double>(std::cos(x * xi), std::sin(x * xi));
    }
    acc *= step;
    return std::abs(acc - laguerre_fn(ell, 0.5 * (x * x + y * y)));
}

}  // namespace heis
