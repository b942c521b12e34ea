#include "heis/group.hpp"

#include <cmath>
#include <stdexcept>

#include "heis/special_fn.hpp"

namespace heis {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
constexpr double kPi = 3.14159265358979323846264338327950288;

std::complex<double> unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

void require_nonzero_lambda(int lambda, const char* who) {
    if (lambda == 0) throw std::invalid_argument(std::string(who) + ": lambda must be nonzero");
}
}  // namespace

GroupElement multiply(const GroupElement& x, const GroupElement& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b};
}

GroupElement inverse(const GroupElement& x) { return {-x.a, -x.b, -x.c + x.a * x.b}; }

namespace {
// Fractional part in [0,1); guards the rounding case where x - floor(x)
// lands exactly on 1.0 for x just below an integer.
double split_unit(double x, double& integer_part) {
    integer_part = std::floor(x);
    double frac = x - integer_part;
    if (frac >= 1.0) {
        frac -= 1.0;
        integer_part += 1.0;
    }
    return frac;
}
}  // namespace

ReducedPoint reduce_mod_gamma(const GroupElement& x) {
    ReducedPoint out;
    out.rep.a = split_unit(x.a, out.gamma.a);
    out.rep.b = split_unit(x.b, out.gamma.b);
    // gamma * rep has c-entry gamma.c + rep.c + gamma.a * rep.b.
    out.rep.c = split_unit(x.c - out.gamma.a * out.rep.b, out.gamma.c);
    return out;
}

std::complex<double> LineFn::deriv(double u) const {
    if (df) return df(u);
    const double e = fd_step;
    return (-f(u + 2 * e) + 8.0 * f(u + e) - 8.0 * f(u - e) + f(u - 2 * e)) / (12.0 * e);
}

LineFn schrodinger_apply(int lambda, const GroupElement& g, const LineFn& h) {
    require_nonzero_lambda(lambda, "schrodinger_apply");
    LineFn out;
    out.fd_step = h.fd_step;
    const double lam = lambda;
    const GroupElement gc = g;
    out.f = [lam, gc, h](double u) {
        return unit_phase(kTwoPi * lam * (gc.c + u * gc.b)) * h.f(u + gc.a);
    };
    if (h.df) {
        out.df = [lam, gc, h](double u) {
            const auto phase = unit_phase(kTwoPi * lam * (gc.c + u * gc.b));
            const std::complex<double> i2plb(0.0, kTwoPi * lam * gc.b);
            return phase * (i2plb * h.f(u + gc.a) + h.df(u + gc.a));
        };
    }
    return out;
}

std::complex<double> matrix_coefficient(int lambda, int ell, const GroupElement& g) {
    require_nonzero_lambda(lambda, "matrix_coefficient");
    const double v = kPi * std::abs(lambda) * (g.a * g.a + g.b * g.b);
    return unit_phase(-kTwoPi * lambda * g.c) * unit_phase(kPi * lambda * g.b * g.a) *
           laguerre_fn(ell, v);
}

LineFn infinitesimal_action(int lambda, Generator which, const LineFn& h) {
    LineFn out;
    out.fd_step = h.fd_step;
    const double lam = lambda;
    switch (which) {
        case Generator::A:
            out.f = [h](double u) { return h.deriv(u); };
            break;
        case Generator::B:
            out.f = [lam, h](double u) { return std::complex<double>(0.0, kTwoPi * lam * u) * h.f(u); };
            if (h.df) {
                out.df = [lam, h](double u) {
                    const std::complex<double> i2pl(0.0, kTwoPi * lam);
                    return i2pl * (h.f(u) + u * h.df(u));
                };
            }
            break;
        case Generator::S:
            out.f = [lam, h](double u) { return std::complex<double>(0.0, kTwoPi * lam) * h.f(u); };
            if (h.df) {
                out.df = [lam, h](double u) {
                    return std::complex<double>(0.0, kTwoPi * lam) * h.df(u);
                };
            }
            break;
    }
    return out;
}

LineFn hermite_line_fn(int ell, int lambda) {
    require_nonzero_lambda(lambda, "hermite_line_fn");
    LineFn out;
    out.f = [ell, lambda](double u) -> std::complex<double> { return hermite_rescaled(ell, lambda, u); };
    out.df = [ell, lambda](double u) -> std::complex<double> {
        return hermite_rescaled_d1(ell, lambda, u);
    };
    return out;
}

}  // namespace heis
