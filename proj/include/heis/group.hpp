#pragma once

#include <complex>
#include <functional>

namespace heis {

// A point of the Heisenberg group H_1 = R^3 with the twisted product
// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
struct GroupElement {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

GroupElement multiply(const GroupElement& x, const GroupElement& y);

// (a,b,c)^{-1} = (-a, -b, -c+ab).
GroupElement inverse(const GroupElement& x);

// x = gamma * rep with gamma integer and rep in [0,1)^3.  The integer parts
// are picked in the order a, then b, then c (left multiplication).
struct ReducedPoint {
    GroupElement rep;
    GroupElement gamma;
};
ReducedPoint reduce_mod_gamma(const GroupElement& x);

// A complex function on the line, optionally with an analytic derivative.
// Without one, deriv() uses centered fourth-order differences of step fd_step.
struct LineFn {
    std::function<std::complex<double>(double)> f;
    std::function<std::complex<double>(double)> df;
    double fd_step = 1e-2;

    std::complex<double> operator()(double u) const { return f(u); }
    std::complex<double> deriv(double u) const;
};

// Schroedinger representation: pi_lambda(a,b,c) h (u) = e^{2 pi i lambda (c + u b)} h(u+a).
// The derivative closure is propagated when h carries one.
LineFn schrodinger_apply(int lambda, const GroupElement& g, const LineFn& h);

// (h_{l,lambda}, pi_lambda(g) h_{l,lambda})_{L^2(R)} in closed form:
//   e^{-2 pi i lambda c} e^{pi i lambda b a} La_l(pi |lambda| (a^2 + b^2)).
std::complex<double> matrix_coefficient(int lambda, int ell, const GroupElement& g);

enum class Generator { A, B, S };

// Infinitesimal action on the line:
//   A -> h', B -> u |-> 2 pi i lambda u h(u), S -> 2 pi i lambda h.
LineFn infinitesimal_action(int lambda, Generator which, const LineFn& h);

// The rescaled Hermite function h_{l,lambda} as a LineFn with its exact
// ladder-relation derivative attached.
LineFn hermite_line_fn(int ell, int lambda);

}  // namespace heis
