#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "heis/basis.hpp"
#include "heis/rng.hpp"

using namespace heis;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

GroupElement random_point(Rng& rng, double scale = 2.0) {
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

GroupElement random_integer_gamma(Rng& rng) {
    return {static_cast<double>(static_cast<int>(rng.below(5)) - 2),
            static_cast<double>(static_cast<int>(rng.below(5)) - 2),
            static_cast<double>(static_cast<int>(rng.below(5)) - 2)};
}
}  // namespace

TEST_CASE("sector index canonicalisation") {
    CHECK(make_sector_index(3, 7, 0).q == 1);
    CHECK(make_sector_index(3, -1, 0).q == 2);
    CHECK(make_sector_index(-4, -9, 2).q == 3);
    CHECK_THROWS_AS(make_sector_index(0, 0, 0), std::invalid_argument);
}

TEST_CASE("torus characters") {
    CHECK(std::abs(eval_chi({{0, 0}}, {0.77, -1.2, 3.4}) - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(eval_chi({{1, 0}}, {0.25, 0.9, 0.1}) - cdouble(0.0, 1.0)) < 1e-15);
    Rng rng(71);
    for (int t = 0; t < 30; ++t) {
        const GroupElement p = random_point(rng);
        const GroupElement shifted = multiply({1, 1, 1}, p);
        const TorusIndex w{{static_cast<int>(rng.below(5)) - 2, static_cast<int>(rng.below(5)) - 2}};
        CHECK(std::abs(eval_chi(w, p) - eval_chi(w, shifted)) < 1e-12);
    }
}

TEST_CASE("eval_h is invariant under the integer subgroup") {
    Rng rng(73);
    const double tol = 1e-10;
    for (int t = 0; t < 1000; ++t) {
        const int lambda = (rng.below(2) ? 1 : -1) * (1 + static_cast<int>(rng.below(3)));
        const auto idx = make_sector_index(lambda, static_cast<long long>(rng.below(8)),
                                           static_cast<int>(rng.below(4)));
        const GroupElement p = random_point(rng);
        const GroupElement gp = multiply(random_integer_gamma(rng), p);
        CHECK(std::abs(eval_h(idx, p, tol) - eval_h(idx, gp, tol)) < 10 * tol);
    }
}

TEST_CASE("central behaviour of eval_h") {
    Rng rng(79);
    for (int t = 0; t < 50; ++t) {
        const int lambda = (rng.below(2) ? 2 : -3);
        const auto idx = make_sector_index(lambda, 1, 2);
        const GroupElement p = random_point(rng);
        const cdouble with_c = eval_h(idx, p, 1e-12);
        const cdouble at_zero = eval_h(idx, {p.a, p.b, 0.0}, 1e-12);
        CHECK(std::abs(with_c - std::exp(cdouble(0, kTwoPi * lambda * p.c)) * at_zero) < 1e-10);
    }
}

TEST_CASE("deninger-singhof basis is the q-Fourier transform of ours") {
    Rng rng(83);
    for (int lambda : {1, 3, -2}) {
        const int m = std::abs(lambda);
        for (int t = 0; t < 20; ++t) {
            const GroupElement p = random_point(rng, 1.5);
            const int ell = static_cast<int>(rng.below(3));
            const int q = static_cast<int>(rng.below(m));
            cdouble sum(0.0, 0.0);
            for (int r = 0; r < m; ++r) {
                sum += std::exp(cdouble(0, -kTwoPi * q * r / lambda)) * eval_g_ds(lambda, r, ell, p, 1e-12);
            }
            sum *= (lambda > 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(m));
            const cdouble direct = eval_h(make_sector_index(lambda, q, ell), p, 1e-12);
            CHECK(std::abs(sum - direct) < 1e-9);
        }
    }
    // lambda = 1: single term, g equals h
    const GroupElement p{0.3, 0.6, 0.2};
    CHECK(std::abs(eval_g_ds(1, 0, 2, p, 1e-12) - eval_h(make_sector_index(1, 0, 2), p, 1e-12)) <
          1e-10);
}

TEST_CASE("deninger-singhof functions satisfy the same eigen-equation") {
    Rng rng(85);
    for (int lambda : {1, 3, -2}) {
        for (int ell : {0, 1, 4}) {
            const double eig = kTwoPi * std::abs(lambda) * (2.0 * ell + 1.0);
            for (int r = 0; r < std::abs(lambda); ++r) {
                for (int t = 0; t < 20; ++t) {
                    const GroupElement p = random_point(rng);
                    const cdouble lhs = apply_sublaplacian_g_ds(lambda, r, ell, p, 1e-10);
                    const cdouble rhs = eig * eval_g_ds(lambda, r, ell, p, 1e-10);
                    CHECK(std::abs(lhs - rhs) < 1e-6 * eig);
                }
            }
        }
    }
}

TEST_CASE("eigenvalues") {
    CHECK(eigenvalue(make_sector_index(1, 0, 0)) == doctest::Approx(kTwoPi));
    CHECK(eigenvalue(TorusIndex{{1, 0}}) == doctest::Approx(kTwoPi * kTwoPi));
    CHECK(eigenvalue(make_sector_index(-3, 1, 2)) == doctest::Approx(30.0 * kPi));
}

TEST_CASE("sub-Laplacian eigen-equation") {
    Rng rng(89);
    for (int lambda : {1, -2, 4}) {
        for (int ell : {0, 1, 3, 6}) {
            const auto idx = make_sector_index(lambda, std::abs(lambda) > 1 ? 1 : 0, ell);
            const double eig = eigenvalue(idx);
            for (int t = 0; t < 100; ++t) {
                const GroupElement p = random_point(rng);
                const cdouble lhs = apply_sublaplacian(idx, p, 1e-10);
                const cdouble rhs = eig * eval_h(idx, p, 1e-10);
                CHECK(std::abs(lhs - rhs) < 1e-6 * eig);
            }
        }
    }
    // torus path is analytic
    const TorusIndex w{{2, -1}};
    for (int t = 0; t < 20; ++t) {
        const GroupElement p = random_point(rng);
        CHECK(std::abs(apply_sublaplacian(w, p) - eigenvalue(w) * eval_chi(w, p)) < 1e-12);
    }
    // pure theta-like series at l = 0, lambda = 1
    const auto ground = make_sector_index(1, 0, 0);
    for (int t = 0; t < 20; ++t) {
        const GroupElement p = random_point(rng);
        const cdouble lhs = apply_sublaplacian(ground, p, 1e-12);
        const cdouble rhs = kTwoPi * eval_h(ground, p, 1e-12);
        CHECK(std::abs(lhs - rhs) < 1e-8 * kTwoPi);
    }
}

TEST_CASE("translation covariance of the basis") {
    Rng rng(97);
    const double tol = 1e-10;
    SUBCASE("zero shift is exact") {
        const auto idx = make_sector_index(3, 1, 2);
        const auto [r1, r2] = covariance_check(idx, 0, {0.21, 0.55, 0.13}, tol);
        CHECK(r1 == 0.0);
        CHECK(r2 == 0.0);
    }
    SUBCASE("shift by lambda reduces to periodicity") {
        const auto idx = make_sector_index(3, 2, 1);
        for (int t = 0; t < 20; ++t) {
            const auto [r1, r2] = covariance_check(idx, 3, random_point(rng), tol);
            CHECK(r1 < 10 * tol);
            CHECK(r2 < 10 * tol);
        }
    }
    SUBCASE("random shifts") {
        for (int t = 0; t < 200; ++t) {
            const int lambda = (rng.below(2) ? 1 : -1) * (1 + static_cast<int>(rng.below(4)));
            const auto idx = make_sector_index(lambda, static_cast<long long>(rng.below(8)),
                                               static_cast<int>(rng.below(4)));
            const int shift = static_cast<int>(rng.below(9)) - 4;
            const auto [r1, r2] = covariance_check(idx, shift, random_point(rng), tol);
            CHECK(r1 < 10 * tol);
            CHECK(r2 < 10 * tol);
        }
    }
}

TEST_CASE("small gram matrix is the identity") {
    std::vector<BasisIndex> indices;
    for (int lambda : {-2, -1, 1, 2}) {
        for (int ell = 0; ell <= 2; ++ell) {
            for (int q = 0; q < std::abs(lambda); ++q)
                indices.push_back(make_sector_index(lambda, q, ell));
        }
    }
    for (int w1 = -1; w1 <= 1; ++w1)
        for (int w2 = -1; w2 <= 1; ++w2) indices.push_back(TorusIndex{{w1, w2}});

    const GramResult gram = gram_matrix(indices, 32);
    CHECK(gram.resolved);
    for (int i = 0; i < gram.n; ++i) {
        for (int j = 0; j < gram.n; ++j) {
            const cdouble expect = i == j ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
            CHECK(std::abs(gram.at(i, j) - expect) < 1e-8);
        }
    }

    // a grid too coarse for the packet bandwidth must be flagged
    const GramResult coarse = gram_matrix({make_sector_index(2, 0, 2), make_sector_index(2, 1, 2)}, 2);
    CHECK_FALSE(coarse.resolved);
}

TEST_CASE("spectrum enumeration with multiplicities") {
    const auto lines = enumerate_spectrum(16.0);

    // first lines: mu = 0 (constants), then sqrt(2 pi m)
    REQUIRE(!lines.empty());
    CHECK(lines[0].mu == doctest::Approx(0.0));
    CHECK(lines[0].n == 0);
    CHECK(lines[1].m == 1);
    CHECK(lines[1].mu == doctest::Approx(std::sqrt(kTwoPi)));
    CHECK(lines[1].multiplicity() == 2);

    std::map<long long, const SpectralLine*> sector_lines;
    std::map<long long, const SpectralLine*> torus_lines;
    for (const auto& line : lines) {
        CHECK((line.lambda_sectors.empty() || line.torus_points.empty()));
        if (!line.lambda_sectors.empty()) sector_lines[line.m] = &line;
        if (!line.torus_points.empty()) torus_lines[line.n] = &line;
    }
    CHECK(sector_lines.at(3)->multiplicity() == 8);  // 2 (1 + 3)
    CHECK(torus_lines.at(1)->multiplicity() == 4);   // r_2(1)

    // brute-force enumeration of raw triples (lambda, q, l)
    std::map<long long, long long> brute;
    const long long m_max = static_cast<long long>(16.0 * 16.0 / kTwoPi);
    for (long long lam = 1; lam <= m_max; ++lam) {
        for (long long ell = 0; lam * (2 * ell + 1) <= m_max; ++ell) {
            brute[lam * (2 * ell + 1)] += 2 * lam;  // lambda = +-lam, q in [0, lam)
        }
    }
    for (const auto& [m, line] : sector_lines) {
        CHECK(line->multiplicity() == brute.at(m));
        for (const auto& [lam, ell] : line->lambda_sectors) {
            CHECK(static_cast<long long>(std::abs(lam)) * (2 * ell + 1) == m);
        }
    }
}

TEST_CASE("sector and spectral projectors") {
    Rng rng(101);
    Expansion e;
    e.sector_terms.push_back({make_sector_index(2, 0, 1), rng.cnormal()});
    e.sector_terms.push_back({make_sector_index(2, 1, 1), rng.cnormal()});
    e.sector_terms.push_back({make_sector_index(-1, 0, 0), rng.cnormal()});
    e.sector_terms.push_back({make_sector_index(3, 2, 0), rng.cnormal()});
    e.torus_terms.push_back({TorusIndex{{1, 0}}, rng.cnormal()});
    e.torus_terms.push_back({TorusIndex{{0, -1}}, rng.cnormal()});
    e.torus_terms.push_back({TorusIndex{{1, 1}}, rng.cnormal()});

    SUBCASE("Pr_lambda keeps its own sector and is norm non-increasing") {
        const Expansion p2 = project_pr_lambda(e, 2);
        CHECK(p2.sector_terms.size() == 2);
        CHECK(p2.torus_terms.empty());
        CHECK(coeff_norm2(p2) <= coeff_norm2(e) + 1e-15);

        const Expansion pure = project_pr_lambda(p2, 2);
        CHECK(coeff_norm2(pure) == doctest::Approx(coeff_norm2(p2)));

        const Expansion p0 = project_pr_lambda(e, 0);
        CHECK(p0.sector_terms.empty());
        CHECK(p0.torus_terms.size() == 3);
    }

    SUBCASE("Pi_mu selects exact eigenvalue classes") {
        // mu^2 = 2 pi * 6 catches (2,*,1) [2*3=6] and (3,*,0)? 3*1=3, no: only m=6
        const double mu6 = std::sqrt(kTwoPi * 6.0);
        const Expansion p = project_pi_mu(e, mu6);
        CHECK(p.sector_terms.size() == 2);
        CHECK(p.torus_terms.empty());

        const double mu_torus = kTwoPi * std::sqrt(2.0);  // |omega|^2 = 2
        const Expansion pt = project_pi_mu(e, mu_torus);
        CHECK(pt.sector_terms.empty());
        CHECK(pt.torus_terms.size() == 1);

        // off-spectrum: empty
        const Expansion off = project_pi_mu(e, 1.2345);
        CHECK(off.sector_terms.empty());
        CHECK(off.torus_terms.empty());

        // Plancherel on the projected part
        double expect = 0.0;
        for (const auto& [idx, c] : e.sector_terms)
            if (std::abs(idx.lambda) * (2 * idx.ell + 1) == 6) expect += std::norm(c);
        CHECK(coeff_norm2(p) == doctest::Approx(expect));
    }

    SUBCASE("projectors commute") {
        for (double mu : {std::sqrt(kTwoPi * 6.0), kTwoPi, 2.0}) {
            for (int lambda : {-1, 0, 2, 3}) {
                const Expansion ab = project_pi_mu(project_pr_lambda(e, lambda), mu);
                const Expansion ba = project_pr_lambda(project_pi_mu(e, mu), lambda);
                CHECK(coeff_norm2(ab) == doctest::Approx(coeff_norm2(ba)));
                CHECK(ab.sector_terms.size() == ba.sector_terms.size());
                CHECK(ab.torus_terms.size() == ba.torus_terms.size());
            }
        }
    }
}
