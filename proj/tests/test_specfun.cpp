#include "doctest.h"

#include "twistmoment/errors.hpp"
#include "twistmoment/quadrature.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>
#include <random>

using namespace twistmoment;
using namespace twistmoment::specfun;

namespace {
double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}
double rel_err_c(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Euler product-limit oracle for Gamma with Richardson extrapolation:
// G_n(z) = n^z n! / (z (z+1) ... (z+n)) -> Gamma(z), error ~ c/n + O(1/n^2).
cplx gamma_product_limit(cplx z) {
    auto G = [z](int n) {
        cplx acc = std::exp(z * std::log((double)n));
        for (int k = 1; k <= n; ++k) acc *= (double)k / (z + (double)(k - 1));
        return acc / (z + (double)n);
    };
    cplx g1 = G(40000), g2 = G(80000), g4 = G(160000);
    // two Richardson levels kill the 1/n and 1/n^2 terms
    cplx r1 = 2.0 * g2 - g1, r2 = 2.0 * g4 - g2;
    return (4.0 * r2 - r1) / 3.0;
}
}  // namespace

TEST_CASE("gamma at integers, half-integers, complex point") {
    CHECK(gamma_complex(cplx(9, 0)).real() == 40320.0);
    CHECK(rel_err(gamma_complex(cplx(0.5, 0)).real(), std::sqrt(M_PI)) < 5e-14);
    CHECK(rel_err(gamma_complex(cplx(1, 0)).real(), 1.0) < 1e-15);
    cplx got = gamma_complex(cplx(2, 3));
    cplx want = gamma_product_limit(cplx(2, 3));
    CHECK(rel_err_c(got, want) < 1e-10);
    // functional equation at a complex point
    cplx z(3.7, -1.9);
    CHECK(rel_err_c(gamma_complex(z + 1.0), z * gamma_complex(z)) < 1e-13);
    // reflection region
    CHECK(rel_err_c(gamma_complex(cplx(-1.5, 0.5)),
                    M_PI / (std::sin(M_PI * cplx(-1.5, 0.5)) * gamma_complex(cplx(2.5, -0.5)))) <
          1e-12);
    CHECK_THROWS_AS(gamma_complex(cplx(-3, 0)), pole_error);
}

TEST_CASE("digamma known values") {
    // psi(1) = -gamma0
    CHECK(rel_err(digamma(cplx(1, 0)).real(), -0.57721566490153286) < 1e-13);
    // psi(2) = 1 - gamma0
    CHECK(rel_err(digamma(cplx(2, 0)).real(), 1.0 - 0.57721566490153286) < 1e-13);
}

TEST_CASE("upper incomplete gamma: closed forms and recurrence") {
    CHECK(upper_gamma(9.0, 0.0) == 40320.0);
    // Gamma(n,x) = (n-1)! e^{-x} sum_{k<n} x^k/k!
    double x = 2.0 * M_PI;
    double sum = 0.0, term = 1.0;
    for (int k = 0; k <= 8; ++k) {
        if (k) term *= x / k;
        sum += term;
    }
    CHECK(rel_err(upper_gamma(9.0, x), 40320.0 * std::exp(-x) * sum) < 1e-14);
    // Gamma(1,x) = e^{-x}
    CHECK(rel_err(upper_gamma(1.0, 3.3), std::exp(-3.3)) < 1e-14);
    // recurrence Gamma(a+1,x) = a Gamma(a,x) + x^a e^{-x} on random (a,x)
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 400; ++i) {
        double a = 0.3 + 12.0 * (rng() % 10000) / 10000.0;
        double xx = 0.05 + 40.0 * (rng() % 10000) / 10000.0;
        double lhs = upper_gamma(a + 1.0, xx);
        double rhs = a * upper_gamma(a, xx) + std::pow(xx, a) * std::exp(-xx);
        CHECK(rel_err(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("complex-parameter incomplete gamma agrees with recurrence and real case") {
    cplx a(9.0, 0.35);
    double x = 7.0;
    cplx lhs = upper_gamma_c(a + 1.0, x);
    cplx rhs = a * upper_gamma_c(a, x) + std::exp(a * std::log(x) - x);
    CHECK(rel_err_c(lhs, rhs) < 1e-12);
    CHECK(rel_err_c(upper_gamma_c(cplx(4.5, 0.0), 2.0), upper_gamma(4.5, 2.0)) < 1e-14);
    // small-x branch
    cplx b(2.25, -0.4);
    cplx l2 = upper_gamma_c(b + 1.0, 0.8);
    cplx r2 = b * upper_gamma_c(b, 0.8) + std::exp(b * std::log(0.8) - 0.8);
    CHECK(rel_err_c(l2, r2) < 1e-12);
}

TEST_CASE("omega kernel identity vs contour oracle") {
    for (double alpha : {0.0, 0.05, -0.05, 0.2}) {
        for (double xi : {0.1, 1.0, 5.0, 20.0}) {
            cplx direct = omega_c(cplx(alpha, 0.0), 18, xi);
            cplx oracle = omega_contour_oracle(cplx(alpha, 0.0), 18, xi);
            INFO("alpha ", alpha, " xi ", xi);
            CHECK(rel_err_c(direct, oracle) < 1e-9);
        }
    }
    // limit xi -> 0 recovers Gamma(alpha + kappa/2)
    CHECK(rel_err(omega(0.0, 18, 1e-12), 40320.0) < 1e-9);
    CHECK_THROWS_AS(omega(0.0, 18, -1.0), domain_error);
    CHECK_THROWS_AS(omega(-10.0, 18, 1.0), domain_error);
}

TEST_CASE("omega exponential decay envelope in the tail") {
    // |omega_0(xi)| <= e^{-2 pi xi} poly(xi) for xi >= kappa: check monotone
    // decay of omega / (e^{-2 pi xi} (2 pi xi)^8) beyond the turnover
    double prev = 1e308;
    for (double xi = 18.0; xi <= 30.0; xi += 1.0) {
        double x = 2.0 * M_PI * xi;
        double env = std::exp(-x) * std::pow(x, 8.0);
        double ratio = omega(0.0, 18, xi) / env;
        CHECK(ratio < prev * (1.0 + 1e-12));
        CHECK(ratio < 2.0);
        prev = ratio;
    }
}

TEST_CASE("omega_dalpha: quadrature vs Richardson finite difference, and -gamma0 identity") {
    // a = 1, x = 0: d/da Gamma(a,0) = Gamma'(1) = -gamma0
    CHECK(std::abs(upper_gamma_da(1.0, 0.0) + 0.57721566490153286) < 1e-10);
    // Gamma'(9) = Gamma(9) psi(9)
    double psi9 = digamma(cplx(9, 0)).real();
    CHECK(rel_err(upper_gamma_da(9.0, 0.0), 40320.0 * psi9) < 1e-11);
    // two-route agreement at the AFE point (scale ~ 1e4)
    for (double xi : {0.1, 0.5, 1.0, 3.0}) {
        double q = omega_dalpha(0.0, 18, xi);
        double h = 1e-5;
        double d1 = (omega(h, 18, xi) - omega(-h, 18, xi)) / (2.0 * h);
        double d2 = (omega(2.0 * h, 18, xi) - omega(-2.0 * h, 18, xi)) / (4.0 * h);
        double richardson = (4.0 * d1 - d2) / 3.0;
        INFO("xi ", xi);
        CHECK(std::abs(q - richardson) < 1e-8 * std::max(1.0, std::abs(q)));
    }
    // xi large: tail empty
    CHECK(std::abs(omega_dalpha(0.0, 18, 17.0)) < 1e-20 * 40320.0);
}

TEST_CASE("zeta: Euler-Maclaurin vs eta route and known values") {
    CHECK(rel_err_c(zeta_em(cplx(2, 0)), cplx(M_PI * M_PI / 6.0, 0)) < 1e-13);
    CHECK(rel_err_c(zeta_em(cplx(1.5, 0)), cplx(2.612375348685488, 0)) < 1e-12);
    for (int j = 0; j < 16; ++j) {
        double th = 2.0 * M_PI * j / 16.0;
        cplx s = cplx(1.0, 0.0) + std::polar(0.3, th);
        CHECK(rel_err_c(zeta_em(s), zeta_eta(s)) < 1e-9);
    }
    CHECK_THROWS_AS(zeta_em(cplx(1, 0)), pole_error);
}

TEST_CASE("Stieltjes constants through gamma3") {
    auto g = stieltjes(3);
    CHECK(std::abs(g[0] - 0.5772156649015329) < 1e-12);
    CHECK(std::abs(g[1] + 0.0728158454836767) < 1e-11);
    CHECK(std::abs(g[2] + 0.0096903631928723) < 1e-10);
    CHECK(std::abs(g[3] - 0.0020538344203033) < 1e-9);

    // independent limit-definition oracle with Euler-Maclaurin correction:
    // gamma1 = lim sum ln k / k - ln(M)^2/2
    const int M = 100000;
    double s = 0.0;
    for (int k = 2; k <= M; ++k) s += std::log((double)k) / k;
    double lM = std::log((double)M);
    double gamma1_oracle = s - lM * lM / 2.0 - lM / (2.0 * M) - (1.0 - lM) / (12.0 * (double)M * M);
    CHECK(std::abs(g[1] - gamma1_oracle) < 1e-10);

    auto zn = zeta_near_one(cplx(0.5, 0.0), 1);
    CHECK(rel_err_c(zn.value, cplx(2.612375348685488, 0)) < 1e-12);
    CHECK(zn.stieltjes.size() == 2);
    CHECK_THROWS_AS(zeta_near_one(cplx(0, 0), 1), pole_error);
    CHECK_THROWS_AS(zeta_near_one(cplx(0.9, 0), 1), domain_error);
}

TEST_CASE("Laurent consistency: zeta_em matches 1/s + sum (-1)^k gamma_k s^k/k!") {
    auto g = stieltjes(6);
    for (double sr : {0.05, -0.04, 0.02}) {
        cplx s(sr, 0.0);
        cplx series = 1.0 / s;
        double fact = 1.0;
        for (int k = 0; k <= 6; ++k) {
            if (k) fact *= k;
            series += (k % 2 == 0 ? 1.0 : -1.0) * g[k] / fact * std::pow(s, (double)k);
        }
        CHECK(rel_err_c(zeta_em(1.0 + s), series) < 1e-10);
    }
}

TEST_CASE("canonical Phi and its Mellin transform") {
    CHECK(phi(1.0) == 0.0);
    CHECK(phi(2.0) == 0.0);
    CHECK(phi(0.5) == 0.0);
    CHECK(phi(1.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
    CHECK(phi(1.2) > 0.0);

    // Phi~(1) pinned by an independent adaptive-quadrature oracle at two levels
    double oracle1 = quad::adaptive_integrate([](double x) { return phi(x); }, 1.0, 2.0,
                                              1e-14, 0.0, 24);
    double oracle2 = quad::adaptive_integrate([](double x) { return phi(x); }, 1.0, 2.0,
                                              1e-15, 0.0, 48);
    CHECK(std::abs(oracle1 - oracle2) < 1e-12);
    CHECK(rel_err(phi_tilde_1(), oracle2) < 1e-11);

    // conjugate symmetry (Phi real)
    cplx p = mellin_phi(cplx(1.0, 0.3));
    cplx q = mellin_phi(cplx(1.0, -0.3));
    CHECK(std::abs(p - std::conj(q)) < 1e-15);

    // |Phi~(1+20i)| <= Phi~(1)
    CHECK(std::abs(mellin_phi(cplx(1.0, 20.0))) <= phi_tilde_1());

    // Mellin derivative relation: d/ds Phi~ = int Phi x^{s-1} ln x dx
    cplx s0(1.3, 0.4);
    double h = 1e-5;
    cplx fd = (mellin_phi(s0 + h) - mellin_phi(s0 - h)) / (2.0 * h);
    cplx qd = quad::gl_integrate_c(
        [s0](double x) {
            return phi(x) * std::exp((s0 - 1.0) * std::log(x)) * std::log(x);
        },
        1.0, 2.0, 400);
    CHECK(std::abs(fd - qd) < 1e-6);
}

TEST_CASE("kernel grid interpolation accuracy <= 1e-9 relative on random points") {
    const auto& grid = KernelGrid::shared(18);
    std::mt19937_64 rng(808);
    double worst_g = 0.0, worst_d = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double u = std::log(1e-6) + (std::log(110.0) - std::log(1e-6)) * (rng() % 1000000) / 1e6;
        double x = std::exp(u);
        worst_g = std::max(worst_g, rel_err(grid.gamma_upper(x), upper_gamma(9.0, x)));
        if (i % 20 == 0)  // the da oracle is a full quadrature; sample less densely
            worst_d = std::max(worst_d, rel_err(grid.gamma_upper_da(x), upper_gamma_da(9.0, x)));
    }
    CHECK(worst_g < 1e-9);
    CHECK(worst_d < 1e-9);
}

TEST_CASE("omega at alpha=0.1, xi=0.5 vs the contour oracle at 1e-10") {
    cplx direct = omega_c(cplx(0.1, 0.0), 18, 0.5);
    cplx oracle = omega_contour_oracle(cplx(0.1, 0.0), 18, 0.5);
    CHECK(std::abs(direct - oracle) / std::abs(oracle) < 1e-10);
}
