#include "doctest.h"

#include "twistmoment/eigenform.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/eulerprod.hpp"
#include "twistmoment/mainterm.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>
#include <filesystem>
#include <random>

using namespace twistmoment;
using namespace twistmoment::mainterm;

namespace {

const EigenformTable& big_table() {
    static const EigenformTable t = [] {
        std::string dir = (std::filesystem::temp_directory_path() / "twm-test-cache").string();
        return eigenform::build_or_load(18, 250000, dir);
    }();
    return t;
}

const MainTerm& mt() {
    static const MainTerm m(big_table(), 10000, 1e4);
    return m;
}

}  // namespace

TEST_CASE("truncated Laurent: identities and error paths") {
    // (1/s) * s = 1
    auto inv_s = TruncatedLaurent(-1, std::vector<cplx>{1.0, 0, 0, 0, 0, 0, 0, 0});
    auto s = TruncatedLaurent(1, std::vector<cplx>{1.0, 0, 0, 0, 0, 0, 0, 0});
    auto prod = inv_s * s;
    CHECK(prod.coeff(0) == cplx(1.0));
    CHECK(prod.coeff(1) == cplx(0.0));
    CHECK(prod.residue() == cplx(0.0));

    // residue((g0 s + g1 s^2)/s^2) = g0
    auto g = specfun::stieltjes(1);
    auto num = TruncatedLaurent(1, std::vector<cplx>{g[0], g[1], 0, 0, 0, 0, 0, 0});
    CHECK(num.shifted(-2).residue().real() == doctest::Approx(g[0]).epsilon(1e-15));

    // residue(e^{s^2}/s^3) = 1
    CHECK(exp_s2_series().shifted(-3).residue().real() == doctest::Approx(1.0));

    // inversion requires a nonzero leading coefficient
    auto sing = TruncatedLaurent(0, std::vector<cplx>{0.0, 1.0, 0, 0});
    CHECK_THROWS_AS(sing.inverse(), domain_error);

    // reading beyond the stored truncation is an order error
    CHECK(num.coeff(5) == cplx(0.0));  // inside the stored window
    CHECK_THROWS_AS(num.coeff(9), accuracy_error);
}

TEST_CASE("truncated Laurent: randomized ring axioms") {
    std::mt19937_64 rng(515);
    auto rand_series = [&] {
        int low = (int)(rng() % 7) - 3;
        std::vector<cplx> c(8);
        for (auto& v : c)
            v = cplx((double)(rng() % 2001) / 1000.0 - 1.0, (double)(rng() % 2001) / 1000.0 - 1.0);
        return TruncatedLaurent(low, std::move(c));
    };
    for (int iter = 0; iter < 1000; ++iter) {
        auto a = rand_series(), b = rand_series(), c = rand_series();
        auto left = (a * b) * c;
        auto right = a * (b * c);
        for (int e = left.low(); e < left.low() + left.length(); ++e)
            CHECK(std::abs(left.coeff(e) - right.coeff(e)) < 1e-9);
        auto dist_l = a * (b + c);
        auto dist_r = a * b + a * c;
        for (int e = std::max(dist_l.low(), dist_r.low());
             e < std::max(dist_l.low(), dist_r.low()) + 4; ++e)
            CHECK(std::abs(dist_l.coeff(e) - dist_r.coeff(e)) < 1e-9);
        // a * a^{-1} = 1 when invertible
        if (std::abs(a.coeff(a.low())) > 1e-3) {
            auto unit = a * a.inverse();
            CHECK(std::abs(unit.coeff(0) - 1.0) < 1e-9);
            CHECK(std::abs(unit.coeff(1)) < 1e-9);
        }
    }
}

TEST_CASE("zeta Laurent series matches zeta_em pointwise") {
    auto zl = zeta_laurent();
    auto zpl = zeta_prime_laurent();
    for (double x : {0.05, -0.03}) {
        cplx s(x, 0.0);
        cplx val = 0.0, dval = 0.0;
        for (int e = zl.low(); e < zl.low() + zl.length(); ++e)
            val += zl.coeff(e) * std::pow(s, (double)e);
        for (int e = zpl.low(); e < zpl.low() + zpl.length(); ++e)
            dval += zpl.coeff(e) * std::pow(s, (double)e);
        CHECK(std::abs(val - specfun::zeta_em(1.0 + s)) < 1e-10);
        // differencing the entire part g(s) = zeta(1+s) - 1/s avoids the pole
        double h = 1e-5;
        auto g_of = [](cplx z) { return specfun::zeta_em(1.0 + z) - 1.0 / z; };
        cplx fd = -1.0 / (s * s) + (g_of(s + h) - g_of(s - h)) / (2.0 * h);
        CHECK(std::abs(dval - fd) < 1e-8 * std::abs(dval));
    }
}

TEST_CASE("M_eval: symmetry, determinism, pole behaviour") {
    const auto& m = mt();
    std::mt19937_64 rng(6021);
    for (int i = 0; i < 5; ++i) {
        cplx a((double)(rng() % 400) / 2000.0 - 0.1, (double)(rng() % 200) / 4000.0);
        cplx b((double)(rng() % 400) / 2000.0 - 0.1, (double)(rng() % 200) / 4000.0);
        if (std::abs(a + b) < 0.02) continue;
        cplx mab = m.M_eval(a, b, 1000.0);
        cplx mba = m.M_eval(b, a, 1000.0);
        CHECK(std::abs(mab - mba) < 1e-10 * std::abs(mab));
    }
    cplx v1 = m.M_eval(cplx(0.05, 0), cplx(0.05, 0), 1000.0);
    cplx v2 = m.M_eval(cplx(0.05, 0), cplx(0.05, 0), 1000.0);
    CHECK(std::abs(v1 - v2) <= 1e-12 * std::abs(v1));  // same-route determinism
    CHECK_THROWS_AS(m.M_eval(cplx(0.05, 0), cplx(-0.05, 0), 1000.0), pole_error);
    CHECK_THROWS_AS(m.M_eval(cplx(0.4, 0), cplx(0.1, 0), 1000.0), domain_error);

    // pole order: (alpha+beta) M -> X * zeta-residue prediction as beta -> -alpha
    cplx alpha(0.06, 0.0);
    double X = 1000.0;
    auto limit_probe = [&](double eps) {
        cplx beta = -alpha + eps;
        return ((alpha + beta) * m.M_eval(alpha, beta, X)).real();
    };
    const auto& tb = m.table();
    double pred =
        X / (2.0 * M_PI * M_PI) *
        (eulerprod::L1_sym2(tb, 2.0 * alpha, 1e4).value *
         eulerprod::L1_sym2(tb, -2.0 * alpha, 1e4).value *
         eulerprod::L1_sym2(tb, cplx(0, 0), 1e4).value *
         eulerprod::Z1_value(tb, alpha, -alpha, 10000).value *
         specfun::gamma_complex(alpha + 9.0) * specfun::gamma_complex(-alpha + 9.0))
            .real() *
        specfun::phi_tilde_1();
    double p4 = limit_probe(1e-4);
    CHECK(std::abs(p4 - pred) < 5e-3 * std::abs(pred));
    CHECK(std::abs(limit_probe(1e-5) - pred) < 6e-4 * std::abs(pred));
}

TEST_CASE("T Taylor data: a0 closed form, radius robustness, finite-difference oracle") {
    const auto& m = mt();
    auto a = m.taylor_T_row0(6);
    const auto& cb = m.bundle();
    double L = cb.L1sym2.value;
    double gamma9 = 40320.0;
    double a0_closed = 1.0 / (2.0 * M_PI * M_PI) * L * L * L * cb.Z1_00.value * gamma9 *
                       gamma9 * cb.phi_tilde_1;
    CHECK(std::abs(a[0] - a0_closed) < 2e-7 * std::abs(a0_closed));

    auto a_small = m.taylor_T_row0(4, 0.05);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(a[k] - a_small[k]) < 1e-9 * std::max(1.0, std::abs(a[k])));
    CHECK_THROWS_AS(m.taylor_T_row0(4, 0.35), config_error);

    // a1 against a central difference of T(s,0)
    const auto& tb = m.table();
    auto T_of = [&](double s) {
        cplx sz(s, 0.0);
        return (eulerprod::L1_sym2(tb, 2.0 * sz, 1e4).value *
                specfun::gamma_complex(sz + 9.0) *
                eulerprod::L1_sym2(tb, cplx(0, 0), 1e4).value * 40320.0 *
                std::exp(-sz * std::log(2.0 * M_PI)) * eulerprod::L1_sym2(tb, sz, 1e4).value *
                specfun::mellin_phi(1.0 + sz) *
                eulerprod::Z1_value(tb, sz, cplx(0, 0), 10000).value)
                   .real() /
               (2.0 * M_PI * M_PI);
    };
    double h = 1e-3;
    double fd = (T_of(h) - T_of(-h)) / (2.0 * h);
    CHECK(std::abs(a[1] - fd) < 1e-4 * std::max(1.0, std::abs(a[1])));
}

TEST_CASE("extract_C: hand-derived residue algebra cross-check") {
    const auto& m = mt();
    auto C = m.extract_C();
    auto a = m.taylor_T_row0(8);
    auto b = m.taylor_T_row1(8);
    auto g = specfun::stieltjes(2);
    double C3 = a[0] / 3.0;
    double C2 = g[0] * a[0] + 0.5 * (a[1] + b[0]);
    double C1 = g[0] * a[1] - 2.0 * g[1] * a[0] + b[1] + g[0] * b[0];
    double C0 = -a[3] - a[1] - g[1] * a[1] + g[2] * a[0] + b[2] + b[0] + g[0] * b[1] -
                g[1] * b[0];
    CHECK(C.C3 == doctest::Approx(C3).epsilon(1e-12));
    CHECK(C.C2 == doctest::Approx(C2).epsilon(1e-10));
    CHECK(C.C1 == doctest::Approx(C1).epsilon(1e-10));
    CHECK(C.C0 == doctest::Approx(C0).epsilon(1e-10));
}

TEST_CASE("C_i dual route: Laurent series vs numerical Cauchy residue") {
    const auto& m = mt();
    auto C = m.extract_C();
    for (double X : {100.0, 10000.0}) {
        double lx = std::log(X);
        double poly = X * (C.C0 + lx * (C.C1 + lx * (C.C2 + lx * C.C3)));
        double numeric = m.residue_numeric(X, 32, 16);
        INFO("X ", X, " poly ", poly, " numeric ", numeric);
        CHECK(std::abs(numeric - poly) <= 1e-8 * std::abs(poly));
    }
}

TEST_CASE("theorem coefficients: conversion identity, closed form, positivity") {
    const auto& m = mt();
    auto C = m.extract_C();
    auto tc = m.theorem_coefficients();
    double gamma9 = 40320.0;
    CHECK(tc.c3 * gamma9 * gamma9 / 4.0 == doctest::Approx(C.C3).epsilon(1e-14));
    CHECK(tc.c3 > 0.0);
    CHECK(std::abs(tc.c3 - tc.c3_closed_form) <= 1e-6 * std::abs(tc.c3_closed_form));
}

TEST_CASE("shifted main combination: reality, antisymmetry, pole guard, small-shift limit") {
    const auto& m = mt();
    double X = 1000.0;
    double v = m.shifted_main_combination(0.03, 0.017, X);
    CHECK(std::isfinite(v));
    CHECK(m.shifted_main_combination(0.03, -0.017, X) == doctest::Approx(-v).epsilon(1e-12));
    CHECK_THROWS_AS(m.shifted_main_combination(0.02, 0.02, X), pole_error);
    CHECK_THROWS_AS(m.shifted_main_combination(0.0, 0.01, X), domain_error);
    CHECK_THROWS_AS(m.shifted_main_combination(0.06, 0.01, X), domain_error);

    // limit of combination/(4 alpha beta): prediction from the residue data:
    //   X [2 d2 a0 + 2 d1 a1 + d0 b1 + b2 - a3],
    // with e^{lw} zeta(1+w) = 1/w + d0 + d1 w + d2 w^2 + ..., l = log X.
    auto a = m.taylor_T_row0(8);
    auto b = m.taylor_T_row1(8);
    auto g = specfun::stieltjes(2);
    double l = std::log(X);
    double c1 = -g[1], c2 = g[2] / 2.0;
    double d0 = l + g[0];
    double d1 = l * l / 2.0 + g[0] * l + c1;
    double d2 = l * l * l / 6.0 + g[0] * l * l / 2.0 + c1 * l + c2;
    double pred = X * (2.0 * d2 * a[0] + 2.0 * d1 * a[1] + d0 * b[1] + b[2] - a[3]);
    double alpha = 1e-3, beta = 2e-3;
    double got = m.shifted_main_combination(alpha, beta, X) / (4.0 * alpha * beta);
    CHECK(std::abs(got - pred) < 1e-3 * std::abs(pred));
}
