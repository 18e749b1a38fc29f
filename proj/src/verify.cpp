#include "twistmoment/verify.hpp"
#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/eulerprod.hpp"
#include "twistmoment/gausspoisson.hpp"
#include "twistmoment/lvalue.hpp"
#include "twistmoment/mainterm.hpp"
#include "twistmoment/quadrature.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace twistmoment::verify {

namespace {

using cplx = std::complex<double>;

struct Reporter {
    std::ostream& out;
    bool ok = true;

    void line(const std::string& name, double residual, double tol) {
        char buf[160];
        bool pass = residual <= tol;
        std::snprintf(buf, sizeof buf, "  %-52s %.12e  tol %.1e  %s\n", name.c_str(), residual,
                      tol, pass ? "ok" : "FAIL");
        out << buf;
        ok = ok && pass;
    }
    void value(const std::string& name, double v) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-52s %.12e\n", name.c_str(), v);
        out << buf;
    }
};

bool suite_arith(const VerifyContext&, std::ostream& out) {
    Reporter r{out};
    r.line("kronecker(40,3) == 1", std::abs(arith::kronecker(40, 3) - 1), 0);
    r.line("kronecker(8,3) == -1", std::abs(arith::kronecker(8, 3) + 1), 0);
    r.line("kronecker(-1,0) == 1", std::abs(arith::kronecker(-1, 0) - 1), 0);
    std::mt19937_64 rng(90210);
    int bad = 0, done = 0;
    while (done < 1000) {
        std::int64_t m = 2 * (std::int64_t)(rng() % 3000) + 1;
        std::int64_t n = 2 * (std::int64_t)(rng() % 3000) + 1;
        if (std::gcd(m, n) != 1 || m == 1 || n == 1) continue;
        int lhs = arith::kronecker(m, n) * arith::kronecker(n, m);
        int rhs = ((m - 1) / 2 % 2 == 1 && (n - 1) / 2 % 2 == 1) ? -1 : 1;
        if (lhs != rhs) ++bad;
        ++done;
    }
    r.line("quadratic reciprocity violations / 1000", bad, 0);
    auto sf = arith::squarefree_odd_in(0, 10);
    r.line("squarefree_odd_in(0,10) == {1,3,5,7}",
           sf == std::vector<std::int64_t>{1, 3, 5, 7} ? 0 : 1, 0);
    return r.ok;
}

bool suite_eigenform(const VerifyContext&, std::ostream& out) {
    Reporter r{out};
    auto t = eigenform::build_table(18, 5000);
    r.line("a(2) == -528", std::abs(t.a(2).to_double() + 528.0), 0);
    r.line("a(4) == 147712", std::abs(t.a(4).to_double() - 147712.0), 0);
    r.line("a(6) == a(2) a(3)", t.a(6) == t.a(2) * t.a(3) ? 0 : 1, 0);
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 5000; ++n)
        worst = std::max(worst, std::abs(t.lambda(n)) - (double)arith::tau(n));
    r.line("Deligne slack max over n <= 5000", std::max(worst, 0.0), 1e-12);
    long long viol = 0;
    for (std::int64_t n = 2; n <= 5000; ++n) {
        auto fac = arith::factorize(n);
        if (fac.size() < 2) continue;
        std::int64_t pe = 1;
        for (int i = 0; i < fac[0].second; ++i) pe *= fac[0].first;
        if (!(t.a(n) == t.a(pe) * t.a(n / pe))) ++viol;
    }
    r.line("Hecke multiplicativity violations", (double)viol, 0);
    return r.ok;
}

bool suite_specfun(const VerifyContext&, std::ostream& out) {
    Reporter r{out};
    double worst = 0.0;
    for (double alpha : {0.0, 0.05, -0.05, 0.2})
        for (double xi : {0.1, 1.0, 5.0, 20.0}) {
            cplx direct = specfun::omega_c(cplx(alpha, 0.0), 18, xi);
            cplx oracle = specfun::omega_contour_oracle(cplx(alpha, 0.0), 18, xi);
            worst = std::max(worst, std::abs(direct - oracle) / std::abs(oracle));
        }
    r.line("omega == Gamma(a, 2 pi xi) vs contour (max rel)", worst, 1e-9);

    std::mt19937_64 rng(1123);
    worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double a = 0.5 + 11.0 * (rng() % 10000) / 10000.0;
        double x = 0.1 + 30.0 * (rng() % 10000) / 10000.0;
        double lhs = specfun::upper_gamma(a + 1.0, x);
        double rhs = a * specfun::upper_gamma(a, x) + std::pow(x, a) * std::exp(-x);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    r.line("Gamma(a+1,x) recurrence (max rel)", worst, 1e-10);

    worst = 0.0;
    for (int j = 0; j < 16; ++j) {
        cplx s = cplx(1.0, 0.0) + std::polar(0.3, 2.0 * M_PI * j / 16.0);
        worst = std::max(worst,
                         std::abs(specfun::zeta_em(s) - specfun::zeta_eta(s)) /
                             std::abs(specfun::zeta_em(s)));
    }
    r.line("zeta Euler-Maclaurin vs eta route (max rel)", worst, 1e-9);

    auto g = specfun::stieltjes(1);
    r.line("gamma0 vs reference", std::abs(g[0] - 0.5772156649015329), 1e-9);
    r.line("gamma1 vs reference", std::abs(g[1] + 0.0728158454836767), 1e-8);

    cplx s0(1.3, 0.4);
    double h = 1e-5;
    cplx fd = (specfun::mellin_phi(s0 + h) - specfun::mellin_phi(s0 - h)) / (2.0 * h);
    cplx qd = quad::gl_integrate_c(
        [s0](double x) {
            return specfun::phi(x) * std::exp((s0 - 1.0) * std::log(x)) * std::log(x);
        },
        1.0, 2.0, 400);
    r.line("Mellin derivative relation", std::abs(fd - qd), 1e-6);
    r.value("Phi~(1)", specfun::phi_tilde_1());
    return r.ok;
}

bool suite_poisson(const VerifyContext&, std::ostream& out) {
    Reporter r{out};
    for (std::int64_t n : {1, 3, 5, 9, 15, 21}) {
        for (double Z : {10.0, 100.0, 1000.0}) {
            char name[64];
            std::snprintf(name, sizeof name, "poisson residual n=%lld Z=%g", (long long)n, Z);
            r.line(name, gausspoisson::verify_poisson("phi", n, Z), 1e-8);
        }
    }
    long long bad = 0;
    for (std::int64_t n = 1; n <= 10000; n += 2) {
        cplx g = gausspoisson::gauss_sum(0, n);
        std::int64_t rt = (std::int64_t)std::llround(std::sqrt((double)n));
        bool square = rt * rt == n;
        double want = square ? (double)arith::totient(n) : 0.0;
        if (std::abs(g.real() - want) > 1e-9 * std::max(1.0, want) || std::abs(g.imag()) > 1e-9)
            ++bad;
    }
    r.line("G_0 characterization violations, odd n <= 10^4", (double)bad, 0);
    return r.ok;
}

bool suite_lvalue(const VerifyContext& ctx, std::ostream& out) {
    Reporter r{out};
    const auto& t = *ctx.table;
    for (std::int64_t d : {1ll, 3ll, 5ll}) {
        auto series = lvalue::derivative_central(t, d);
        auto contour = lvalue::derivative_contour(t, d);
        char name[64];
        std::snprintf(name, sizeof name, "dual-route L'(1/2) rel diff, d=%lld", (long long)d);
        r.line(name, std::abs(series.value - contour.value) /
                         std::max(1.0, std::abs(series.value)),
               1e-8);
    }
    auto plus = lvalue::completed_lambda(t, 5, 0.2);
    auto minus = lvalue::completed_lambda(t, 5, -0.2);
    r.line("Lambda odd in alpha (bit-exact)", plus.value == -minus.value ? 0 : 1, 0);
    r.line("Lambda(1/2) == 0", std::abs(lvalue::completed_lambda(t, 5, 0.0).value), 0);
    return r.ok;
}

bool suite_eulerprod(const VerifyContext& ctx, std::ostream& out) {
    Reporter r{out};
    const auto& t = *ctx.table;
    auto a = eulerprod::L1_sym2(t, cplx(0, 0), 1e3);
    auto b = eulerprod::L1_sym2(t, cplx(0, 0), ctx.smoothing_T);
    r.value("L(1,sym2) smoothed", b.value.real());
    r.line("L(1,sym2) smoothing-scale drift within annotations",
           std::abs(a.value - b.value) - (a.error + b.error), 0.0);
    auto e = eulerprod::L1_sym2_euler_crosscheck(t, 0.0, std::min<std::int64_t>(t.limit, 100000));
    r.value("L(1,sym2) partial euler product", e.value);
    r.line("smoothed vs euler cross-check within 5x annotations",
           std::abs(b.value.real() - e.value) - 5.0 * (b.error + e.error), 0.0);
    auto z1 = eulerprod::Z1_value(t, cplx(0, 0), cplx(0, 0), ctx.primes_P);
    r.value("Z_1(0,0)", z1.value.real());
    auto z1b = eulerprod::Z1_value(t, cplx(0, 0), cplx(0, 0),
                                   std::min<std::int64_t>(t.limit, 10 * ctx.primes_P));
    r.line("Z_1(0,0) cutoff drift within annotations",
           std::abs(z1.value - z1b.value) - (z1.error + z1b.error), 0.0);
    auto diag = eulerprod::verify_diagonal_identity(t, 1.0, 1.0, 20000);
    r.line("diagonal identity residual (1,1), cutoff 2e4", diag.residual, 1e-4);
    return r.ok;
}

bool suite_mainterm(const VerifyContext& ctx, std::ostream& out) {
    Reporter r{out};
    // Laurent ring spot checks
    auto zl = mainterm::zeta_laurent();
    auto one = zl * zl.inverse();
    r.line("laurent (1/zeta)*zeta == 1", std::abs(one.coeff(0) - 1.0), 1e-12);
    auto g = specfun::stieltjes(1);
    std::vector<cplx> num = {cplx(g[0], 0.0), cplx(g[1], 0.0)};
    auto series = mainterm::TruncatedLaurent(1, num).shifted(-2);  // (g0 s + g1 s^2)/s^2
    r.line("residue((g0 s + g1 s^2)/s^2) == g0", std::abs(series.residue() - g[0]), 0);
    auto e = mainterm::exp_s2_series();
    r.line("residue(e^{s^2}/s^3) == 1", std::abs(e.shifted(-3).residue() - 1.0), 0);

    mainterm::MainTerm mt(*ctx.table, ctx.primes_P, ctx.smoothing_T);
    auto tc = mt.theorem_coefficients();
    r.value("c3 (residue route)", tc.c3);
    r.value("c2", tc.c2);
    r.value("c1", tc.c1);
    r.line("c3 residue route vs closed form (rel)",
           std::abs(tc.c3 - tc.c3_closed_form) / std::abs(tc.c3_closed_form), 1e-6);
    auto C = mt.extract_C();
    for (double X : {100.0, 10000.0}) {
        double lx = std::log(X);
        double poly = X * (C.C0 + lx * (C.C1 + lx * (C.C2 + lx * C.C3)));
        double numeric = mt.residue_numeric(X, 32, 16);
        char name[64];
        std::snprintf(name, sizeof name, "C_i dual route at X=%g (rel)", X);
        r.line(name, std::abs(numeric - poly) / std::abs(poly), 1e-8);
    }
    return r.ok;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"arith", "eigenform", "specfun", "poisson", "lvalue", "eulerprod", "mainterm"};
}

bool run_suite(const VerifyContext& ctx, const std::string& name, std::ostream& out) {
    using SuiteFn = bool (*)(const VerifyContext&, std::ostream&);
    struct Entry {
        const char* name;
        SuiteFn fn;
        bool needs_table;
    };
    static const Entry entries[] = {
        {"arith", suite_arith, false},       {"eigenform", suite_eigenform, false},
        {"specfun", suite_specfun, false},   {"poisson", suite_poisson, false},
        {"lvalue", suite_lvalue, true},      {"eulerprod", suite_eulerprod, true},
        {"mainterm", suite_mainterm, true},
    };
    bool all_ok = true;
    bool matched = false;
    for (const auto& e : entries) {
        if (name != "all" && name != e.name) continue;
        matched = true;
        if (e.needs_table && (!ctx.table || ctx.table->limit < 250000))
            throw resource_error(std::string("verify: suite '") + e.name +
                                     "' needs an eigenvalue table with limit >= 250000",
                                 250000);
        out << "[suite " << e.name << "]\n";
        bool ok = e.fn(ctx, out);
        out << "[suite " << e.name << "] " << (ok ? "PASS" : "FAIL") << "\n";
        all_ok = all_ok && ok;
    }
    if (!matched) throw domain_error("verify: unknown suite " + name);
    return all_ok;
}

}  // namespace twistmoment::verify
