#include "twistmoment/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace twistmoment::quad {

namespace {

// Newton iteration on Legendre polynomials; standard construction.
GaussLegendre build_rule(int n) {
    GaussLegendre r;
    r.x.resize(n);
    r.w.resize(n);
    const double eps = 1e-15;
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < eps) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

std::map<int, GaussLegendre> g_rules;
std::mutex g_rules_mutex;

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, build_rule(n)).first;
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const auto& r = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanSum s;
    for (int i = 0; i < n; ++i) s.add(r.w[i] * f(mid + half * r.x[i]));
    return s.value() * half;
}

std::complex<double> gl_integrate_c(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, int n) {
    const auto& r = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanSum re, im;
    for (int i = 0; i < n; ++i) {
        std::complex<double> v = f(mid + half * r.x[i]);
        re.add(r.w[i] * v.real());
        im.add(r.w[i] * v.imag());
    }
    return {re.value() * half, im.value() * half};
}

namespace {

double adapt_rec(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int n, int depth, double whole_scale) {
    double coarse = gl_integrate(f, a, b, n);
    double fine = gl_integrate(f, a, b, 2 * n);
    double err = std::abs(fine - coarse);
    double tol = std::max(abs_tol, rel_tol * std::max(whole_scale, std::abs(fine)));
    if (err <= tol || depth <= 0) return fine;
    double mid = 0.5 * (a + b);
    return adapt_rec(f, a, mid, abs_tol * 0.5, rel_tol, n, depth - 1, whole_scale) +
           adapt_rec(f, mid, b, abs_tol * 0.5, rel_tol, n, depth - 1, whole_scale);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int n, int max_depth) {
    double rough = std::abs(gl_integrate(f, a, b, n));
    return adapt_rec(f, a, b, abs_tol, rel_tol, n, max_depth, rough);
}

}  // namespace twistmoment::quad
