#include "twistmoment/gausspoisson.hpp"
#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/quadrature.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace twistmoment::gausspoisson {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

cplx gauss_sum(std::int64_t k, std::int64_t n) {
    if (n < 1 || n % 2 == 0) throw domain_error("gauss_sum: n must be odd and positive");
    // unitary prefactor (1-i)/2 + (-1/n)(1+i)/2
    int eps = arith::kronecker(-1, n);
    cplx pref = cplx(0.5, -0.5) + (double)eps * cplx(0.5, 0.5);
    // exact reduction of the phase: e(ak/n) depends on ak mod n
    std::int64_t kr = k % n;
    if (kr < 0) kr += n;
    quad::KahanSum re, im;
    for (std::int64_t a = 0; a < n; ++a) {
        int chi = arith::jacobi(a, n);
        if (chi == 0) continue;
        double phase = kTwoPi * (double)((a * kr) % n) / (double)n;
        re.add(chi * std::cos(phase));
        im.add(chi * std::sin(phase));
    }
    return pref * cplx(re.value(), im.value());
}

const SmoothWindow& canonical_window() {
    static const SmoothWindow w{[](double x) { return specfun::phi(x); }, 1.0, 2.0, "phi"};
    return w;
}

namespace {
std::map<std::string, SmoothWindow>& window_registry() {
    static std::map<std::string, SmoothWindow> reg = {{"phi", canonical_window()}};
    return reg;
}
std::mutex g_registry_mutex;
}  // namespace

void register_window(const SmoothWindow& w) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    window_registry()[w.name] = w;
}

const SmoothWindow& registered_window(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto& reg = window_registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw domain_error("registered_window: unknown window " + name);
    return it->second;
}

double f_check(const SmoothWindow& F, double y) {
    // one panel per oscillation period, high-order rule per panel
    double span = F.hi - F.lo;
    int panels = std::max(4, (int)std::ceil(std::abs(y) * span) + 1);
    double width = span / panels;
    quad::KahanSum total;
    for (int p = 0; p < panels; ++p) {
        double a = F.lo + p * width, b = a + width;
        double piece = quad::gl_integrate(
            [&](double x) {
                double ph = kTwoPi * x * y;
                return (std::cos(ph) + std::sin(ph)) * F.f(x);
            },
            a, b, 24);
        total.add(piece);
    }
    return total.value();
}

double verify_poisson(const std::string& window, std::int64_t n, double Z, int kmax_start) {
    if (n < 1 || n % 2 == 0) throw domain_error("verify_poisson: n must be odd and positive");
    const SmoothWindow& F = registered_window(window);

    // LHS: finite sum over odd d with d/Z inside supp F
    quad::KahanSum lhs;
    std::int64_t d_lo = (std::int64_t)std::floor(F.lo * Z);
    std::int64_t d_hi = (std::int64_t)std::ceil(F.hi * Z);
    if (d_lo % 2 == 0) ++d_lo;
    for (std::int64_t d = std::max<std::int64_t>(1, d_lo); d <= d_hi; d += 2)
        lhs.add(arith::jacobi(d, n) * F.f(d / Z));

    // RHS: (Z/2n)(2/n) sum_k (-1)^k G_k(n) Fv(kZ/2n), grown by doubling.
    // G_k(n) is periodic in k with period n (only ak mod n enters), and real
    // for odd n, so precompute one period.
    double scale = Z / (2.0 * n) * arith::kronecker(2, n);
    std::vector<double> G(n);
    for (std::int64_t j = 0; j < n; ++j) G[j] = gauss_sum(j, n).real();
    auto Gk = [&](std::int64_t k) { return G[((k % n) + n) % n]; };

    quad::KahanSum acc;
    acc.add(Gk(0) * f_check(F, 0.0));
    int kmax = std::max(2, kmax_start);
    int kdone = 0;
    double prev_rhs = HUGE_VAL, rhs = 0.0;
    for (int iter = 0; iter < 14; ++iter) {
        for (int k = kdone + 1; k <= kmax; ++k) {
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            double y = k * Z / (2.0 * n);
            acc.add(sign * Gk(k) * f_check(F, y));
            acc.add(sign * Gk(-k) * f_check(F, -y));
        }
        kdone = kmax;
        rhs = scale * acc.value();
        if (std::abs(rhs - prev_rhs) < 1e-9) break;
        prev_rhs = rhs;
        kmax *= 2;
    }
    return std::abs(lhs.value() - rhs);
}

}  // namespace twistmoment::gausspoisson
