#include "twistmoment/specfun.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace twistmoment::specfun {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// B_2 .. B_20
constexpr double kBernoulli[10] = {
    1.0 / 6.0,        -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0,  7.0 / 6.0,       -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0};

bool near_nonpositive_integer(cplx z) {
    if (z.real() > 0.4) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-13 && std::abs(z.imag()) < 1e-13;
}

cplx log_gamma_stirling(cplx z) {
    // valid for Re(z) >= ~32
    cplx r = (z - 0.5) * std::log(z) - z + 0.91893853320467274178032973640562;  // ln(2pi)/2
    cplx zi = 1.0 / z, zi2 = zi * zi, t = zi;
    for (int n = 1; n <= 10; ++n) {
        r += kBernoulli[n - 1] / (2.0 * n * (2.0 * n - 1.0)) * t;
        t *= zi2;
    }
    return r;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (near_nonpositive_integer(z)) throw pole_error("log_gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // reflection in Gamma space: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
        cplx s = std::sin(M_PI * z);
        return std::log(M_PI) - std::log(s) - log_gamma(1.0 - z);
    }
    cplx shift = 0.0;
    while (z.real() < 32.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

cplx gamma_complex(cplx z) {
    if (near_nonpositive_integer(z)) throw pole_error("gamma_complex: pole at non-positive integer");
    if (z.imag() == 0.0 && z.real() > 0.0) {
        double x = z.real();
        if (x == std::floor(x) && x <= 171.0) {
            double r = 1.0;
            for (int k = 2; k < (int)x; ++k) r *= k;
            return r;
        }
        return std::exp(log_gamma(cplx(x, 0.0)).real());
    }
    return std::exp(log_gamma(z));
}

cplx digamma(cplx z) {
    if (near_nonpositive_integer(z)) throw pole_error("digamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // psi(1-z) - psi(z) = pi cot(pi z)
        return digamma(1.0 - z) - M_PI / std::tan(M_PI * z);
    }
    cplx acc = 0.0;
    while (z.real() < 32.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    cplx r = std::log(z) - 0.5 / z;
    cplx zi2 = 1.0 / (z * z), t = zi2;
    for (int n = 1; n <= 10; ++n) {
        r -= kBernoulli[n - 1] / (2.0 * n) * t;
        t *= zi2;
    }
    return acc + r;
}

// ---------------------------------------------------------------------------
// incomplete gamma
// ---------------------------------------------------------------------------

namespace {

// Gamma(n,x) = (n-1)! e^{-x} sum_{k<n} x^k/k!, exact finite form.
double upper_gamma_int(int n, double x) {
    double fact = 1.0;
    for (int k = 2; k < n; ++k) fact *= k;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < n; ++k) {
        term *= x / k;
        sum += term;
    }
    return fact * std::exp(-x) * sum;
}

// Legendre continued fraction, modified Lentz; valid x >= Re(a) + 1.
template <typename T>
T upper_gamma_cf(T a, double x) {
    const double tiny = 1e-300;
    T b = x + 1.0 - a;
    T c = 1.0 / tiny;
    T d = 1.0 / b;
    T h = d;
    for (int i = 1; i <= 400; ++i) {
        T an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        T del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

// Lower-series route: gamma(a,x) = x^a e^{-x} sum x^n / (a (a+1) ... (a+n)).
template <typename T>
T lower_gamma_series(T a, double x) {
    T ap = a;
    T sum = 1.0 / a;
    T del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return std::exp(-x + a * std::log(x)) * sum;
}

}  // namespace

double upper_gamma(double a, double x) {
    if (!(a > 0.0)) throw domain_error("upper_gamma: need a > 0");
    if (x < 0.0) throw domain_error("upper_gamma: need x >= 0");
    double ar = std::round(a);
    if (ar == a && a <= 40.0) {
        if (x == 0.0) return upper_gamma_int((int)a, 0.0);
        return upper_gamma_int((int)a, x);
    }
    if (x == 0.0) return gamma_complex(cplx(a, 0.0)).real();
    if (x >= a + 1.0) return upper_gamma_cf<double>(a, x);
    return gamma_complex(cplx(a, 0.0)).real() - lower_gamma_series<double>(a, x);
}

cplx upper_gamma_c(cplx a, double x) {
    if (!(a.real() > 0.0)) throw domain_error("upper_gamma_c: need Re(a) > 0");
    if (x < 0.0) throw domain_error("upper_gamma_c: need x >= 0");
    if (a.imag() == 0.0) return upper_gamma(a.real(), x);
    if (x == 0.0) return gamma_complex(a);
    if (x >= a.real() + 1.0) return upper_gamma_cf<cplx>(a, x);
    return gamma_complex(a) - lower_gamma_series<cplx>(a, x);
}

double upper_gamma_da(double a, double x) {
    if (!(a > 0.0)) throw domain_error("upper_gamma_da: need a > 0");
    if (x < 0.0) throw domain_error("upper_gamma_da: need x >= 0");

    double total = 0.0;

    if (x < 1.0) {
        // int_x^1 t^{a-1} ln t e^{-t} dt  via t = e^{-v}:
        //   = - int_0^{ln(1/x)} v e^{-a v} exp(-e^{-v}) dv
        // (smooth through v -> inf, so x = 0 is handled by a long window)
        double L = x == 0.0 ? 80.0 + 80.0 / a : std::log(1.0 / x);
        auto g = [a](double v) { return v * std::exp(-a * v) * std::exp(-std::exp(-v)); };
        double lo = 0.0;
        while (lo < L) {
            double hi = std::min(L, lo + 5.0);
            total -= quad::gl_integrate(g, lo, hi, 40);
            lo = hi;
        }
    }

    // int_{max(x,1)}^inf t^{a-1} ln t e^{-t} dt; panel until the analytic
    // tail bound Gamma(a+1,T) <= 2 T^a e^{-T} (valid T >= 2a) is negligible
    // relative to the accumulated value.
    double lo = std::max(x, 1.0);
    double first_mag = 0.0;
    auto f = [a](double t) { return std::pow(t, a - 1.0) * std::log(t) * std::exp(-t); };
    for (int panel = 0; panel < 400; ++panel) {
        double hi = lo + 4.0;
        double piece = quad::gl_integrate(f, lo, hi, 40);
        total += piece;
        if (panel == 0) first_mag = std::abs(piece);
        lo = hi;
        if (lo >= 2.0 * a + 6.0) {
            double tail = 2.0 * std::pow(lo, a) * std::exp(-lo);
            double scale = std::max({std::abs(total), first_mag, 1e-300});
            if (tail < 1e-14 * scale) break;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// omega kernel
// ---------------------------------------------------------------------------

double omega(double alpha, int kappa, double xi) {
    double a = alpha + kappa / 2.0;
    if (!(a > 0.0)) throw domain_error("omega: need alpha + kappa/2 > 0");
    if (!(xi > 0.0)) throw domain_error("omega: need xi > 0");
    return upper_gamma(a, kTwoPi * xi);
}

cplx omega_c(cplx alpha, int kappa, double xi) {
    cplx a = alpha + (double)kappa / 2.0;
    if (!(a.real() > 0.0)) throw domain_error("omega_c: need Re(alpha) + kappa/2 > 0");
    if (!(xi > 0.0)) throw domain_error("omega_c: need xi > 0");
    return upper_gamma_c(a, kTwoPi * xi);
}

double omega_dalpha(double alpha, int kappa, double xi) {
    double a = alpha + kappa / 2.0;
    if (!(a > 0.0)) throw domain_error("omega_dalpha: need alpha + kappa/2 > 0");
    if (!(xi > 0.0)) throw domain_error("omega_dalpha: need xi > 0");
    return upper_gamma_da(a, kTwoPi * xi);
}

cplx omega_contour_oracle(cplx alpha, int kappa, double xi) {
    // (1/2 pi i) int_(sigma) (2 pi)^{-s} Gamma(alpha + s + kappa/2) xi^{-s} ds/s.
    // The line is moved right toward the saddle so the integrand stays on the
    // scale of the answer even deep in the exponential tail.
    double x = kTwoPi * xi;
    double sigma = std::max(1.0, x - kappa / 2.0 - alpha.real() + 1.0);
    // Gamma(sigma + c + it) decays like exp(-t^2 / (2 sigma)) for t << sigma;
    // pick the window so the discarded tail is far below 1e-12 relative.
    double T = std::max(60.0, std::sqrt(64.0 * sigma) + 12.0);
    double h = 0.02;
    long long n = (long long)std::ceil(T / h);
    quad::KahanSum re, im;
    for (long long k = -n; k <= n; ++k) {
        double t = k * h;
        cplx s(sigma, t);
        cplx g = std::exp(-s * std::log(kTwoPi) + log_gamma(alpha + s + kappa / 2.0) -
                          s * std::log(xi));
        cplx v = g / s;
        re.add(v.real());
        im.add(v.imag());
    }
    // ds = i dt, prefactor 1/(2 pi i)  =>  (h / 2 pi) * sum
    return cplx(re.value(), im.value()) * (h / kTwoPi);
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

namespace {
constexpr int kZetaCutoff = 10000;

const std::vector<double>& log_table() {
    static const std::vector<double> tab = [] {
        std::vector<double> t(kZetaCutoff + 1, 0.0);
        for (int i = 1; i <= kZetaCutoff; ++i) t[i] = std::log((double)i);
        return t;
    }();
    return tab;
}
}  // namespace

cplx zeta_em(cplx s) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-14) throw pole_error("zeta_em: pole at s = 1");
    const int M = kZetaCutoff;
    const auto& lg = log_table();
    quad::KahanSum re, im;
    for (int n = 1; n < M; ++n) {
        cplx term = std::exp(-s * lg[n]);
        re.add(term.real());
        im.add(term.imag());
    }
    cplx sum(re.value(), im.value());
    double lM = lg[M];
    sum += std::exp((1.0 - s) * lM) / (s - 1.0);
    sum += 0.5 * std::exp(-s * lM);
    // Euler-Maclaurin corrections through B8
    cplx Ms = std::exp(-s * lM);  // M^{-s}
    cplx poch = s;                // s (s+1) ... growing below
    double Mp = (double)M;
    cplx fac = Ms / Mp;           // M^{-s-1}
    static const double fact[4] = {2.0, 24.0, 720.0, 40320.0};  // (2k)!
    static const double bern[4] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
    for (int k = 1; k <= 4; ++k) {
        sum += bern[k - 1] / fact[k - 1] * poch * fac;
        poch *= (s + (double)(2 * k - 1)) * (s + (double)(2 * k));
        fac /= Mp * Mp;
    }
    return sum;
}

cplx zeta_eta(cplx s) {
    // Borwein's algorithm for eta(s), then zeta = eta / (1 - 2^{1-s}).
    static constexpr int n = 48;
    static std::vector<double> d;
    static std::once_flag once;
    std::call_once(once, [] {
        d.resize(n + 1);
        double t = 1.0 / n;  // t_0
        double acc = t;
        std::vector<double> partial(n + 1);
        partial[0] = acc;
        for (int i = 1; i <= n; ++i) {
            t *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1.0));
            acc += t;
            partial[i] = acc;
        }
        for (int k = 0; k <= n; ++k) d[k] = n * partial[std::min(k, n)];
    });
    cplx sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * (d[k] - d[n]) * std::exp(-s * std::log((double)(k + 1)));
    }
    cplx denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    return -sum / (d[n] * denom);
}

std::vector<double> stieltjes(int order) {
    if (order < 0) throw domain_error("stieltjes: order must be >= 0");
    // Cauchy coefficients of the entire function zeta(1+s) - 1/s on |s| = 1/2.
    static std::mutex m;
    static std::vector<double> cache;
    std::lock_guard<std::mutex> lock(m);
    if ((int)cache.size() < order + 1) {
        const int N = 256;
        const double r = 0.5;
        int want = std::max(order + 1, 8);
        std::vector<cplx> fvals(N);
        for (int j = 0; j < N; ++j) {
            double th = kTwoPi * j / N;
            cplx s = std::polar(r, th);
            fvals[j] = zeta_em(1.0 + s) - 1.0 / s;
        }
        cache.assign(want, 0.0);
        for (int k = 0; k < want; ++k) {
            cplx acc = 0.0;
            for (int j = 0; j < N; ++j) {
                double th = kTwoPi * j / N;
                acc += fvals[j] * std::polar(1.0, -th * k);
            }
            // c_k = (-1)^k gamma_k / k!
            double ck = (acc / (double)N).real() / std::pow(r, k);
            double fact = 1.0;
            for (int i = 2; i <= k; ++i) fact *= i;
            cache[k] = (k % 2 == 0 ? 1.0 : -1.0) * ck * fact;
        }
    }
    return std::vector<double>(cache.begin(), cache.begin() + order + 1);
}

ZetaNearOne zeta_near_one(cplx s, int order) {
    if (std::abs(s) > 0.5 + 1e-12) throw domain_error("zeta_near_one: need |s| <= 1/2");
    if (std::abs(s) < 1e-15) throw pole_error("zeta_near_one: pole at s = 0");
    ZetaNearOne out;
    out.value = zeta_em(1.0 + s);
    out.stieltjes = stieltjes(order);
    return out;
}

// ---------------------------------------------------------------------------
// canonical test function
// ---------------------------------------------------------------------------

double phi(double x) {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    return std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
}

cplx mellin_phi(cplx s) {
    // Phi is flat to all orders at both endpoints; composite high-order
    // Gauss-Legendre panels resolve it to near machine precision.
    static const double edges[5] = {1.0, 1.25, 1.5, 1.75, 2.0};
    const auto& rule = quad::gauss_legendre(128);
    cplx total = 0.0;
    for (int p = 0; p < 4; ++p) {
        double a = edges[p], b = edges[p + 1];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        cplx acc = 0.0;
        for (int i = 0; i < 128; ++i) {
            double x = mid + half * rule.x[i];
            acc += rule.w[i] * phi(x) * std::exp((s - 1.0) * std::log(x));
        }
        total += acc * half;
    }
    return total;
}

double phi_tilde_1() {
    static const double v = mellin_phi(cplx(1.0, 0.0)).real();
    return v;
}

// ---------------------------------------------------------------------------
// kernel grids
// ---------------------------------------------------------------------------

KernelGrid::KernelGrid(int kappa, int points) : kappa_(kappa), a_(kappa / 2.0), n_(points) {
    if (kappa % 2 != 0 || kappa < 2) throw domain_error("KernelGrid: even kappa required");
    if (points < 16) throw domain_error("KernelGrid: too few points");
    const double x_lo = 1e-6, x_hi = 110.0;
    u0_ = std::log(x_lo);
    du_ = (std::log(x_hi) - u0_) / (n_ - 1);
    lg_.resize(n_);
    lgda_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        double x = std::exp(u0_ + i * du_);
        lg_[i] = std::log(upper_gamma(a_, x));
        lgda_[i] = std::log(upper_gamma_da(a_, x));
    }
}

double KernelGrid::interp(const std::vector<double>& tab, double x) const {
    double u = std::log(x);
    double pos = (u - u0_) / du_;
    int i = (int)std::floor(pos);
    if (i < 1) i = 1;
    if (i > n_ - 3) i = n_ - 3;
    double t = pos - i;
    // 4-point Lagrange cubic on uniform nodes i-1..i+2
    double ym1 = tab[i - 1], y0 = tab[i], y1 = tab[i + 1], y2 = tab[i + 2];
    return ym1 * (-t * (t - 1.0) * (t - 2.0) / 6.0) +
           y0 * ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) +
           y1 * (-(t + 1.0) * t * (t - 2.0) / 2.0) +
           y2 * ((t + 1.0) * t * (t - 1.0) / 6.0);
}

double KernelGrid::gamma_upper(double x) const {
    if (!(x > 0.0)) throw domain_error("KernelGrid::gamma_upper: x > 0 required");
    if (x <= 1e-6 || x >= 110.0) return upper_gamma(a_, x);
    return std::exp(interp(lg_, x));
}

double KernelGrid::gamma_upper_da(double x) const {
    if (!(x > 0.0)) throw domain_error("KernelGrid::gamma_upper_da: x > 0 required");
    if (x <= 1e-6 || x >= 110.0) return upper_gamma_da(a_, x);
    return std::exp(interp(lgda_, x));
}

const KernelGrid& KernelGrid::shared(int kappa) {
    static std::mutex m;
    static std::map<int, KernelGrid*> grids;
    std::lock_guard<std::mutex> lock(m);
    auto it = grids.find(kappa);
    if (it == grids.end()) it = grids.emplace(kappa, new KernelGrid(kappa, 8192)).first;
    return *it->second;
}

}  // namespace twistmoment::specfun
