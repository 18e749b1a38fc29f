#include "twistmoment/eulerprod.hpp"
#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/quadrature.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>
#include <cstdio>

namespace twistmoment::eulerprod {

namespace {

void need_limit(const EigenformTable& table, std::int64_t n, const char* who) {
    if (table.limit < n)
        throw resource_error(std::string(who) + ": eigenvalue table too small, need limit >= " +
                                 std::to_string(n),
                             n);
}

// local sym2 Dirichlet coefficients: b_0 = 1, b_k = e1 (b_{k-1} - b_{k-2}) + b_{k-3},
// e1 = lambda(p)^2 - 1 (elementary symmetric functions of a^2, 1, b^2).
void local_sym2_coeffs(double lambda_p, int count, double* out) {
    double e1 = lambda_p * lambda_p - 1.0;
    for (int k = 0; k < count; ++k) {
        double b1 = k >= 1 ? out[k - 1] : 0.0;
        double b2 = k >= 2 ? out[k - 2] : 0.0;
        double b3 = k >= 3 ? out[k - 3] : 0.0;
        out[k] = k == 0 ? 1.0 : e1 * (b1 - b2) + b3;
    }
}

}  // namespace

SatakePair satake(const EigenformTable& table, std::int64_t p) {
    need_limit(table, p, "satake");
    double lp = table.lambda(p);
    SatakePair s;
    s.p = p;
    cplx disc = std::sqrt(cplx(lp * lp - 4.0, 0.0));
    s.alpha = (cplx(lp, 0.0) + disc) / 2.0;
    s.beta = (cplx(lp, 0.0) - disc) / 2.0;
    return s;
}

cplx sym2_local_factor(const EigenformTable& table, std::int64_t p, cplx s) {
    need_limit(table, p, "sym2_local_factor");
    double lp = table.lambda(p);
    cplx u = std::exp(-(1.0 + s) * std::log((double)p));
    // (1-a^2 u)(1-b^2 u) = 1 - (lambda^2 - 2) u + u^2
    cplx quad_part = 1.0 - (lp * lp - 2.0) * u + u * u;
    return 1.0 / ((1.0 - u) * quad_part);
}

std::vector<double> sym2_coefficients(const EigenformTable& table, std::int64_t M) {
    need_limit(table, M, "sym2_coefficients");
    std::vector<double> b(M + 1, 0.0);
    b[1] = 1.0;
    if (M < 2) return b;
    std::vector<int32_t> spf(M + 1, 0);
    for (std::int64_t i = 2; i <= M; ++i)
        if (spf[i] == 0)
            for (std::int64_t j = i; j <= M; j += i)
                if (spf[j] == 0) spf[j] = (int32_t)i;
    // prime powers
    double local[64];
    for (std::int64_t p = 2; p <= M; ++p) {
        if (spf[p] != (int32_t)p) continue;
        int count = 1;
        std::int64_t pe = p;
        while (pe <= M / p) { pe *= p; ++count; }
        local_sym2_coeffs(table.lambda(p), count + 1, local);
        pe = p;
        for (int e = 1; e <= count; ++e) {
            b[pe] = local[e];
            if (pe > M / p) break;
            pe *= p;
        }
    }
    // composites by multiplicativity
    for (std::int64_t n = 2; n <= M; ++n) {
        std::int64_t p = spf[n];
        std::int64_t q = n, pe = 1;
        while (q % p == 0) { q /= p; pe *= p; }
        if (q != 1) b[n] = b[pe] * b[q];
    }
    return b;
}

Annotated<cplx> L1_sym2(const EigenformTable& table, cplx s, double smoothing_T) {
    Annotated<cplx> out;
    if (s.real() >= 0.4) {
        // Euler product; log-tail annotation sum_{p>P} 3 p^{-1-Re(s)}
        std::int64_t P = table.limit;
        cplx logsum = 0.0;
        for (std::int64_t p : arith::primes_upto(P)) {
            if (p > P) break;
            logsum += std::log(sym2_local_factor(table, p, s));
        }
        out.value = std::exp(logsum);
        double sigma = s.real();
        out.error = std::abs(out.value) * 3.0 * std::pow((double)P, -sigma) /
                    (sigma * std::log((double)P));
        char buf[128];
        std::snprintf(buf, sizeof buf, "euler product, p <= %lld", (long long)P);
        out.provenance = buf;
        return out;
    }
    std::int64_t M = (std::int64_t)std::ceil(25.0 * smoothing_T);
    need_limit(table, M, "L1_sym2");
    static thread_local std::vector<double> b_cache;
    static thread_local const EigenformTable* b_cache_key = nullptr;
    static thread_local std::int64_t b_cache_M = 0;
    if (b_cache_key != &table || b_cache_M < M) {
        b_cache = sym2_coefficients(table, M);
        b_cache_key = &table;
        b_cache_M = M;
    }
    quad::KahanSum re, im;
    for (std::int64_t m = 1; m <= M; ++m) {
        if (b_cache[m] == 0.0) continue;
        double lm = std::log((double)m);
        cplx term = b_cache[m] * std::exp(-(1.0 + s) * lm - (double)m / smoothing_T);
        re.add(term.real());
        im.add(term.imag());
    }
    out.value = cplx(re.value(), im.value());
    out.error = std::pow(smoothing_T, -0.5);  // contour-shift remainder scale
    char buf[128];
    std::snprintf(buf, sizeof buf, "smoothed Dirichlet series, T = %.3g", smoothing_T);
    out.provenance = buf;
    return out;
}

Annotated<double> L1_sym2_euler_crosscheck(const EigenformTable& table, double s,
                                           std::int64_t P) {
    need_limit(table, P, "L1_sym2_euler_crosscheck");
    auto partial = [&](std::int64_t bound) {
        double logsum = 0.0;
        for (std::int64_t p : arith::primes_upto(P)) {
            if (p > bound) break;
            logsum += std::log(sym2_local_factor(table, p, cplx(s, 0.0)).real());
        }
        return std::exp(logsum);
    };
    Annotated<double> out;
    double half = partial(P / 2);
    out.value = partial(P);
    // octave drift plus a floor: at the edge the product converges only like
    // exp(-c sqrt(log P)) unconditionally
    out.error = 3.0 * std::abs(out.value - half) + 0.01 * std::abs(out.value);
    char buf[128];
    std::snprintf(buf, sizeof buf, "partial euler product, p <= %lld", (long long)P);
    out.provenance = buf;
    return out;
}

cplx Z1_local(const EigenformTable& table, std::int64_t p, cplx z1, cplx z2, int cutoff_e) {
    need_limit(table, p, "Z1_local");
    if (cutoff_e < 30) throw domain_error("Z1_local: cutoff_e must be >= 30");
    cplx w1 = 2.0 * z1, w2 = 2.0 * z2, w3 = z1 + z2;

    auto zeta_denom = [&](cplx w) {
        return 1.0 - std::exp(-(1.0 + w) * std::log((double)p));
    };
    auto sym2_denom = [&](cplx w) { return 1.0 / sym2_local_factor(table, p, w); };

    if (p == 2)
        return zeta_denom(w3) * sym2_denom(w1) * sym2_denom(w2) * sym2_denom(w3);

    // local diagonal sum over e1 + e2 even
    double lp = table.lambda(p);
    cplx x1 = std::exp(-(0.5 + z1) * std::log((double)p));
    cplx x2 = std::exp(-(0.5 + z2) * std::log((double)p));
    double r = std::max(std::abs(x1), std::abs(x2));
    if (r >= 1.0) throw domain_error("Z1_local: Re(z) too negative, local sum diverges");

    // lambda(p^e) bound: min(e+1, 1/|sin theta_p|)
    double lam_cap;
    if (std::abs(lp) < 2.0 - 1e-9) {
        double sin_theta = std::sqrt(1.0 - lp * lp / 4.0);
        lam_cap = 1.0 / sin_theta;
    } else {
        lam_cap = HUGE_VAL;
    }

    // choose the level cutoff E so the certified tail is below 1e-14
    int E = cutoff_e;
    bool certified = false;
    for (; E <= 600; E += 2) {
        double cap = std::min(lam_cap, (double)E + 3.0);
        double rp = std::pow(r, E + 2);
        double tail = cap * cap * rp * ((E + 3.0) / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
        if (lam_cap == HUGE_VAL)
            tail = rp * std::pow(E + 3.0, 3.0) / std::pow(1.0 - r, 3.0);
        if (tail < 1e-14) { certified = true; break; }
    }
    if (!certified)
        throw accuracy_error("Z1_local: cannot certify 1e-14 tail at p = " + std::to_string(p));

    std::vector<double> lam(E + 1);
    lam[0] = 1.0;
    if (E >= 1) lam[1] = lp;
    for (int e = 2; e <= E; ++e) lam[e] = lp * lam[e - 1] - lam[e - 2];

    std::vector<cplx> pow1(E + 1), pow2(E + 1);
    pow1[0] = pow2[0] = 1.0;
    for (int e = 1; e <= E; ++e) {
        pow1[e] = pow1[e - 1] * x1;
        pow2[e] = pow2[e - 1] * x2;
    }

    double weight = (double)p / (double)(p + 1);
    cplx sum = 1.0;  // e1 = e2 = 0 carries weight 1
    for (int k = 2; k <= E; k += 2)
        for (int e1 = 0; e1 <= k; ++e1)
            sum += weight * lam[e1] * lam[k - e1] * pow1[e1] * pow2[k - e1];

    return sum * zeta_denom(w3) * sym2_denom(w1) * sym2_denom(w2) * sym2_denom(w3);
}

Annotated<cplx> Z1_value(const EigenformTable& table, cplx z1, cplx z2, std::int64_t P) {
    if (P < 1000) throw domain_error("Z1_value: need P >= 1000");
    need_limit(table, P, "Z1_value");
    cplx logsum = 0.0;
    double fitC = 0.0;
    for (std::int64_t p : arith::primes_upto(P)) {
        if (p > P) break;
        cplx zp = Z1_local(table, p, z1, z2);
        logsum += std::log(zp);
        if (p >= P / 2) fitC = std::max(fitC, std::abs(zp - 1.0) * (double)p * (double)p);
    }
    Annotated<cplx> out;
    out.value = std::exp(logsum);
    // sum_{p > P} C/p^2 ~ C / (P ln P)
    out.error = std::abs(out.value) * fitC / ((double)P * std::log((double)P));
    char buf[128];
    std::snprintf(buf, sizeof buf, "euler product of local factors, p <= %lld", (long long)P);
    out.provenance = buf;
    return out;
}

DiagonalCheck verify_diagonal_identity(const EigenformTable& table, double z1, double z2,
                                       std::int64_t cutoff) {
    need_limit(table, cutoff, "verify_diagonal_identity");
    const std::int64_t window = 16 * cutoff;  // certified-majorant region

    // sieves up to the window: smallest prime factor, tau, square-free mask
    std::vector<int32_t> spf(window + 1, 0);
    for (std::int64_t i = 2; i <= window; ++i)
        if (spf[i] == 0)
            for (std::int64_t j = i; j <= window; j += i)
                if (spf[j] == 0) spf[j] = (int32_t)i;
    std::vector<int32_t> tau(window + 1, 1);
    for (std::int64_t n = 2; n <= window; ++n) {
        std::int64_t p = spf[n], q = n;
        int e = 0;
        while (q % p == 0) { q /= p; ++e; }
        tau[n] = tau[q] * (e + 1);
    }
    std::vector<bool> sf(window + 1, true);
    for (std::int64_t p = 2; (std::int64_t)p * p <= window; ++p) {
        if (spf[p] != (int32_t)p) continue;
        for (std::int64_t j = p * p; j <= window; j += p * p) sf[j] = false;
    }

    // radical weight prod_{p | g u v} p/(p+1); g square-free, u, v arbitrary
    auto radical_weight = [&](std::int64_t g, std::int64_t u, std::int64_t v) {
        double w = 1.0;
        std::int64_t gg = g;
        while (gg > 1) {
            std::int64_t p = spf[gg];
            w *= (double)p / (double)(p + 1);
            while (gg % p == 0) gg /= p;
        }
        for (int pass = 0; pass < 2; ++pass) {
            std::int64_t mm = pass == 0 ? u : v;
            while (mm > 1) {
                std::int64_t p = spf[mm];
                if (g % p != 0 && (pass == 0 || u % p != 0))
                    w *= (double)p / (double)(p + 1);
                while (mm % p == 0) mm /= p;
            }
        }
        return w;
    };

    // brute side: n1 = g u^2, n2 = g v^2 with g odd square-free, u, v odd
    quad::KahanSum brute;
    for (std::int64_t g = 1; g <= cutoff; g += 2) {
        if (!sf[g]) continue;
        for (std::int64_t u = 1; g * u * u <= cutoff; u += 2) {
            std::int64_t n1 = g * u * u;
            for (std::int64_t v = 1; g * v * v <= cutoff; v += 2) {
                std::int64_t n2 = g * v * v;
                brute.add(table.lambda(n1) * table.lambda(n2) *
                          std::pow((double)n1, -0.5 - z1) * std::pow((double)n2, -0.5 - z2) *
                          radical_weight(g, u, v));
            }
        }
    }

    // certified window majorant for the truncated brute tail: |lambda| <= tau
    quad::KahanSum tail;
    for (std::int64_t g = 1; g <= window; g += 2) {
        if (!sf[g]) continue;
        for (std::int64_t u = 1; g * u * u <= window; u += 2) {
            std::int64_t n1 = g * u * u;
            for (std::int64_t v = 1; g * v * v <= window; v += 2) {
                std::int64_t n2 = g * v * v;
                if (n1 <= cutoff && n2 <= cutoff) continue;  // inside the brute box
                tail.add((double)tau[n1] * (double)tau[n2] *
                         std::pow((double)n1, -0.5 - z1) * std::pow((double)n2, -0.5 - z2));
            }
        }
    }

    DiagonalCheck out;
    out.brute = brute.value();
    out.brute_tail_estimate = tail.value();

    cplx zeta = specfun::zeta_em(cplx(1.0 + z1 + z2, 0.0));
    cplx l1 = L1_sym2(table, cplx(2.0 * z1, 0.0)).value;
    cplx l2 = L1_sym2(table, cplx(2.0 * z2, 0.0)).value;
    cplx l3 = L1_sym2(table, cplx(z1 + z2, 0.0)).value;
    std::int64_t P = std::min<std::int64_t>(table.limit, 100000);
    cplx zz = Z1_value(table, cplx(z1, 0.0), cplx(z2, 0.0), P).value;
    out.factored = (zeta * l1 * l2 * l3 * zz).real();
    out.residual = std::abs(out.brute - out.factored);
    return out;
}

ConstantsBundle constants_bundle(const EigenformTable& table, std::int64_t primes_P,
                                 double smoothing_T) {
    ConstantsBundle cb;
    cb.kappa = table.weight;
    auto l = L1_sym2(table, cplx(0.0, 0.0), smoothing_T);
    cb.L1sym2.value = l.value.real();
    cb.L1sym2.error = l.error;
    cb.L1sym2.provenance = l.provenance;
    auto z = Z1_value(table, cplx(0.0, 0.0), cplx(0.0, 0.0), primes_P);
    cb.Z1_00.value = z.value.real();
    cb.Z1_00.error = z.error;
    cb.Z1_00.provenance = z.provenance;
    auto g = specfun::stieltjes(1);
    cb.gamma0 = g[0];
    cb.gamma1 = g[1];
    cb.phi_tilde_1 = specfun::phi_tilde_1();
    return cb;
}

}  // namespace twistmoment::eulerprod
