#include "twistmoment/mainterm.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/quadrature.hpp"
#include "twistmoment/specfun.hpp"

#include <cmath>

namespace twistmoment::mainterm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi2 = 9.869604401089358618834490999876;  // pi^2

struct order_error_msg {
    static constexpr const char* insufficient =
        "TruncatedLaurent: truncation order too small to read this coefficient";
};
}  // namespace

TruncatedLaurent::TruncatedLaurent(int low, std::vector<cplx> coeffs)
    : low_(low), c_(std::move(coeffs)) {
    if (c_.empty()) throw domain_error("TruncatedLaurent: empty coefficient list");
}

TruncatedLaurent TruncatedLaurent::taylor(std::vector<cplx> coeffs) {
    return TruncatedLaurent(0, std::move(coeffs));
}

TruncatedLaurent TruncatedLaurent::one(int len) {
    std::vector<cplx> c(len, 0.0);
    c[0] = 1.0;
    return TruncatedLaurent(0, std::move(c));
}

TruncatedLaurent TruncatedLaurent::zero(int len) {
    return TruncatedLaurent(0, std::vector<cplx>(len, 0.0));
}

cplx TruncatedLaurent::coeff(int exponent) const {
    if (exponent < low_) return 0.0;
    if (exponent >= low_ + (int)c_.size())
        throw accuracy_error(order_error_msg::insufficient);
    return c_[exponent - low_];
}

TruncatedLaurent TruncatedLaurent::operator+(const TruncatedLaurent& o) const {
    int low = std::min(low_, o.low_);
    int top = std::min(low_ + (int)c_.size(), o.low_ + (int)o.c_.size());
    if (top <= low) throw accuracy_error(order_error_msg::insufficient);
    std::vector<cplx> c(top - low, 0.0);
    for (int e = low; e < top; ++e) {
        cplx v = 0.0;
        if (e >= low_ && e < low_ + (int)c_.size()) v += c_[e - low_];
        if (e >= o.low_ && e < o.low_ + (int)o.c_.size()) v += o.c_[e - o.low_];
        c[e - low] = v;
    }
    return TruncatedLaurent(low, std::move(c));
}

TruncatedLaurent TruncatedLaurent::operator-(const TruncatedLaurent& o) const {
    return *this + o.scaled(-1.0);
}

TruncatedLaurent TruncatedLaurent::operator*(const TruncatedLaurent& o) const {
    int len = std::min((int)c_.size(), (int)o.c_.size());
    std::vector<cplx> c(len, 0.0);
    for (int i = 0; i < len; ++i)
        for (int j = 0; i + j < len; ++j) c[i + j] += c_[i] * o.c_[j];
    return TruncatedLaurent(low_ + o.low_, std::move(c));
}

TruncatedLaurent TruncatedLaurent::scaled(cplx s) const {
    std::vector<cplx> c(c_);
    for (auto& v : c) v *= s;
    return TruncatedLaurent(low_, std::move(c));
}

TruncatedLaurent TruncatedLaurent::shifted(int k) const {
    return TruncatedLaurent(low_ + k, c_);
}

TruncatedLaurent TruncatedLaurent::inverse() const {
    if (std::abs(c_[0]) == 0.0)
        throw domain_error("TruncatedLaurent::inverse: zero leading coefficient (singular)");
    int len = (int)c_.size();
    std::vector<cplx> d(len, 0.0);
    d[0] = 1.0 / c_[0];
    for (int k = 1; k < len; ++k) {
        cplx acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += c_[j] * d[k - j];
        d[k] = -acc / c_[0];
    }
    return TruncatedLaurent(-low_, std::move(d));
}

TruncatedLaurent zeta_laurent(int len) {
    auto g = specfun::stieltjes(len - 2);
    std::vector<cplx> c(len, 0.0);
    c[0] = 1.0;  // 1/s
    double fact = 1.0;
    for (int k = 0; k + 1 < len; ++k) {
        if (k) fact *= k;
        c[k + 1] = (k % 2 == 0 ? 1.0 : -1.0) * g[k] / fact;
    }
    return TruncatedLaurent(-1, std::move(c));
}

TruncatedLaurent zeta_prime_laurent(int len) {
    auto g = specfun::stieltjes(len - 1);
    std::vector<cplx> c(len, 0.0);
    c[0] = -1.0;  // -1/s^2
    c[1] = 0.0;
    double fact = 1.0;
    for (int k = 1; k + 1 < len; ++k) {
        fact *= k;
        c[k + 1] = (double)k * (k % 2 == 0 ? 1.0 : -1.0) * g[k] / fact;
    }
    return TruncatedLaurent(-2, std::move(c));
}

TruncatedLaurent exp_s2_series(int len) {
    std::vector<cplx> c(len, 0.0);
    double fact = 1.0;
    for (int j = 0; 2 * j < len; ++j) {
        if (j) fact *= j;
        c[2 * j] = 1.0 / fact;
    }
    return TruncatedLaurent(0, std::move(c));
}

// ---------------------------------------------------------------------------
// MainTerm
// ---------------------------------------------------------------------------

MainTerm::MainTerm(const EigenformTable& table, std::int64_t primes_P, double smoothing_T)
    : table_(table), primes_P_(primes_P), smoothing_T_(smoothing_T) {
    std::int64_t need = std::max<std::int64_t>((std::int64_t)std::ceil(25.0 * smoothing_T),
                                               primes_P);
    if (table.limit < need)
        throw resource_error("MainTerm: eigenvalue table too small, need limit >= " +
                                 std::to_string(need),
                             need);
    bundle_ = eulerprod::constants_bundle(table, primes_P, smoothing_T);
}

cplx MainTerm::A_of(cplx z) const {
    return eulerprod::L1_sym2(table_, 2.0 * z, smoothing_T_).value *
           specfun::gamma_complex(z + table_.weight / 2.0);
}

cplx MainTerm::B_of(cplx w) const {
    return std::exp(-w * std::log(kTwoPi)) * eulerprod::L1_sym2(table_, w, smoothing_T_).value *
           specfun::mellin_phi(1.0 + w);
}

cplx MainTerm::M_eval(cplx alpha, cplx beta, double X) const {
    if (std::abs(alpha) > 0.3 + 1e-12 || std::abs(beta) > 0.3 + 1e-12)
        throw domain_error("M_eval: shifts must satisfy |alpha|,|beta| <= 0.3");
    cplx w = alpha + beta;
    if (std::abs(w) < 1e-12) throw pole_error("M_eval: zeta pole at alpha + beta = 0");
    cplx xpow = std::exp((1.0 + w) * std::log(X));
    return xpow / (2.0 * kPi2) * std::exp(-w * std::log(kTwoPi)) * specfun::zeta_em(1.0 + w) *
           eulerprod::L1_sym2(table_, 2.0 * alpha, smoothing_T_).value *
           eulerprod::L1_sym2(table_, 2.0 * beta, smoothing_T_).value *
           eulerprod::L1_sym2(table_, w, smoothing_T_).value *
           eulerprod::Z1_value(table_, alpha, beta, primes_P_).value *
           specfun::gamma_complex(alpha + table_.weight / 2.0) *
           specfun::gamma_complex(beta + table_.weight / 2.0) * specfun::mellin_phi(1.0 + w);
}

namespace {

// Taylor coefficients of an analytic f around 0 from an n-node Cauchy circle.
std::vector<cplx> cauchy_taylor(const std::function<cplx(cplx)>& f, double radius, int orders,
                                int nodes) {
    std::vector<cplx> fv(nodes);
    for (int j = 0; j < nodes; ++j) {
        double th = kTwoPi * j / nodes;
        fv[j] = f(std::polar(radius, th));
    }
    std::vector<cplx> out(orders);
    for (int k = 0; k < orders; ++k) {
        quad::KahanSum re, im;
        for (int j = 0; j < nodes; ++j) {
            double th = kTwoPi * j / nodes;
            cplx v = fv[j] * std::polar(1.0, -k * th);
            re.add(v.real());
            im.add(v.imag());
        }
        out[k] = cplx(re.value(), im.value()) / ((double)nodes * std::pow(radius, k));
    }
    return out;
}

// product of Taylor coefficient vectors, truncated
std::vector<cplx> conv(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    int len = std::min(a.size(), b.size());
    std::vector<cplx> c(len, 0.0);
    for (int i = 0; i < len; ++i)
        for (int j = 0; i + j < len; ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<double> real_parts(const std::vector<cplx>& a) {
    std::vector<double> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].real();
    return r;
}

}  // namespace

std::vector<double> MainTerm::taylor_T_row0(int n, double radius) const {
    if (radius > 0.2)
        throw config_error("taylor_T_row0: contour radius collides with Z_1 singularities");
    auto As = cauchy_taylor([this](cplx z) { return A_of(z); }, radius, n, 64);
    auto Bs = cauchy_taylor([this](cplx w) { return B_of(w); }, radius, n, 64);
    auto Zs = cauchy_taylor(
        [this](cplx z) {
            return eulerprod::Z1_value(table_, z, cplx(0.0, 0.0), primes_P_).value;
        },
        radius, n, 64);
    cplx a0 = A_of(cplx(0.0, 0.0));
    auto t = conv(conv(As, Bs), Zs);
    for (auto& v : t) v *= a0 / (2.0 * kPi2);
    return real_parts(t);
}

std::vector<double> MainTerm::taylor_T_row1(int n, double radius, double beta_radius) const {
    if (radius > 0.2)
        throw config_error("taylor_T_row1: contour radius collides with Z_1 singularities");
    auto As = cauchy_taylor([this](cplx z) { return A_of(z); }, radius, n, 64);
    auto Bs = cauchy_taylor([this](cplx w) { return B_of(w); }, radius, n, 64);
    auto Zs = cauchy_taylor(
        [this](cplx z) {
            return eulerprod::Z1_value(table_, z, cplx(0.0, 0.0), primes_P_).value;
        },
        radius, n, 64);
    // dZ(s) = d/dbeta Z_1(s, beta) at beta = 0, one small Cauchy circle per node
    auto dZs = cauchy_taylor(
        [this, beta_radius](cplx z) {
            const int m = 32;
            quad::KahanSum re, im;
            for (int j = 0; j < m; ++j) {
                double th = kTwoPi * j / m;
                cplx b = std::polar(beta_radius, th);
                cplx v = eulerprod::Z1_value(table_, z, b, primes_P_).value *
                         std::polar(1.0, -th);
                re.add(v.real());
                im.add(v.imag());
            }
            return cplx(re.value(), im.value()) / ((double)m * beta_radius);
        },
        radius, n, 64);
    auto Bp = cauchy_taylor([this](cplx w) { return B_of(w); }, radius, n + 1, 64);

    cplx a0 = A_of(cplx(0.0, 0.0));
    cplx a1 = As.size() > 1 ? As[1] : cplx(0.0);
    // B'(s) series: term derivative of B(s) (k+1) B_{k+1}
    std::vector<cplx> Bprime(n, 0.0);
    for (int k = 0; k < n; ++k) Bprime[k] = (double)(k + 1) * Bp[k + 1];

    auto term1 = conv(conv(As, Bs), Zs);   // * A'(0)
    auto term2 = conv(conv(As, Bprime), Zs);  // * A(0)
    auto term3 = conv(conv(As, Bs), dZs);  // * A(0)
    std::vector<cplx> t(n, 0.0);
    for (int k = 0; k < n; ++k)
        t[k] = (a1 * term1[k] + a0 * term2[k] + a0 * term3[k]) / (2.0 * kPi2);
    return real_parts(t);
}

Coefficients MainTerm::extract_C() const {
    const int len = TruncatedLaurent::kDefaultLen;
    auto a = taylor_T_row0(len);
    auto b = taylor_T_row1(len);
    std::vector<cplx> ac(a.begin(), a.end()), bc(b.begin(), b.end());
    auto T0 = TruncatedLaurent::taylor(ac);
    auto T1 = TruncatedLaurent::taylor(bc);
    auto zl = zeta_laurent(len);
    auto zpl = zeta_prime_laurent(len);
    auto E = exp_s2_series(len);

    auto P1 = zl * T0 * E;               // low -1
    auto P2 = (zpl * T0 + zl * T1) * E;  // low -2

    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    Coefficients out;
    double C[4];
    for (int j = 0; j <= 3; ++j) {
        double v = P2.coeff(1 - j).real() / fact(j);
        if (j >= 1) v += P1.coeff(2 - j).real() / fact(j - 1);
        C[j] = v;
    }
    out.C0 = C[0];
    out.C1 = C[1];
    out.C2 = C[2];
    out.C3 = C[3];
    return out;
}

double MainTerm::residue_numeric(double X, int outer_nodes, int inner_nodes, double rs,
                                 double rb) const {
    if (!(rb < rs)) throw config_error("residue_numeric: need beta radius < s radius");
    // cache the L evaluations shared across the inner circles
    std::vector<cplx> L2s(outer_nodes), sv(outer_nodes);
    for (int j = 0; j < outer_nodes; ++j) {
        sv[j] = std::polar(rs, kTwoPi * j / outer_nodes);
        L2s[j] = eulerprod::L1_sym2(table_, 2.0 * sv[j], smoothing_T_).value;
    }
    std::vector<cplx> L2b(inner_nodes), bv(inner_nodes);
    for (int k = 0; k < inner_nodes; ++k) {
        bv[k] = std::polar(rb, kTwoPi * k / inner_nodes);
        L2b[k] = eulerprod::L1_sym2(table_, 2.0 * bv[k], smoothing_T_).value;
    }
    const double kappa_half = table_.weight / 2.0;
    quad::KahanSum racc_re;
    for (int j = 0; j < outer_nodes; ++j) {
        cplx s = sv[j];
        // M01(s) = (1/2pi i) oint M(s,beta)/beta^2 dbeta
        quad::KahanSum m_re, m_im;
        for (int k = 0; k < inner_nodes; ++k) {
            cplx beta = bv[k];
            cplx w = s + beta;
            cplx M = std::exp((1.0 + w) * std::log(X)) / (2.0 * kPi2) *
                     std::exp(-w * std::log(kTwoPi)) * specfun::zeta_em(1.0 + w) * L2s[j] *
                     L2b[k] * eulerprod::L1_sym2(table_, w, smoothing_T_).value *
                     eulerprod::Z1_value(table_, s, beta, primes_P_).value *
                     specfun::gamma_complex(s + kappa_half) *
                     specfun::gamma_complex(beta + kappa_half) * specfun::mellin_phi(1.0 + w);
            // (1/2pi i) oint f/beta^2 dbeta = (1/(N rb)) sum f_k e^{-i theta_k}
            cplx v = M / beta;
            m_re.add(v.real());
            m_im.add(v.imag());
        }
        cplx M01 = cplx(m_re.value(), m_im.value()) / (double)inner_nodes;
        // residue integrand: M01(s) e^{s^2} / s^2, contribution s/N * (...)
        cplx g = M01 * std::exp(s * s) / (s * s) * s;
        racc_re.add(g.real());
    }
    return racc_re.value() / (double)outer_nodes;
}

TheoremCoefficients MainTerm::theorem_coefficients() const {
    {
        std::lock_guard<std::mutex> lock(coeff_mutex_);
        if (coeff_cached_) return coeff_cache_;
    }
    auto C = extract_C();
    double gh = specfun::gamma_complex(cplx(table_.weight / 2.0, 0.0)).real();
    double conv_factor = 4.0 / (gh * gh);
    TheoremCoefficients out;
    out.c3 = conv_factor * C.C3;
    out.c2 = conv_factor * C.C2;
    out.c1 = conv_factor * C.C1;
    out.c0 = conv_factor * C.C0;
    double L = bundle_.L1sym2.value;
    out.c3_closed_form = 2.0 * bundle_.phi_tilde_1 / (3.0 * kPi2) * L * L * L *
                         bundle_.Z1_00.value;
    std::lock_guard<std::mutex> lock(coeff_mutex_);
    coeff_cached_ = true;
    coeff_cache_ = out;
    return out;
}

double MainTerm::shifted_main_combination(double alpha, double beta, double X) const {
    if (!(std::abs(alpha) > 0.0 && std::abs(beta) > 0.0 && std::abs(alpha) <= 0.05 &&
          std::abs(beta) <= 0.05))
        throw domain_error("shifted_main_combination: need 0 < |alpha|,|beta| <= 0.05");
    if (std::abs(std::abs(alpha) - std::abs(beta)) < 1e-12)
        throw pole_error("shifted_main_combination: pole configuration alpha = +-beta");
    cplx a(alpha, 0.0), b(beta, 0.0);
    cplx v = M_eval(a, b, X) - M_eval(a, -b, X) - M_eval(-a, b, X) + M_eval(-a, -b, X);
    return v.real();
}

}  // namespace twistmoment::mainterm
