// mainterm.hpp
//
// Truncated Laurent arithmetic and the main-term machinery: the residue
// object
//
//   M(alpha,beta) = (X^{1+alpha+beta}/2 pi^2) (2 pi)^{-alpha-beta}
//                   zeta(1+alpha+beta) L(1+2alpha,sym2) L(1+2beta,sym2)
//                   L(1+alpha+beta,sym2) Z_1(alpha,beta)
//                   Gamma(alpha+kappa/2) Gamma(beta+kappa/2)
//                   Phi~(alpha+beta+1),
//
// its factorization M = X^{1+a+b} zeta(1+a+b) T(a,b), Taylor data for T by
// Cauchy contours, and the residue
//
//   Res_{s=0} M^{(0,1)}(s,0) e^{s^2} / s^2
//     = C3 X log^3 X + C2 X log^2 X + C1 X log X + C0 X,
//
// extracted exactly in powers of log X (every log X enters through the
// expansion of X^s, so the decomposition is algebraic, and the C_i are
// X-free by construction).  A numerical double-contour residue provides the
// independent second route.

#pragma once

#include "twistmoment/eigenform.hpp"
#include "twistmoment/eulerprod.hpp"

#include <complex>
#include <mutex>
#include <vector>

namespace twistmoment::mainterm {

using cplx = std::complex<double>;
using eigenform::EigenformTable;

// --- truncated Laurent series ------------------------------------------------

class TruncatedLaurent {
public:
    static constexpr int kDefaultLen = 8;

    TruncatedLaurent(int low, std::vector<cplx> coeffs);
    static TruncatedLaurent taylor(std::vector<cplx> coeffs);  // low = 0
    static TruncatedLaurent one(int len = kDefaultLen);
    static TruncatedLaurent zero(int len = kDefaultLen);

    int low() const { return low_; }
    int length() const { return (int)c_.size(); }
    // coefficient at an exponent: 0 below the window, order error above it
    cplx coeff(int exponent) const;

    TruncatedLaurent operator+(const TruncatedLaurent& o) const;
    TruncatedLaurent operator-(const TruncatedLaurent& o) const;
    TruncatedLaurent operator*(const TruncatedLaurent& o) const;
    TruncatedLaurent scaled(cplx c) const;
    TruncatedLaurent shifted(int k) const;  // multiply by s^k
    TruncatedLaurent inverse() const;       // needs nonzero leading coefficient

    cplx residue() const { return coeff(-1); }

private:
    int low_;
    std::vector<cplx> c_;
};

// zeta(1+s) and zeta'(1+s) as truncated Laurent series (Stieltjes data).
TruncatedLaurent zeta_laurent(int len = TruncatedLaurent::kDefaultLen);
TruncatedLaurent zeta_prime_laurent(int len = TruncatedLaurent::kDefaultLen);
TruncatedLaurent exp_s2_series(int len = TruncatedLaurent::kDefaultLen);

// --- main term ---------------------------------------------------------------

struct Coefficients {
    double C3 = 0, C2 = 0, C1 = 0, C0 = 0;
};

struct TheoremCoefficients {
    double c3 = 0, c2 = 0, c1 = 0, c0 = 0;
    double c3_closed_form = 0;  // 2 Phi~(1)/(3 pi^2) L(1,sym2)^3 Z_1(0,0)
};

class MainTerm {
public:
    // table must cover max(25*smoothing_T, primes_P) eigenvalues
    MainTerm(const EigenformTable& table, std::int64_t primes_P = 10000,
             double smoothing_T = 1e4);

    // pointwise product formula; pole_error at alpha + beta = 0
    cplx M_eval(cplx alpha, cplx beta, double X) const;

    // Taylor coefficients (orders 0..n-1) of T(s,0) and of d/ds2 T(s,0),
    // by Cauchy contours of the stated radius
    std::vector<double> taylor_T_row0(int n = 8, double radius = 0.1) const;
    std::vector<double> taylor_T_row1(int n = 8, double radius = 0.1,
                                      double beta_radius = 0.05) const;

    // Laurent-series route (exact log X decomposition; X never enters)
    Coefficients extract_C() const;

    // numerical dual route: the double-contour residue at a concrete X
    double residue_numeric(double X, int outer_nodes = 64, int inner_nodes = 32,
                           double rs = 0.1, double rb = 0.05) const;

    TheoremCoefficients theorem_coefficients() const;

    // M(a,b) - M(a,-b) - M(-a,b) + M(-a,-b); pole-configuration error at a = +-b
    double shifted_main_combination(double alpha, double beta, double X) const;

    const eulerprod::ConstantsBundle& bundle() const { return bundle_; }
    const EigenformTable& table() const { return table_; }

private:
    cplx A_of(cplx z) const;  // L(1+2z,sym2) Gamma(z+kappa/2)
    cplx B_of(cplx w) const;  // (2pi)^{-w} L(1+w,sym2) Phi~(1+w)

    const EigenformTable& table_;
    std::int64_t primes_P_;
    double smoothing_T_;
    eulerprod::ConstantsBundle bundle_;
    mutable std::mutex coeff_mutex_;
    mutable bool coeff_cached_ = false;
    mutable TheoremCoefficients coeff_cache_;
};

}  // namespace twistmoment::mainterm
