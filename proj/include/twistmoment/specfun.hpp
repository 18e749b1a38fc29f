// specfun.hpp
//
// Special functions for the moment laboratory:
//   * complex Gamma / log-Gamma / digamma (Stirling series, upward recursion,
//     reflection),
//   * upper incomplete gamma Gamma(a,x) for real and complex a (exact finite
//     form at integer a, Legendre continued fraction for x >= a+1, lower
//     series otherwise) and its parameter derivative d/da Gamma(a,x) by
//     quadrature,
//   * the AFE kernel omega_alpha(xi) = Gamma(alpha + kappa/2, 2 pi xi) with a
//     Mellin-Barnes contour oracle,
//   * zeta(1+s) by Euler-Maclaurin (M = 10^4, corrections through B8), an
//     alternating-series route for cross-checks, and Stieltjes constants,
//   * the canonical test function Phi(x) = exp(-1/((x-1)(2-x))) on (1,2) and
//     its entire Mellin transform,
//   * precomputed geometric-grid kernel tables with cubic interpolation for
//     the moment harness hot loop.

#pragma once

#include <complex>
#include <vector>

namespace twistmoment::specfun {

using cplx = std::complex<double>;

// --- gamma family ----------------------------------------------------------

cplx log_gamma(cplx z);          // principal on Re z > 0 after recursion
cplx gamma_complex(cplx z);      // poles at non-positive integers -> pole_error
cplx digamma(cplx z);

// --- incomplete gamma ------------------------------------------------------

// Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt;  a > 0, x >= 0.
double upper_gamma(double a, double x);
cplx upper_gamma_c(cplx a, double x);  // Re(a) > 0

// d/da Gamma(a, x), adaptive quadrature of t^{a-1} ln(t) e^{-t}.
double upper_gamma_da(double a, double x);

// --- AFE kernel ------------------------------------------------------------

// omega_alpha(xi) = Gamma(alpha + kappa/2, 2 pi xi); pre: Re(alpha)+kappa/2 > 0, xi > 0.
double omega(double alpha, int kappa, double xi);
cplx omega_c(cplx alpha, int kappa, double xi);

// d/dalpha omega_alpha(xi) at real alpha.
double omega_dalpha(double alpha, int kappa, double xi);

// Direct numerical contour integration of the defining Mellin-Barnes
// integral (verification oracle; the line is placed adaptively to keep the
// integrand on the scale of the answer).
cplx omega_contour_oracle(cplx alpha, int kappa, double xi);

// --- zeta ------------------------------------------------------------------

// Euler-Maclaurin zeta, tuned for |s - 1| <= ~5, s != 1.
cplx zeta_em(cplx s);

// Alternating-series (eta function) route, independent of zeta_em.
cplx zeta_eta(cplx s);

// Stieltjes constants gamma_0..gamma_order (standard normalization:
// zeta(1+s) = 1/s + sum_k (-1)^k gamma_k s^k / k!).
std::vector<double> stieltjes(int order);

struct ZetaNearOne {
    cplx value;
    std::vector<double> stieltjes;
};

// |s| <= 1/2, s != 0; value zeta(1+s) plus gamma_0..gamma_order.
ZetaNearOne zeta_near_one(cplx s, int order);

// --- canonical test function -----------------------------------------------

double phi(double x);                    // exp(-1/((x-1)(2-x))) on (1,2), else 0
cplx mellin_phi(cplx s);                 // int_1^2 Phi(x) x^{s-1} dx
double phi_tilde_1();                    // cached Phi~(1)

// --- kernel grids ------------------------------------------------------------

// Geometric grid in x over [1e-6, 110] with cubic interpolation of
// ln Gamma(a,.) and ln d/da Gamma(a,.); relative interpolation error is
// validated to stay below 1e-9 by the test suite.
class KernelGrid {
public:
    KernelGrid(int kappa, int points);

    double gamma_upper(double x) const;
    double gamma_upper_da(double x) const;

    int kappa() const { return kappa_; }
    int points() const { return n_; }

    // Shared immutable instance (8192 points) per weight.
    static const KernelGrid& shared(int kappa);

private:
    double interp(const std::vector<double>& tab, double x) const;

    int kappa_;
    double a_;
    int n_;
    double u0_, du_;
    std::vector<double> lg_;    // ln Gamma(a, x_i)
    std::vector<double> lgda_;  // ln dGamma/da (a, x_i)
};

}  // namespace twistmoment::specfun
