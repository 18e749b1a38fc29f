// eulerprod.hpp
//
// Symmetric-square L-values and the diagonal Euler-product correction
// Z_1(z1,z2) defined (implicitly) by
//
//   sum_{n1 n2 = square, odd} lambda(n1) lambda(n2) n1^{-1/2-z1} n2^{-1/2-z2}
//       prod_{p | n1 n2} p/(p+1)
//   = zeta(1+z1+z2) L(1+2z1,sym2) L(1+2z2,sym2) L(1+z1+z2,sym2) Z_1(z1,z2).
//
// The local factor of Z_1 is reconstructed by dividing a truncated local
// diagonal sum by the local zeta / sym2 factors; verify_diagonal_identity is
// the arbiter of that reading.

#pragma once

#include "twistmoment/eigenform.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace twistmoment::eulerprod {

using cplx = std::complex<double>;
using eigenform::EigenformTable;

struct SatakePair {
    std::int64_t p = 0;
    cplx alpha;
    cplx beta;
};

SatakePair satake(const EigenformTable& table, std::int64_t p);

// Local factor of L(1+s, sym^2 f) at p:
// [(1 - a_p^2 u)(1 - u)(1 - b_p^2 u)]^{-1}, u = p^{-1-s}.
cplx sym2_local_factor(const EigenformTable& table, std::int64_t p, cplx s);

// Multiplicative Dirichlet coefficients b(m) of L(s, sym^2 f), m <= M.
std::vector<double> sym2_coefficients(const EigenformTable& table, std::int64_t M);

template <typename T>
struct Annotated {
    T value{};
    double error = 0.0;        // annotation (upper estimate), not a hard bound
    std::string provenance;
};

// L(1+s, sym^2 f).  Re(s) < 0.4: exponentially smoothed Dirichlet series with
// contour-shift annotation O(T^{-1/2}).  Re(s) >= 0.4: Euler product over
// p <= table limit with a certified log-tail annotation.
Annotated<cplx> L1_sym2(const EigenformTable& table, cplx s, double smoothing_T = 1e4);

// Partial Euler product cross-check for L(1+s, sym^2 f), p <= P (same shift
// convention as L1_sym2); the annotation combines the observed octave drift
// with a floor for the slow unconditional convergence at the edge.
Annotated<double> L1_sym2_euler_crosscheck(const EigenformTable& table, double s,
                                           std::int64_t P);

// Local Z_1 factor; the series cutoff adapts upward from cutoff_e until the
// certified geometric tail (|lambda(p^e)| <= min(e+1, 1/|sin theta_p|)) drops
// below 1e-14 (accuracy_error if that needs more than 600 levels).
cplx Z1_local(const EigenformTable& table, std::int64_t p, cplx z1, cplx z2,
              int cutoff_e = 40);

// prod_{p <= P} Z_{1,p} with a fitted C/p^2 tail annotation; pre: P >= 10^3.
Annotated<cplx> Z1_value(const EigenformTable& table, cplx z1, cplx z2, std::int64_t P);

struct DiagonalCheck {
    double brute = 0.0;
    double factored = 0.0;
    double residual = 0.0;
    double brute_tail_estimate = 0.0;  // certified window majorant past the cutoff
};

// Brute-force double sum (n1 = g u^2, n2 = g v^2 enumeration) vs the factored
// right-hand side; Re(z) >= 1/2 for fast absolute convergence.
DiagonalCheck verify_diagonal_identity(const EigenformTable& table, double z1, double z2,
                                       std::int64_t cutoff);

struct ConstantsBundle {
    Annotated<double> L1sym2;    // L(1, sym^2 f)
    Annotated<double> Z1_00;     // Z_1(0,0)
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    double phi_tilde_1 = 0.0;
    int kappa = 0;
};

ConstantsBundle constants_bundle(const EigenformTable& table, std::int64_t primes_P = 10000,
                                 double smoothing_T = 1e4);

}  // namespace twistmoment::eulerprod
