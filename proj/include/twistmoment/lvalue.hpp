// lvalue.hpp
//
// Central values and derivatives of the twisted completed L-functions via
// the approximate functional equation,
//
//   Lambda(1/2+alpha, f x chi_{8d}) = I_alpha - I_{-alpha},
//   I_alpha = (8d/2pi)^{1/2+alpha} sum_n lambda(n) chi_{8d}(n) n^{-1/2-alpha}
//             Gamma(alpha + kappa/2, 2 pi n / 8d),
//
// with the series cut at N0 = ceil((8d/2pi)(ln(1/eps) + 4 kappa)) and a
// rigorous tail certificate from tau(n) <= 2 sqrt(n) and
// x^{a-1} e^{-x} <= Gamma(a,x) <= 2 x^{a-1} e^{-x}  (x >= 2a).
//
// L'(1/2) comes from two independent numerical routes: differentiating the
// AFE term by term (series route) and the contour formula
// L'(1/2) = Gamma(kappa/2)^{-1} (8d/2pi)^{-1/2} (2/2pi i)
//           int_(c) Lambda(1/2+s) e^{s^2} ds/s^2.

#pragma once

#include "twistmoment/eigenform.hpp"

#include <complex>
#include <cstdint>
#include <string>

namespace twistmoment::lvalue {

using cplx = std::complex<double>;
using eigenform::EigenformTable;

inline constexpr double kDefaultEps = 1e-12;

// Certified series cutoff for modulus 8d at accuracy eps.
std::int64_t series_cutoff(std::int64_t d, int kappa, double eps = kDefaultEps);

template <typename T>
struct IAlphaResult {
    T value{};
    double tail_bound = 0.0;
    std::int64_t terms = 0;
};

// Smoothed AFE partial sum with certified tail; |Re(alpha)| < 1/2.
IAlphaResult<double> i_alpha(const EigenformTable& table, std::int64_t d, double alpha,
                             double eps = kDefaultEps);

// Same sum cut at an explicit n0 (tail-soundness experiments).
IAlphaResult<double> i_alpha_at(const EigenformTable& table, std::int64_t d, double alpha,
                                std::int64_t n0);
IAlphaResult<cplx> i_alpha_c(const EigenformTable& table, std::int64_t d, cplx alpha,
                             double eps = kDefaultEps);

struct CompletedValue {
    std::int64_t d = 0;
    double shift = 0.0;
    double value = 0.0;            // Lambda(1/2 + shift)
    double truncation_bound = 0.0;
    std::int64_t terms_used = 0;
};

// Lambda(1/2+alpha) = I_alpha - I_{-alpha}; exact 0 at alpha = 0.
CompletedValue completed_lambda(const EigenformTable& table, std::int64_t d, double alpha,
                                double eps = kDefaultEps);

struct DerivativeValue {
    std::int64_t d = 0;
    double value = 0.0;  // L'(1/2)
    std::string method;  // "series" | "contour"
    double truncation_bound = 0.0;
    std::int64_t terms_used = 0;
};

// Series route: L' = (2/Gamma(kappa/2)) sum lambda chi n^{-1/2}
//                    [ ln(8d/2pi n) Gamma(k/2, x) + dGamma/da(k/2, x) ].
// use_grid = true serves both kernels from the shared precomputed grid
// (the harness hot path); false evaluates them directly.
DerivativeValue derivative_central(const EigenformTable& table, std::int64_t d,
                                   double eps = kDefaultEps, bool use_grid = true);

// Contour route on Re(s) = c with trapezoid nodes; Lambda on the contour is
// assembled from complex-shift I_alpha sums whose Gamma(kappa/2 + s, x)
// kernels are served from per-node ratio tables.
DerivativeValue derivative_contour(const EigenformTable& table, std::int64_t d,
                                   double c = 0.25, double eps = kDefaultEps);

// Validates that d is admissible for the twist family (odd, square-free, > 0).
void require_family_member(std::int64_t d);

}  // namespace twistmoment::lvalue
