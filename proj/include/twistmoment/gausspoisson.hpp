// gausspoisson.hpp
//
// Gauss-like sums G_k(n), the (cos+sin) Fourier-type transform, and a
// numerical verifier for the Poisson summation formula
//
//   sum_{(d,2)=1} (d/n) F(d/Z)
//     = (Z/2n)(2/n) sum_k (-1)^k G_k(n) Fv(kZ/2n),
//
//   G_k(n) = ((1-i)/2 + (-1/n)(1+i)/2) sum_{a mod n} (a/n) e(ak/n),
//   Fv(y)  = int (cos+sin)(2 pi x y) F(x) dx.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

namespace twistmoment::gausspoisson {

using cplx = std::complex<double>;

// Direct O(n) evaluation; n odd positive (domain_error otherwise).
cplx gauss_sum(std::int64_t k, std::int64_t n);

// A smooth compactly supported window together with its support.
struct SmoothWindow {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = 0.0;
    std::string name;
};

// The canonical Phi window on (1,2).
const SmoothWindow& canonical_window();

// Registry used by verify_poisson (unregistered names -> domain_error).
void register_window(const SmoothWindow& w);
const SmoothWindow& registered_window(const std::string& name);

// Fv(y) by oscillation-aware Gauss-Legendre panels.
double f_check(const SmoothWindow& F, double y);

// |LHS - RHS| with the RHS k-sum grown adaptively (doubling) until it moves
// by < 1e-9; window must be registered.
double verify_poisson(const std::string& window, std::int64_t n, double Z,
                      int kmax_start = 8);

}  // namespace twistmoment::gausspoisson
