// quadrature.hpp -- Gauss-Legendre rules, adaptive panel integration,
// compensated summation.

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace twistmoment::quad {

// Nodes/weights on [-1,1]; cached per order, immutable once built.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussLegendre& gauss_legendre(int n);

// integral of f over [a,b] with one n-point rule
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);
std::complex<double> gl_integrate_c(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, int n);

// Adaptive bisection on [a,b]: per-panel GL(n) vs GL(2n) disagreement drives
// refinement until |I_2n - I_n| <= max(abs_tol, rel_tol*|I|) per panel.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol = 0.0, int n = 20,
                          int max_depth = 28);

// Neumaier compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace twistmoment::quad
