// eigenform.hpp
//
// Exact Fourier coefficients of the level-1 Hecke eigenforms of weight 18
// (Delta*E6) and weight 26 (Delta*E6*E8 = Delta*E14), with normalized
// eigenvalues lambda(n) = a(n) / n^((kappa-1)/2).
//
// Construction route:
//   eta^3  = sum_k (-1)^k (2k+1) q^(k(k+1)/2)      (sparse, O(sqrt N) terms)
//   Delta  = q * (eta^3)^8                          (8 in-place sparse passes)
//   a(p)   = [q^p] Delta * E_w  at primes only      (one convolution per prime)
//   a(p^e) via the Hecke recursion, a(mn)=a(m)a(n) for (m,n)=1 via an SPF sieve.
//
// All integer work is exact in fixed 256-bit two's complement; see
// wideint.hpp for the width certification and the resulting table caps
// (weight 18: N <= 2*10^6, weight 26: N <= 3*10^5).

#pragma once

#include "twistmoment/wideint.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace twistmoment::eigenform {

using std::int64_t;

struct EigenformTable {
    int weight = 0;
    int64_t limit = 0;
    std::vector<Int256> coeffs;   // coeffs[n-1] = a(n), exact
    std::vector<double> lambdas;  // lambdas[n-1] = a(n) n^{-(kappa-1)/2}

    const Int256& a(int64_t n) const;
    double lambda(int64_t n) const;
};

// Default memory budget for the exact table (bytes).
inline constexpr int64_t kDefaultMemoryBudget = int64_t(2) << 30;

// weight in {18, 26}; throws domain_error("weight not available") otherwise,
// resource_error if the table would exceed the memory budget or width caps.
EigenformTable build_table(int weight, int64_t limit,
                           int64_t memory_budget = kDefaultMemoryBudget);

// lambda(p^e) through the normalized recursion
//   lambda(p^{e+1}) = lambda(p) lambda(p^e) - lambda(p^{e-1});
// valid for e up to ~60 even when p^e exceeds the table limit.
double lambda_prime_power(const EigenformTable& table, int64_t p, int e);

// Binary coefficient cache (little-endian, length-prefixed records).
void write_cache(const EigenformTable& table, const std::string& path);
EigenformTable read_cache(const std::string& path);

// Cached build: loads `dir/coeffs_w{weight}_N{limit}.bin` when present,
// otherwise builds and writes it.  `dir` empty disables caching.
EigenformTable build_or_load(int weight, int64_t limit, const std::string& dir);

}  // namespace twistmoment::eigenform
