// arith.hpp
//
// Exact integer arithmetic: Kronecker symbol with full conventions,
// square-free sieving, mu/tau/phi, prime generation, factorization.
// Everything here works in the 64-bit domain (inputs stay <= 10^9 at
// desk scale); trial division uses a cached prime list.

#pragma once

#include <cstdint>
#include <vector>
#include <utility>

namespace twistmoment::arith {

using std::int64_t;

// Kronecker symbol (a/n), full extension: n may be zero, negative or even.
// Conventions: (a/0) = [a = +-1]; (a/-1) = sign(a) (with (0/-1)=1);
// (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
int kronecker(int64_t a, int64_t n);

// Jacobi symbol (a/n) for odd positive n (helper; used by gauss sums).
int jacobi(int64_t a, int64_t n);

// Primes up to `bound`, cached and immutable after first construction.
// The shared cache covers primes <= 10^6; larger bounds sieve on the fly.
const std::vector<int64_t>& primes_upto(int64_t bound);

// All odd square-free d with lo < d < hi, ascending (exclusive bounds).
std::vector<int64_t> squarefree_odd_in(double lo, double hi);

bool is_squarefree(int64_t n);

// Standard arithmetic functions via trial-division factorization; n >= 1.
int64_t totient(int64_t n);
int64_t tau(int64_t n);
int mobius(int64_t n);

// Prime factorization of n >= 1 as (p, e) pairs, ascending p.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

// The theorem's twist family: odd square-free d with X < 8d < 2X, i.e.
// 8d/X inside the support (1,2) of the canonical test function.
struct TwistFamily {
    double X = 0.0;
    std::vector<int64_t> members;

    // chi_{8d}(n) = (8d/n).
    static int chi(int64_t d, int64_t n) { return kronecker(8 * d, n); }
};

TwistFamily twist_family(double X);

}  // namespace twistmoment::arith
