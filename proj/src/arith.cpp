#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace twistmoment::arith {

int jacobi(int64_t a, int64_t n) {
    // n odd positive; standard binary Jacobi algorithm.
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;  // (a/-1) = sign(a)
    }
    // split off the even part of n: (a/2) factor per power of two
    int pow2 = 0;
    while (n % 2 == 0) { n /= 2; ++pow2; }
    if (pow2 > 0) {
        if (a % 2 == 0) return 0;
        int64_t r = ((a % 8) + 8) % 8;
        int two = (r == 1 || r == 7) ? 1 : -1;
        if (pow2 % 2 == 1) sign *= two;  // even powers of (a/2) square to 1
    }
    return sign * jacobi(a, n);
}

namespace {

std::vector<int64_t> sieve_primes(int64_t bound) {
    std::vector<int64_t> out;
    if (bound < 2) return out;
    std::vector<bool> comp(bound + 1, false);
    for (int64_t i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (int64_t j = i * i; j <= bound; j += i) comp[j] = true;
        }
    }
    return out;
}

std::vector<int64_t> g_prime_cache;
std::once_flag g_prime_once;

}  // namespace

const std::vector<int64_t>& primes_upto(int64_t bound) {
    std::call_once(g_prime_once, [] { g_prime_cache = sieve_primes(1000000); });
    if (bound <= 1000000) return g_prime_cache;
    // rare path: caller wants more; grow a thread-local copy
    thread_local std::vector<int64_t> big;
    thread_local int64_t big_bound = 0;
    if (bound > big_bound) {
        big = sieve_primes(bound);
        big_bound = bound;
    }
    return big;
}

std::vector<int64_t> squarefree_odd_in(double lo, double hi) {
    if (!(lo >= 0.0) || !(lo < hi))
        throw domain_error("squarefree_odd_in: need 0 <= lo < hi");
    int64_t first = (int64_t)std::floor(lo) + 1;
    int64_t last = (int64_t)std::ceil(hi) - 1;
    if ((double)last >= hi) --last;
    while ((double)first <= lo) ++first;
    if (first < 1) first = 1;
    if (last < first) return {};

    if (first % 2 == 0) ++first;
    if (last % 2 == 0) --last;
    if (last < first) return {};

    int64_t count = (last - first) / 2 + 1;
    std::vector<bool> keep(count, true);
    int64_t root = (int64_t)std::sqrt((double)last) + 1;
    const auto& primes = primes_upto(root);
    for (int64_t p : primes) {
        if (p == 2) continue;
        if (p > root) break;
        int64_t p2 = p * p;
        // first odd multiple of p^2 that is >= first
        int64_t m = ((first + p2 - 1) / p2) * p2;
        if (m % 2 == 0) m += p2;  // p^2 odd, so parity alternates by p2 steps
        for (; m <= last; m += 2 * p2) keep[(m - first) / 2] = false;
    }
    std::vector<int64_t> out;
    for (int64_t i = 0; i < count; ++i)
        if (keep[i]) out.push_back(first + 2 * i);
    return out;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    if (n < 1) throw domain_error("factorize: n must be >= 1");
    std::vector<std::pair<int64_t, int>> out;
    const auto& primes = primes_upto(1000000);
    for (int64_t p : primes) {
        if (p * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        // leftover is prime or a product of two primes > 10^6; trial-divide the rest
        if (n <= (int64_t)1000000 * 1000000) {
            // n has no factor <= 10^6, so it is prime or p*q with p,q > 10^6;
            // the second case only occurs above 10^12, outside the 64-bit desk domain
            out.emplace_back(n, 1);
        } else {
            throw domain_error("factorize: n out of supported range");
        }
    }
    return out;
}

bool is_squarefree(int64_t n) {
    if (n < 1) return false;
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

int64_t totient(int64_t n) {
    if (n < 1) throw domain_error("totient: n must be >= 1");
    int64_t r = n;
    for (auto [p, e] : factorize(n)) { (void)e; r -= r / p; }
    return r;
}

int64_t tau(int64_t n) {
    if (n < 1) throw domain_error("tau: n must be >= 1");
    int64_t r = 1;
    for (auto [p, e] : factorize(n)) { (void)p; r *= (e + 1); }
    return r;
}

int mobius(int64_t n) {
    if (n < 1) throw domain_error("mobius: n must be >= 1");
    int k = 0;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        ++k;
    }
    return k % 2 == 0 ? 1 : -1;
}

TwistFamily twist_family(double X) {
    TwistFamily fam;
    fam.X = X;
    fam.members = squarefree_odd_in(X / 8.0, 2.0 * X / 8.0);
    return fam;
}

}  // namespace twistmoment::arith
