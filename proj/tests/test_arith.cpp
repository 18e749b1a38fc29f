#include "doctest.h"

#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"
#include "twistmoment/wideint.hpp"

#include <numeric>
#include <random>

using namespace twistmoment;
using namespace twistmoment::arith;

namespace {

// Naive Kronecker built from Legendre symbols by factorization (test oracle).
int legendre_euler(int64_t a, int64_t p) {
    // Euler's criterion, p odd prime
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    int64_t e = (p - 1) / 2, base = a, r = 1;
    while (e) {
        if (e & 1) r = (i128)r * base % p;
        base = (i128)base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : (r == p - 1 ? -1 : 0);
}

int naive_kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) r = -1;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        int64_t m = ((a % 8) + 8) % 8;
        r *= (m == 1 || m == 7) ? 1 : -1;
    }
    for (auto [p, e] : factorize(n)) {
        for (int i = 0; i < e; ++i) r *= legendre_euler(a, p);
        if (r == 0) return 0;
    }
    return r;
}

}  // namespace

TEST_CASE("kronecker ground truth values") {
    CHECK(kronecker(40, 3) == 1);
    CHECK(kronecker(8, 3) == -1);   // Euler: 8^((3-1)/2) = 8 = -1 mod 3
    CHECK(kronecker(7, 1) == 1);
    CHECK(kronecker(-3, 1) == 1);
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(2, 0) == 0);
    CHECK(kronecker(5, -1) == 1);
    CHECK(kronecker(-5, -1) == -1);
    CHECK(kronecker(3, 2) == -1);  // 3 = 3 mod 8
    CHECK(kronecker(6, 2) == 0);
    CHECK(kronecker(7, 2) == 1);
    CHECK(kronecker(3, 8) == -1);
}

TEST_CASE("kronecker matches naive factored implementation on random inputs") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 10000; ++i) {
        int64_t a = (int64_t)(rng() % 20001) - 10000;
        int64_t n = (int64_t)(rng() % 20001) - 10000;
        if (n == 0) n = 1;
        CHECK(kronecker(a, n) == naive_kronecker(a, n));
    }
}

TEST_CASE("kronecker complete multiplicativity in both arguments") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 10000; ++i) {
        int64_t a = (int64_t)(rng() % 2000) - 1000;
        int64_t b = (int64_t)(rng() % 2000) - 1000;
        int64_t n = (int64_t)(rng() % 2000) + 1;
        CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
        int64_t m = (int64_t)(rng() % 1000) + 1;
        CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
    }
}

TEST_CASE("quadratic reciprocity on random odd coprime pairs") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 1000) {
        int64_t m = 2 * (int64_t)(rng() % 5000) + 1;
        int64_t n = 2 * (int64_t)(rng() % 5000) + 1;
        if (std::gcd(m, n) != 1 || m == 1 || n == 1) continue;
        int lhs = kronecker(m, n) * kronecker(n, m);
        int rhs = ((m - 1) / 2 % 2 == 1 && (n - 1) / 2 % 2 == 1) ? -1 : 1;
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("squarefree_odd_in examples") {
    CHECK(squarefree_odd_in(0, 10) == std::vector<int64_t>{1, 3, 5, 7});
    CHECK(squarefree_odd_in(24, 28).empty());  // 25 = 5^2, 27 = 3^3
    CHECK(squarefree_odd_in(5, 5.5).empty());
}

TEST_CASE("squarefree_odd_in count matches brute-force trial division up to 10^6") {
    auto got = squarefree_odd_in(0, 1000000);
    size_t brute = 0;
    for (int64_t n = 1; n < 1000000; n += 2)
        if (is_squarefree(n)) ++brute;
    CHECK(got.size() == brute);
    std::vector<int64_t> brute_list;
    for (int64_t n = 1; n < 1000000; n += 2)
        if (is_squarefree(n)) brute_list.push_back(n);
    CHECK(got == brute_list);
}

TEST_CASE("totient tau mobius") {
    CHECK(totient(9) == 6);
    CHECK(tau(12) == 6);
    CHECK(mobius(30) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(1) == 1);
    CHECK(totient(1) == 1);
    CHECK(tau(1) == 1);
    CHECK_THROWS_AS(totient(0), domain_error);
    CHECK_THROWS_AS(tau(0), domain_error);
    CHECK_THROWS_AS(mobius(0), domain_error);
}

TEST_CASE("chi_8d vanishes exactly on gcd(n, 8d) > 1") {
    std::mt19937_64 rng(555);
    for (int i = 0; i < 3000; ++i) {
        int64_t d = 2 * (int64_t)(rng() % 500) + 1;
        if (!is_squarefree(d)) continue;
        int64_t n = (int64_t)(rng() % 5000) + 1;
        bool zero = TwistFamily::chi(d, n) == 0;
        CHECK(zero == (std::gcd(n, 8 * d) > 1));
    }
}

TEST_CASE("twist family at X=100") {
    auto fam = twist_family(100.0);
    CHECK(fam.members == std::vector<int64_t>{13, 15, 17, 19, 21, 23});
}
