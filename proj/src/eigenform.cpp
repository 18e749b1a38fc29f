#include "twistmoment/eigenform.hpp"
#include "twistmoment/arith.hpp"
#include "twistmoment/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace twistmoment::eigenform {

namespace {

// Width caps certified in wideint.hpp.
constexpr int64_t kCapWeight18 = 2000000;
constexpr int64_t kCapWeight26 = 300000;

// eta^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}, truncated to exponents < len.
struct SparseTerm {
    int64_t offset;
    int64_t coeff;
};

std::vector<SparseTerm> eta3_terms(int64_t len) {
    std::vector<SparseTerm> t;
    for (int64_t k = 0;; ++k) {
        int64_t off = k * (k + 1) / 2;
        if (off >= len) break;
        t.push_back({off, (k % 2 == 0 ? 1 : -1) * (2 * k + 1)});
    }
    return t;
}

// In-place multiply of a dense series (indices 0..len-1) by eta^3.
// Two's-complement u128 arithmetic; exact mod 2^128, and every stage's true
// coefficients fit in a signed 128 at the supported table caps.
void mul_eta3_inplace(std::vector<u128>& arr, const std::vector<SparseTerm>& terms) {
    const int64_t len = (int64_t)arr.size();
    for (int64_t n = len - 1; n >= 0; --n) {
        u128 acc = arr[n];  // k = 0 term: offset 0, coeff +1
        for (size_t k = 1; k < terms.size(); ++k) {
            int64_t off = terms[k].offset;
            if (off > n) break;
            u128 prod = arr[n - off] * (u128)(uint64_t)std::llabs(terms[k].coeff);
            if (terms[k].coeff > 0) acc += prod; else acc -= prod;
        }
        arr[n] = acc;
    }
}

// Coefficients of Delta = q (eta^3)^8 for n = 1..N, as signed 128-bit values.
std::vector<i128> delta_coeffs(int64_t N) {
    std::vector<u128> arr(N, 0);
    arr[0] = 1;
    auto terms = eta3_terms(N);
    for (int pass = 0; pass < 8; ++pass) mul_eta3_inplace(arr, terms);
    std::vector<i128> tau(N + 1, 0);
    for (int64_t n = 1; n <= N; ++n) tau[n] = (i128)arr[n - 1];
    return tau;
}

// sigma_5 sieve (values fit u128 comfortably at the caps).
std::vector<u128> sigma5_upto(int64_t N) {
    std::vector<u128> s(N + 1, 0);
    for (int64_t d = 1; d <= N; ++d) {
        u128 d5 = (u128)d * d;
        d5 = d5 * d5 * (u128)d;
        for (int64_t m = d; m <= N; m += d) s[m] += d5;
    }
    return s;
}

// sigma_13 sieve in 256 bits (weight-26 Eisenstein factor E14 = E6 E8).
std::vector<Int256> sigma13_upto(int64_t N) {
    std::vector<Int256> s(N + 1, Int256(0));
    for (int64_t d = 1; d <= N; ++d) {
        u128 d6 = (u128)d * d * d;
        d6 = d6 * d6;                          // d^6 <= (3e5)^6 < 2^128
        Int256 d13 = mul_i128((i128)d6, (i128)d6);  // d^12
        d13 = d13 * Int256::from_i128((i128)d);
        for (int64_t m = d; m <= N; m += d) s[m] += d13;
    }
    return s;
}

// p^k as Int256 (caller guarantees it fits).
Int256 int256_pow(int64_t p, int k) {
    Int256 r(1), b = Int256::from_i128(p);
    for (int i = 0; i < k; ++i) r = r * b;
    return r;
}

}  // namespace

const Int256& EigenformTable::a(int64_t n) const {
    if (n < 1 || n > limit) throw domain_error("EigenformTable::a: index out of range");
    return coeffs[n - 1];
}

double EigenformTable::lambda(int64_t n) const {
    if (n < 1 || n > limit) throw domain_error("EigenformTable::lambda: index out of range");
    return lambdas[n - 1];
}

EigenformTable build_table(int weight, int64_t limit, int64_t memory_budget) {
    if (weight != 18 && weight != 26)
        throw domain_error("build_table: weight not available (supported: 18, 26)");
    if (limit < 1) throw domain_error("build_table: limit must be >= 1");

    const int64_t cap = weight == 18 ? kCapWeight18 : kCapWeight26;
    if (limit > cap)
        throw resource_error("build_table: limit exceeds the exact-width cap for this weight", cap);
    // exact table + lambdas + the two transient arrays of the build
    int64_t need = limit * (32 + 8 + 16 + (weight == 18 ? 16 : 32));
    if (need > memory_budget)
        throw resource_error("build_table: table exceeds memory budget", need);

    EigenformTable t;
    t.weight = weight;
    t.limit = limit;
    t.coeffs.assign(limit, Int256(0));

    auto tau = delta_coeffs(limit);

    // a(p) = [q^p] Delta * E_w, E_w = 1 + c_w sum sigma_{w-1}(j) q^j.
    const auto& primes = arith::primes_upto(limit);
    if (weight == 18) {
        auto s5 = sigma5_upto(limit - 1 >= 1 ? limit - 1 : 1);
        for (int64_t p : primes) {
            if (p > limit) break;
            Int256 acc = Int256::from_i128(tau[p]);
            for (int64_t j = 1; j <= p - 1; ++j)
                acc -= mul_i128(tau[p - j], (i128)504 * (i128)s5[j]);
            t.coeffs[p - 1] = acc;
        }
    } else {
        auto s13 = sigma13_upto(limit - 1 >= 1 ? limit - 1 : 1);
        for (int64_t p : primes) {
            if (p > limit) break;
            Int256 acc = Int256::from_i128(tau[p]);
            for (int64_t j = 1; j <= p - 1; ++j)
                acc -= Int256::from_i128(tau[p - j]) * (s13[j] * Int256(24));
            t.coeffs[p - 1] = acc;
        }
    }

    // prime powers via the Hecke recursion a(p^{e+1}) = a(p)a(p^e) - p^{kappa-1} a(p^{e-1})
    for (int64_t p : primes) {
        if (p > limit) break;
        if (p > limit / p) continue;
        Int256 pk = int256_pow(p, weight - 1);
        int64_t pe1 = p * p;
        Int256 prev(1), cur = t.coeffs[p - 1];
        while (pe1 <= limit) {
            Int256 next = cur * t.coeffs[p - 1] - pk * prev;
            t.coeffs[pe1 - 1] = next;
            prev = cur;
            cur = next;
            if (pe1 > limit / p) break;
            pe1 *= p;
        }
    }

    // composites by multiplicativity (smallest-prime-factor walk)
    t.coeffs[0] = Int256(1);
    if (limit >= 2) {
        std::vector<int32_t> spf(limit + 1, 0);
        for (int64_t i = 2; i <= limit; ++i) {
            if (spf[i] == 0)
                for (int64_t j = i; j <= limit; j += i)
                    if (spf[j] == 0) spf[j] = (int32_t)i;
        }
        for (int64_t n = 2; n <= limit; ++n) {
            int64_t p = spf[n];
            int64_t q = n, pe = 1;
            while (q % p == 0) { q /= p; pe *= p; }
            if (q == 1) continue;  // prime power, already set
            t.coeffs[n - 1] = t.coeffs[pe - 1] * t.coeffs[q - 1];
        }
    }

    // normalized eigenvalues, long-double intermediate to keep the relative
    // error within a few ulps
    t.lambdas.resize(limit);
    const long double half_shift = (weight - 1) / 2.0L;
    for (int64_t n = 1; n <= limit; ++n) {
        long double num = t.coeffs[n - 1].to_long_double();
        t.lambdas[n - 1] = (double)(num / powl((long double)n, half_shift));
    }
    return t;
}

double lambda_prime_power(const EigenformTable& table, int64_t p, int e) {
    if (p < 2 || p > table.limit) throw domain_error("lambda_prime_power: p out of range");
    // primality check against the cached list
    {
        bool prime = true;
        for (int64_t q : arith::primes_upto((int64_t)std::sqrt((double)p) + 1)) {
            if (q * q > p) break;
            if (p % q == 0) { prime = false; break; }
        }
        if (!prime) throw domain_error("lambda_prime_power: p is not prime");
    }
    if (e < 0) throw domain_error("lambda_prime_power: e must be >= 0");
    double lp = table.lambda(p);
    double prev = 1.0, cur = lp;
    if (e == 0) return 1.0;
    for (int i = 1; i < e; ++i) {
        double next = lp * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// cache i/o: header (magic, version, weight, limit), then one length-prefixed
// little-endian record per coefficient
// ---------------------------------------------------------------------------

namespace {
constexpr uint32_t kMagic = 0x434d5754;  // "TWMC"
constexpr uint32_t kVersion = 1;

void put_u32(std::ofstream& f, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    f.write((const char*)b, 4);
}
void put_u64(std::ofstream& f, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    f.write((const char*)b, 8);
}
uint32_t get_u32(std::ifstream& f) {
    unsigned char b[4];
    f.read((char*)b, 4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= (uint32_t)b[i] << (8 * i);
    return v;
}
uint64_t get_u64(std::ifstream& f) {
    unsigned char b[8];
    f.read((char*)b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= (uint64_t)b[i] << (8 * i);
    return v;
}
}  // namespace

void write_cache(const EigenformTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw resource_error("write_cache: cannot open " + path);
    put_u32(f, kMagic);
    put_u32(f, kVersion);
    put_u32(f, (uint32_t)table.weight);
    put_u32(f, 0);
    put_u64(f, (uint64_t)table.limit);
    for (const Int256& v : table.coeffs) {
        Int256 m = v.abs();
        unsigned char bytes[32];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 8; ++j) bytes[8 * i + j] = (m.limb[i] >> (8 * j)) & 0xff;
        int len = 32;
        while (len > 0 && bytes[len - 1] == 0) --len;
        unsigned char hdr[2] = {(unsigned char)len, (unsigned char)(v.negative() ? 1 : 0)};
        f.write((const char*)hdr, 2);
        f.write((const char*)bytes, len);
    }
    if (!f) throw resource_error("write_cache: write failed on " + path);
}

EigenformTable read_cache(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw resource_error("read_cache: cannot open " + path);
    if (get_u32(f) != kMagic) throw integrity_error("read_cache: bad magic in " + path);
    if (get_u32(f) != kVersion) throw integrity_error("read_cache: unsupported version in " + path);
    EigenformTable t;
    t.weight = (int)get_u32(f);
    get_u32(f);
    t.limit = (int64_t)get_u64(f);
    if (t.limit < 1) throw integrity_error("read_cache: bad limit in " + path);
    t.coeffs.assign(t.limit, Int256(0));
    for (int64_t n = 0; n < t.limit; ++n) {
        unsigned char hdr[2];
        f.read((char*)hdr, 2);
        int len = hdr[0];
        if (!f || len > 32) throw integrity_error("read_cache: truncated record in " + path);
        unsigned char bytes[32] = {0};
        f.read((char*)bytes, len);
        Int256 m;
        for (int i = 0; i < 4; ++i) {
            uint64_t w = 0;
            for (int j = 0; j < 8; ++j) w |= (uint64_t)bytes[8 * i + j] << (8 * j);
            m.limb[i] = w;
        }
        t.coeffs[n] = hdr[1] ? -m : m;
    }
    const long double half_shift = (t.weight - 1) / 2.0L;
    t.lambdas.resize(t.limit);
    for (int64_t n = 1; n <= t.limit; ++n)
        t.lambdas[n - 1] = (double)(t.coeffs[n - 1].to_long_double() /
                                    powl((long double)n, half_shift));
    return t;
}

EigenformTable build_or_load(int weight, int64_t limit, const std::string& dir) {
    if (dir.empty()) return build_table(weight, limit);
    std::filesystem::create_directories(dir);
    char name[64];
    std::snprintf(name, sizeof name, "coeffs_w%d_N%lld.bin", weight, (long long)limit);
    std::string path = dir + "/" + name;
    if (std::filesystem::exists(path)) {
        try {
            EigenformTable t = read_cache(path);
            if (t.weight == weight && t.limit == limit) return t;
        } catch (const std::exception&) {
            // fall through to rebuild
        }
    }
    EigenformTable t = build_table(weight, limit);
    write_cache(t, path);
    return t;
}

}  // namespace twistmoment::eigenform
