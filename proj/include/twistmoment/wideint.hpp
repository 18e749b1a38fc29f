// wideint.hpp
//
// Fixed-width signed wide integers (256 and 512 bit, two's complement,
// little-endian uint64 limbs) for exact Fourier-coefficient arithmetic.
//
// Width policy: a weight-18 coefficient obeys |a(n)| <= d(n) n^{17/2},
// which at the table ceiling n = 2*10^6 is below 10^38; products formed
// by the Hecke recursion and multiplicativity stay below d(m)d(n) N^{17/2}
// < 10^57 << 2^255.  Weight 26 (|a(n)| <= d(n) n^{25/2}) is capped at
// n <= 3*10^5, keeping every stored value and product inside 256 bits.
// Convolution accumulators use 512 bits; since fixed-width two's-complement
// add/mul is exact mod 2^512, intermediate wraparound is harmless as long
// as the final value fits, which the bounds above guarantee.

#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <stdexcept>
#include <algorithm>
#include <cmath>

namespace twistmoment {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

template <int NLIMBS>
struct WideInt {
    std::array<u64, NLIMBS> limb{};  // little-endian, two's complement

    WideInt() = default;

    WideInt(long long v) {
        u64 ext = v < 0 ? ~0ull : 0ull;
        limb.fill(ext);
        limb[0] = static_cast<u64>(v);
    }

    static WideInt from_i128(i128 v) {
        WideInt r;
        u64 ext = v < 0 ? ~0ull : 0ull;
        r.limb.fill(ext);
        r.limb[0] = static_cast<u64>(static_cast<u128>(v));
        r.limb[1] = static_cast<u64>(static_cast<u128>(v) >> 64);
        return r;
    }

    bool negative() const { return (limb[NLIMBS - 1] >> 63) != 0; }
    bool is_zero() const {
        for (u64 w : limb) if (w) return false;
        return true;
    }

    friend WideInt operator+(const WideInt& a, const WideInt& b) {
        WideInt r;
        u64 carry = 0;
        for (int i = 0; i < NLIMBS; ++i) {
            u128 s = (u128)a.limb[i] + b.limb[i] + carry;
            r.limb[i] = (u64)s;
            carry = (u64)(s >> 64);
        }
        return r;
    }
    friend WideInt operator-(const WideInt& a, const WideInt& b) {
        WideInt r;
        u64 borrow = 0;
        for (int i = 0; i < NLIMBS; ++i) {
            u128 d = (u128)a.limb[i] - b.limb[i] - borrow;
            r.limb[i] = (u64)d;
            borrow = (u64)((d >> 64) & 1);
        }
        return r;
    }
    WideInt operator-() const {
        WideInt r;
        u64 carry = 1;
        for (int i = 0; i < NLIMBS; ++i) {
            u128 s = (u128)(~limb[i]) + carry;
            r.limb[i] = (u64)s;
            carry = (u64)(s >> 64);
        }
        return r;
    }
    WideInt& operator+=(const WideInt& b) { *this = *this + b; return *this; }
    WideInt& operator-=(const WideInt& b) { *this = *this - b; return *this; }

    // Full schoolbook product truncated to NLIMBS limbs (exact mod 2^(64*NLIMBS)).
    friend WideInt operator*(const WideInt& a, const WideInt& b) {
        WideInt r;
        for (int i = 0; i < NLIMBS; ++i) {
            if (!a.limb[i]) continue;
            u64 carry = 0;
            for (int j = 0; i + j < NLIMBS; ++j) {
                u128 cur = (u128)a.limb[i] * b.limb[j] + r.limb[i + j] + carry;
                r.limb[i + j] = (u64)cur;
                carry = (u64)(cur >> 64);
            }
        }
        return r;
    }

    friend bool operator==(const WideInt& a, const WideInt& b) { return a.limb == b.limb; }
    friend bool operator!=(const WideInt& a, const WideInt& b) { return !(a == b); }

    friend bool operator<(const WideInt& a, const WideInt& b) {
        if (a.negative() != b.negative()) return a.negative();
        for (int i = NLIMBS - 1; i >= 0; --i)
            if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i];
        return false;
    }
    friend bool operator<=(const WideInt& a, const WideInt& b) { return !(b < a); }

    WideInt abs() const { return negative() ? -*this : *this; }

    // Highest-set-bit position of |x| (0 for x = 0).
    int bit_length_abs() const {
        WideInt m = abs();
        for (int i = NLIMBS - 1; i >= 0; --i)
            if (m.limb[i]) return 64 * i + 64 - __builtin_clzll(m.limb[i]);
        return 0;
    }

    // Round-to-nearest conversion; exact for values below 2^53.
    double to_double() const {
        WideInt m = abs();
        int bl = m.bit_length_abs();
        if (bl == 0) return 0.0;
        long double acc = 0.0L;
        for (int i = NLIMBS - 1; i >= 0; --i) {
            acc = acc * 18446744073709551616.0L + (long double)m.limb[i];
        }
        double d = (double)acc;
        return negative() ? -d : d;
    }

    long double to_long_double() const {
        WideInt m = abs();
        long double acc = 0.0L;
        for (int i = NLIMBS - 1; i >= 0; --i)
            acc = acc * 18446744073709551616.0L + (long double)m.limb[i];
        return negative() ? -acc : acc;
    }

    bool fits_i64() const {
        WideInt lo = WideInt((long long)INT64_MIN), hi = WideInt((long long)INT64_MAX);
        return !(*this < lo) && (*this <= hi);
    }
    long long to_i64() const { return (long long)limb[0]; }

    // Decimal string (for reports and golden-value tests).
    std::string to_string() const {
        WideInt m = abs();
        if (m.is_zero()) return "0";
        std::string out;
        while (!m.is_zero()) {
            // divide magnitude by 10^18
            u128 rem = 0;
            WideInt q;
            for (int i = NLIMBS - 1; i >= 0; --i) {
                u128 cur = (rem << 64) | m.limb[i];
                q.limb[i] = (u64)(cur / 1000000000000000000ull);
                rem = cur % 1000000000000000000ull;
            }
            char buf[20];
            std::snprintf(buf, sizeof buf, "%018llu", (unsigned long long)rem);
            out.insert(0, buf);
            m = q;
        }
        while (out.size() > 1 && out[0] == '0') out.erase(out.begin());
        if (negative()) out.insert(out.begin(), '-');
        return out;
    }

    static WideInt from_string(const std::string& s) {
        WideInt r;
        bool neg = false;
        size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) { neg = s[i] == '-'; ++i; }
        if (i >= s.size()) throw std::invalid_argument("WideInt::from_string: empty");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("WideInt::from_string: bad digit");
            r = r * WideInt(10) + WideInt(s[i] - '0');
        }
        return neg ? -r : r;
    }
};

using Int256 = WideInt<4>;
using Int512 = WideInt<8>;

inline Int512 widen(const Int256& x) {
    Int512 r;
    u64 ext = x.negative() ? ~0ull : 0ull;
    r.limb.fill(ext);
    for (int i = 0; i < 4; ++i) r.limb[i] = x.limb[i];
    return r;
}

// Truncate to 256 bits; caller guarantees the value fits.
inline Int256 narrow(const Int512& x) {
    Int256 r;
    for (int i = 0; i < 4; ++i) r.limb[i] = x.limb[i];
    return r;
}

// a*b with 128-bit two's-complement operands, exact 256-bit result.
inline Int256 mul_i128(i128 a, i128 b) {
    bool neg = (a < 0) != (b < 0);
    u128 ua = a < 0 ? (u128)(-a) : (u128)a;
    u128 ub = b < 0 ? (u128)(-b) : (u128)b;
    u64 a0 = (u64)ua, a1 = (u64)(ua >> 64);
    u64 b0 = (u64)ub, b1 = (u64)(ub >> 64);
    Int256 r;
    u128 t0 = (u128)a0 * b0;
    u128 t1 = (u128)a0 * b1;
    u128 t2 = (u128)a1 * b0;
    u128 t3 = (u128)a1 * b1;
    u128 lo = t0;
    r.limb[0] = (u64)lo;
    u128 mid = (lo >> 64) + (u64)t1 + (u64)t2;
    r.limb[1] = (u64)mid;
    u128 hi = (mid >> 64) + (t1 >> 64) + (t2 >> 64) + (u64)t3;
    r.limb[2] = (u64)hi;
    r.limb[3] = (u64)((hi >> 64) + (t3 >> 64));
    return neg ? -r : r;
}

}  // namespace twistmoment
