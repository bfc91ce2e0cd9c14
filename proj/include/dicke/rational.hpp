#pragma once

#include <stdexcept>

#include "dicke/combinat.hpp"

namespace dicke {

/// Exact fraction over 128-bit integers, always normalized (den > 0, reduced).
/// Overflow throws rather than wrapping; desk-scale polytope LPs stay far
/// inside the range.
struct Rat {
    int128 num = 0;
    int128 den = 1;

    Rat() = default;
    Rat(long long v) : num(v), den(1) {}  // NOLINT: implicit by design

    static int128 gcd128(int128 a, int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static int128 mul_checked(int128 a, int128 b) {
        int128 out;
        if (__builtin_mul_overflow(a, b, &out)) {
            throw std::overflow_error("rational arithmetic overflow");
        }
        return out;
    }

    static Rat of(int128 n, int128 d) {
        if (d == 0) throw std::invalid_argument("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rat out;
        out.num = n;
        out.den = d;
        return out;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        int128 g = gcd128(a.den, b.den);
        int128 bd = b.den / g;
        int128 n = mul_checked(a.num, bd);
        int128 m = mul_checked(b.num, a.den / g);
        int128 sum;
        if (__builtin_add_overflow(n, m, &sum)) {
            throw std::overflow_error("rational arithmetic overflow");
        }
        return of(sum, mul_checked(a.den, bd));
    }
    friend Rat operator-(const Rat& a) { return of(-a.num, a.den); }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        int128 g1 = gcd128(a.num, b.den);
        int128 g2 = gcd128(b.num, a.den);
        return of(mul_checked(a.num / g1, b.num / g2),
                  mul_checked(a.den / g2, b.den / g1));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::invalid_argument("rational division by zero");
        return a * of(b.den, b.num);
    }

    int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }
    bool is_zero() const { return num == 0; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rat& a, const Rat& b) { return (a - b).sign() < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return (a - b).sign() <= 0; }

    double to_floating() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

}  // namespace dicke
