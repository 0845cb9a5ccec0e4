#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dmtk {

// Exact rational valuations (units: powers of 1/theta), with +/-infinity.
// Values saturate at |num| ~ 2^60 instead of overflowing; saturated
// magnitudes only ever feed "is this beyond every window" decisions.
struct QVal {
    int64_t num = 0;
    int64_t den = 1;  // den > 0; den == 0 encodes infinities via sign of num

    static constexpr int64_t kSat = int64_t(1) << 60;

    QVal() = default;
    QVal(int64_t n, int64_t d = 1) : num(n), den(d) { normalize(); }

    static QVal pos_inf() {
        QVal v;
        v.num = 1;
        v.den = 0;
        return v;
    }
    static QVal neg_inf() {
        QVal v;
        v.num = -1;
        v.den = 0;
        return v;
    }

    bool is_pos_inf() const { return den == 0 && num > 0; }
    bool is_neg_inf() const { return den == 0 && num < 0; }
    bool finite() const { return den != 0; }

    void normalize() {
        if (den == 0) {
            num = num >= 0 ? 1 : -1;
            return;
        }
        if (den < 0) {
            den = -den;
            num = -num;
        }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > kSat) num = kSat;
        if (num < -kSat) {
            // negative saturation would silently shrink a huge value
            throw std::overflow_error("QVal: valuation magnitude exceeds desk scale");
        }
    }

    QVal operator+(const QVal& o) const {
        if (!finite() || !o.finite()) {
            if (finite()) return o;
            if (o.finite()) return *this;
            if (num == o.num) return *this;
            throw std::domain_error("QVal: inf + (-inf)");
        }
        __int128 n = __int128(num) * o.den + __int128(o.num) * den;
        __int128 d = __int128(den) * o.den;
        return from128(n, d);
    }
    QVal operator-() const {
        QVal v = *this;
        v.num = -v.num;
        v.normalize();
        return v;
    }
    QVal operator-(const QVal& o) const { return *this + (-o); }

    // multiply by a positive integer scale (e.g. q^j)
    QVal scale(int64_t s) const {
        if (!finite()) return *this;
        return from128(__int128(num) * s, den);
    }
    QVal div(int64_t s) const {
        if (!finite()) return *this;
        return from128(num, __int128(den) * s);
    }

    bool operator<(const QVal& o) const {
        if (!finite() || !o.finite()) {
            if (is_neg_inf()) return !o.is_neg_inf();
            if (is_pos_inf()) return false;
            return o.is_pos_inf();
        }
        return __int128(num) * o.den < __int128(o.num) * den;
    }
    bool operator==(const QVal& o) const { return num == o.num && den == o.den; }
    bool operator!=(const QVal& o) const { return !(*this == o); }
    bool operator<=(const QVal& o) const { return *this < o || *this == o; }
    bool operator>(const QVal& o) const { return o < *this; }
    bool operator>=(const QVal& o) const { return o <= *this; }

    std::string str() const {
        if (is_pos_inf()) return "inf";
        if (is_neg_inf()) return "-inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static QVal from128(__int128 n, __int128 d) {
        if (d < 0) {
            d = -d;
            n = -n;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > kSat) n = kSat;
        if (n < -__int128(kSat) || d > kSat)
            throw std::overflow_error("QVal: valuation magnitude exceeds desk scale");
        QVal v;
        v.num = int64_t(n);
        v.den = int64_t(d);
        return v;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
};

inline QVal qmin(const QVal& a, const QVal& b) { return a < b ? a : b; }
inline QVal qmax(const QVal& a, const QVal& b) { return a < b ? b : a; }

}  // namespace dmtk
