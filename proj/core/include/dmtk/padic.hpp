#pragma once

#include <vector>

#include "dmtk/gfpoly.hpp"

namespace dmtk {

// Truncated elements of the completion of F_q[theta] at a monic irreducible
// prime: sum_{i<level} b_i * prime^i with deg b_i < deg prime.  All digit
// arithmetic is exact; operations renormalize through the polynomial value.
class PadicInt {
public:
    PadicInt() = default;
    PadicInt(GFPoly prime, uint32_t level, std::vector<GFPoly> digits);

    static PadicInt expand(const GFPoly& a, const GFPoly& prime, uint32_t level);
    static PadicInt zero(const GFPoly& prime, uint32_t level);
    static PadicInt one(const GFPoly& prime, uint32_t level);

    const GFPoly& prime() const { return prime_; }
    uint32_t level() const { return level_; }
    const GFPoly& digit(size_t i) const { return digits_[i]; }
    const GFField& field() const { return prime_.field(); }

    GFPoly value() const;                     // sum b_i p^i, exact
    GFPoly reduce(uint32_t m) const;          // representative mod prime^m
    PadicInt truncate(uint32_t m) const;

    PadicInt operator+(const PadicInt& o) const;
    PadicInt operator-(const PadicInt& o) const;
    PadicInt operator*(const PadicInt& o) const;
    bool operator==(const PadicInt& o) const;
    bool operator!=(const PadicInt& o) const { return !(*this == o); }

    bool is_unit() const { return !digits_.empty() && !digits_[0].is_zero(); }
    bool is_zero() const;
    PadicInt inverse() const;  // throws when not a unit

    std::string show(const std::string& var) const;

private:
    GFPoly prime_;
    uint32_t level_ = 0;
    std::vector<GFPoly> digits_;
};

}  // namespace dmtk
