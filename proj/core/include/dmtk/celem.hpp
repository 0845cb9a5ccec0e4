#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dmtk/gf.hpp"
#include "dmtk/gfpoly.hpp"
#include "dmtk/qval.hpp"

namespace dmtk {

// Relative working precision (units: powers of 1/theta) used wherever an
// operation must pick a truncation depth on its own (series inversion,
// exponential tails).  Pipelines set it once from the configured target
// precision plus head-room.
int64_t series_budget();
void set_series_budget(int64_t units);

// One element of the completion of the algebraic closure of F_q((1/theta)),
// modeled as a truncated Laurent series in theta^(-1/e) with coefficients in
// a small finite field:
//
//     x  =  sum_i  c_i * theta^(-i/e),   i in [v0, prec),  c_i in GF(p^k),
//
// stored sparsely (only nonzero c_i).  `prec` is the absolute precision: all
// indices below it are known, everything at or above it is unknown.
// Valuations are measured in powers of 1/theta, so val(theta) = -1 and
// |x| = q^(-val).  Precision only ever shrinks under arithmetic; Frobenius
// scales it exactly.
class CElem {
public:
    struct Term {
        int64_t idx;
        uint32_t code;
    };

    static constexpr int64_t kPrecExact = int64_t(1) << 59;

    CElem();  // exact zero over GF(p=2... placeholder); prefer the named ctors

    static CElem exact_zero(const GFField& f);
    static CElem zero_to_prec(const GFField& f, int64_t e, int64_t prec);
    static CElem from_gf(const GFElem& c);
    static CElem scalar(const GFField& f, int64_t v);
    // theta^(num/den), den >= 1
    static CElem theta_pow(const GFField& f, int64_t num, int64_t den = 1);
    // exact image of a polynomial in theta
    static CElem from_poly(const GFPoly& a);
    static CElem from_terms(const GFField& f, int64_t e, std::vector<Term> terms,
                            int64_t prec = kPrecExact);

    const GFField& field() const { return *f_; }
    int64_t ram() const { return e_; }
    int64_t prec_units() const { return prec_; }
    QVal prec_val() const {
        return prec_ >= kPrecExact ? QVal::pos_inf() : QVal(prec_, e_);
    }
    bool is_exact() const { return prec_ >= kPrecExact; }
    const std::vector<Term>& terms() const { return c_; }

    bool zero_to_precision() const { return c_.empty(); }
    bool exactly_zero() const { return c_.empty() && is_exact(); }
    // valuation of the leading stored term; precision floor for zero-to-prec
    QVal val() const;
    std::pair<QVal, bool> val_or_floor() const;  // flag: true when at the floor
    GFElem lead_coeff() const;
    GFElem coeff_at(const QVal& exponent) const;

    CElem operator+(const CElem& o) const;
    CElem operator-(const CElem& o) const;
    CElem operator-() const;
    CElem operator*(const CElem& o) const;
    CElem scaled(const GFElem& s) const;
    CElem invert() const;  // throws on zero-to-precision input
    CElem pow_int(uint32_t n) const;

    // x -> x^(q^j) for the q-power Frobenius, q = p^s a power of the field
    // characteristic; j < 0 takes unique q^|j|-th roots (ramification may grow).
    CElem frobenius(uint32_t q, int64_t j) const;

    CElem rebased(int64_t e2, const GFField& f2) const;
    CElem capped(const QVal& prec_bound) const;  // fold an error bound into prec

    std::string show(uint32_t max_terms = 8) const;

private:
    const GFField* f_;
    int64_t e_;
    int64_t prec_;
    std::vector<Term> c_;

    void normalize();
    static void common(const CElem& a, const CElem& b, CElem& ra, CElem& rb);
};

// val(x - y), reported at the precision floor when the difference vanishes.
QVal residual_val(const CElem& x, const CElem& y);

}  // namespace dmtk
