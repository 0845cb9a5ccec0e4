#pragma once

#include <vector>

#include "dmtk/celem.hpp"
#include "dmtk/padic.hpp"

namespace dmtk {

// Truncated element of the Tate algebra: coefficients of t^0..t^(T-1) plus a
// certified lower bound on the valuation of every omitted coefficient
// (+inf for polynomials).  Constructors demand the tail bound explicitly;
// only the AGF builders can certify a finite one.
struct TateSeries {
    std::vector<CElem> c;
    QVal tail = QVal::pos_inf();

    TateSeries() = default;
    TateSeries(std::vector<CElem> coeffs, QVal tail_bound)
        : c(std::move(coeffs)), tail(tail_bound) {}

    static TateSeries from_poly(const GFPoly& a);            // image of a(t), tail +inf
    static TateSeries constant(const CElem& x);

    size_t length() const { return c.size(); }
    const CElem& coeff(size_t i) const { return c[i]; }
    // min valuation over stored coefficients (+inf if none stored/all zero)
    QVal min_stored_val() const;
    QVal min_val_with_tail() const { return qmin(min_stored_val(), tail); }

    TateSeries operator+(const TateSeries& o) const;
    TateSeries operator-(const TateSeries& o) const;
    TateSeries operator*(const TateSeries& o) const;
    TateSeries scaled(const CElem& s) const;
    TateSeries shifted(uint32_t k) const;  // * t^k
    TateSeries truncated(size_t len) const;

    std::string show(uint32_t max_terms = 6) const;
};

// coefficient-wise q^j-power Frobenius
TateSeries twist(const TateSeries& h, uint32_t q, int64_t j);

// n-th hyperderivative sum binom(i,n) c_i t^(i-n)
TateSeries hyperderiv(const TateSeries& h, uint32_t n);

// evaluation at |z| <= 1; the tail bound is folded into the result precision
CElem eval(const TateSeries& h, const CElem& z);

// The root system of a monic irreducible prime of A: the conjugate cycle
// zeta, zeta^q, ..., and the inverse of the Vandermonde matrix (zeta_k^l),
// which solves h(zeta_k) = sum_l f_l zeta_k^l for the unique f_l.
struct RootSystem {
    GFPoly prime;
    uint32_t q = 0, s = 1, d = 0;
    const GFField* ext = nullptr;
    std::vector<GFElem> roots;
    std::vector<std::vector<GFElem>> vinv;  // vinv[l][k]

    static RootSystem make(const GFPoly& prime, uint32_t q);
    const GFElem& root(int64_t k) const {  // cyclic index
        int64_t m = (k % int64_t(d) + int64_t(d)) % int64_t(d);
        return roots[size_t(m)];
    }
};

// unique coefficients f_0..f_{d-1} with h(zeta_k) = sum_l f_l zeta_k^l
std::vector<CElem> coeffs_at_roots(const TateSeries& h, const RootSystem& rs);

// reassemble sum_l f_l * root(k)^l
CElem resum_at_root(const std::vector<CElem>& f, const RootSystem& rs, int64_t k);

// Truncated power series in X over CElem (the Taylor side of the calculus).
struct XSeries {
    std::vector<CElem> c;

    size_t length() const { return c.size(); }
    XSeries operator+(const XSeries& o) const;
    XSeries operator-(const XSeries& o) const;
    XSeries operator*(const XSeries& o) const;  // truncated at min length
    XSeries inverse() const;                    // c[0] must be invertible
    XSeries frob(uint32_t q, int64_t j) const;  // coefficient-wise, X fixed
    QVal min_stored_val() const;
};

// Taylor expansion at z: coefficients h^(n)(z), n < mx
XSeries taylor_at(const TateSeries& h, const CElem& z, uint32_t mx);

// Exact truncated power series in X over a finite field (images of A_p).
struct GFXSeries {
    const GFField* f = nullptr;
    std::vector<uint32_t> c;

    static GFXSeries zero(const GFField& f, size_t len);
    static GFXSeries one(const GFField& f, size_t len);
    size_t length() const { return c.size(); }
    GFXSeries operator+(const GFXSeries& o) const;
    GFXSeries operator-(const GFXSeries& o) const;
    GFXSeries operator*(const GFXSeries& o) const;
    GFXSeries inverse() const;
    GFXSeries frob_q(uint32_t s, int64_t j) const;
    GFXSeries truncated(size_t len) const;
    size_t x_val() const;  // index of first nonzero (length() if none)
    bool operator==(const GFXSeries& o) const { return f == o.f && c == o.c; }
    XSeries as_xseries() const;  // exact CElem constants
};

// evaluation of a polynomial at (zeta + X), truncated
GFXSeries poly_at_shift(const GFPoly& a, const GFElem& zeta, size_t mx);

// The Taylor image of a truncated p-adic integer at a root of its prime:
// an exact element of GF(q^d)[[X]]/(X^mx).  Needs mx >= d * level.
GFXSeries padic_taylor(const PadicInt& a, const RootSystem& rs, size_t root_idx, size_t mx);

// Inverse of the above on its image; recovers a mod prime^level.
PadicInt padic_from_taylor(const GFXSeries& y, const RootSystem& rs, uint32_t level);

// Upper-triangular Toeplitz "derivative bands" representation of h:
// bands[k] = k-th hyperderivative; matrix entry (i,j) = bands[j-i].
struct TateBands {
    std::vector<TateSeries> b;
    TateBands mul(const TateBands& o) const;
};
TateBands taylor_bands(const TateSeries& h, uint32_t n);
std::vector<std::vector<CElem>> bands_matrix_at(const TateBands& bands, const CElem& z);

// same bands over F_q[t], exact
std::vector<GFPoly> poly_taylor_bands(const GFPoly& h, uint32_t n);
std::vector<GFPoly> poly_bands_mul(const std::vector<GFPoly>& a, const std::vector<GFPoly>& b);

}  // namespace dmtk
