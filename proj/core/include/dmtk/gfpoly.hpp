#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmtk/gf.hpp"

namespace dmtk {

// Dense univariate polynomials over one GFField.  The same type serves both
// polynomial rings the toolkit works in: F_q[theta] and F_q[t] share the
// coefficient list, and the coefficient-preserving ring map between them is
// just a re-reading of the same data.
class GFPoly {
public:
    GFPoly() : f_(nullptr) {}
    explicit GFPoly(const GFField& f) : f_(&f) {}
    GFPoly(const GFField& f, std::vector<uint32_t> coeffs);

    static GFPoly zero(const GFField& f) { return GFPoly(f); }
    static GFPoly one(const GFField& f) { return {f, {f.scalar(1)}}; }
    static GFPoly x(const GFField& f) { return {f, {0, f.scalar(1)}}; }
    static GFPoly scalar(const GFField& f, int64_t v) { return {f, {f.scalar(v)}}; }
    static GFPoly monomial(const GFField& f, GFElem c, uint32_t deg);
    static GFPoly from_ints(const GFField& f, std::vector<int64_t> coeffs);

    const GFField& field() const { return *f_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    GFElem coeff(size_t i) const {
        return {f_, i < c_.size() ? c_[i] : 0};
    }
    uint32_t coeff_code(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    GFElem lead() const { return coeff(c_.size() - 1); }
    bool is_monic() const { return !c_.empty() && c_.back() == f_->scalar(1); }

    GFPoly operator+(const GFPoly& o) const;
    GFPoly operator-(const GFPoly& o) const;
    GFPoly operator*(const GFPoly& o) const;
    GFPoly operator-() const;
    bool operator==(const GFPoly& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const GFPoly& o) const { return !(*this == o); }

    GFPoly shift(uint32_t n) const;  // * x^n
    GFPoly scaled(GFElem s) const;
    static void divmod(const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r);
    GFPoly mod(const GFPoly& m) const;
    GFPoly div_exact(const GFPoly& b) const;
    static GFPoly gcd(GFPoly a, GFPoly b);
    // g = gcd(a,b) = u*a + v*b
    static GFPoly ext_gcd(const GFPoly& a, const GFPoly& b, GFPoly& u, GFPoly& v);
    GFPoly pow(uint32_t n) const;
    GFPoly pow_mod(uint64_t n, const GFPoly& m) const;

    GFElem eval(const GFElem& x) const;          // x may live in an extension
    GFPoly lift(const GFField& g) const;         // embed coefficients
    std::optional<GFPoly> project(const GFField& g) const;  // if all coeffs lie in g

    // coefficient-wise x -> x^(p^j)
    GFPoly frob_coeffs(int64_t pj) const;

    bool is_irreducible() const;
    std::string show(const std::string& var) const;

private:
    const GFField* f_;
    std::vector<uint32_t> c_;  // c_[i]: coefficient of x^i; trailing zeros trimmed
    void trim();
};

// binomial(i, n) mod p via base-p digit products
uint32_t lucas_binom(uint64_t i, uint64_t n, uint32_t p);

// n-th hyperderivative: sum binom(i,n) c_i x^(i-n)
GFPoly hyperderiv(const GFPoly& h, uint32_t n);

// All monic irreducible polynomials of the given degree, in code order.
std::vector<GFPoly> monic_irreducibles(const GFField& f, uint32_t deg);

// The d roots of a monic irreducible p (coefficients in F_q = GF(p^s), the
// poly's field) inside GF(q^d), ordered so roots[i+1] = roots[i]^q and
// roots[0] is the code-least root.  Throws on reducible or non-monic input.
std::vector<GFElem> prime_roots(const GFPoly& prime, uint32_t s = 1);

// Polynomials in a second variable T with GFPoly coefficients.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(const GFField& f) : f_(&f) {}
    BiPoly(const GFField& f, std::vector<GFPoly> coeffs);

    static BiPoly from_first(const GFPoly& a);           // a(theta) as T-degree 0
    static BiPoly from_second(const GFPoly& a);          // a(T), theta-degree 0

    const GFField& field() const { return *f_; }
    bool is_zero() const { return c_.empty(); }
    int deg_second() const { return int(c_.size()) - 1; }
    GFPoly coeff(size_t i) const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    // remainder under division by a monic m(T) with constant coefficients
    BiPoly mod_second(const GFPoly& m) const;
    BiPoly pow(uint32_t n) const;
    // divide exactly by (T - r(theta)); throws if not divisible
    BiPoly div_linear_second(const GFPoly& r) const;
    GFPoly eval_second(const GFElem& t) const;  // t in an extension; coeffs lift

    bool operator==(const BiPoly& o) const;
    std::string show(const std::string& var1, const std::string& var2) const;

private:
    const GFField* f_;
    std::vector<GFPoly> c_;  // c_[i]: GFPoly coefficient of T^i
    void trim();
};

}  // namespace dmtk
