#pragma once

#include <string>
#include <vector>

#include "dmtk/tate.hpp"

namespace dmtk {

// Twisted (Ore) polynomials sum a_i tau^i over CElem, tau x = x^q.
struct SkewPoly {
    uint32_t q = 0;
    std::vector<CElem> a;

    static SkewPoly zero(uint32_t q) { return {q, {}}; }
    static SkewPoly constant(uint32_t q, const CElem& c);

    int deg() const;
    void trim();
    SkewPoly operator+(const SkewPoly& o) const;
    SkewPoly operator*(const SkewPoly& o) const;  // tau * a = a^q * tau

    // additive-polynomial evaluation sum a_i x^(q^i); terms provably beyond
    // every window are skipped and folded into the result precision
    CElem apply(const CElem& x) const;
    // action on the Tate algebra: sum a_i * twist(h, i)
    TateSeries act(const TateSeries& h) const;
};

struct DrinfeldModule {
    uint32_t q = 0;
    const GFField* fq = nullptr;   // constant field F_q
    std::vector<CElem> g;          // g[0] = g_1 ... g[r-1] = g_r, g_r nonzero
    bool exact_coeffs = false;     // flagged when the g_i were given exactly

    uint32_t rank() const { return uint32_t(g.size()); }
    SkewPoly phi_theta() const;
    SkewPoly phi_of(const GFPoly& a) const;  // ring-homomorphism extension
    // phi_a applied to a value by Horner through phi_theta; avoids
    // materializing the skew polynomial for large deg(a)
    CElem apply_poly(const GFPoly& a, const CElem& x) const;
};

// leading coefficients of exp: sum e_m tau^m, e_0 = 1
struct ExpSeries {
    uint32_t q = 0;
    std::vector<CElem> e;
    size_t terms() const { return e.size(); }
};

// e_m (theta^(q^m) - theta) = sum_{i=1}^{min(m,r)} g_i e_{m-i}^(q^i)
ExpSeries exp_coeffs(const DrinfeldModule& mod, uint32_t M);

// sum e_m x^(q^m); rejects arguments whose term valuations do not become
// increasing inside the truncation window
CElem exp_eval(const ExpSeries& E, const CElem& x);

// residual of the defining identity exp(theta x) = phi_theta(exp(x)) at x
QVal exp_functional_residual(const DrinfeldModule& mod, const ExpSeries& E, const CElem& x);

// fundamental period of the rank-1 module theta + tau over F_q:
// theta * (-theta)^(1/(q-1)) * prod_{i>=1} (1 - theta^(1-q^i))^(-1),
// branch fixed by the code-least root of X^(q-1) = -1
CElem carlitz_period(const GFField& fq, uint32_t q);

struct Lattice {
    uint32_t q = 0;
    const GFField* fq = nullptr;
    std::vector<CElem> z;

    uint32_t rank() const { return uint32_t(z.size()); }
};

// Rank diagnostics: distinct leading behavior of the basis plus a probe over
// all F_q-combinations with polynomial coefficients of degree < probe_deg.
// Throws with a description when the basis looks degenerate.
void check_admissible(const Lattice& lat, uint32_t probe_deg = 2);

struct LatticeExpResult {
    ExpSeries E;
    uint32_t cutoff = 0;     // generator degree the construction stabilized at
    QVal last_move;          // worst coefficient move of the final increment
};

// Exponential of the finite F_q-module spanned by theta^k z_j, k < cutoff,
// grown until the coefficients e_0..e_M stop moving (within slack), starting
// from a valuation-based cutoff estimate.  Throws with diagnostics when the
// hard cap is reached without stabilizing.
LatticeExpResult lattice_exp(const Lattice& lat, uint32_t M, int64_t slack_units,
                             uint32_t cutoff_start = 0, uint32_t cutoff_cap = 512);

// Solves the module coefficients g_1..g_r from the lattice exponential;
// verifies the functional-equation recursion on the spare coefficients.
DrinfeldModule module_from_lattice(const Lattice& lat, const ExpSeries& E, QVal* residual = nullptr);

// Anderson generating function of z: sum_{i<T} exp(z/theta^(i+1)) t^i.
// The tail bound is certified from the valuation-preservation range of exp.
TateSeries agf(const ExpSeries& E, const CElem& z, uint32_t T);

// Same series through the partial-fraction route
// sum_m z^(q^m) e_m / (theta^(q^m) - t), expanded in t.
TateSeries agf_pellarin(const ExpSeries& E, const CElem& z, uint32_t T);

}  // namespace dmtk
