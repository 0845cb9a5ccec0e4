#pragma once

#include <vector>

#include "dmtk/drinfeld.hpp"

namespace dmtk {

// The degree-<d interpolation polynomial in T attached to a prime and a
// level: it interpolates zeta_k -> p(theta)^(n+1)/(theta-zeta_k)^(n+1) and
// its T-coefficients steer which torsion points the exponential produces.
struct InterpPoly {
    GFPoly prime;
    uint32_t level = 0;        // n
    std::vector<GFPoly> c;     // coefficient of T^l, l < d, in F_q[theta]

    BiPoly as_bipoly() const;
};

// Both constructions, cross-checked coefficient by coefficient:
// (R1) Lagrange interpolation over GF(q^d) followed by descent to F_q,
// (R2) remainder of ((p(theta)-p(T))/(theta-T))^(n+1) modulo p(T).
// Throws on any mismatch.
InterpPoly interp_poly(const GFPoly& prime, uint32_t n, uint32_t q);

// remainder route only (used as the cross-check oracle in tests)
InterpPoly interp_poly_remainder(const GFPoly& prime, uint32_t n);

// closed form for n = 0: c_l = sum_{k>l} alpha_k theta^(k-l-1)
std::vector<GFPoly> interp_closed_form_level0(const GFPoly& prime);

// exact identity q(theta,zeta_k)*(theta-zeta_k)^(n+1) = p(theta)^(n+1);
// returns false (with the offending k in *bad_k) instead of throwing
bool interp_eval_check(const InterpPoly& qn, const RootSystem& rs, uint32_t* bad_k = nullptr);

// rank over F_q of the d x d matrix of theta-coefficients of c_l mod p
uint32_t interp_span_rank(const InterpPoly& qn);

// --- torsion values -------------------------------------------------------

// exp(z * qnl(theta) / p^(m+1))
CElem torsion_value_exp_route(const ExpSeries& E, const CElem& z, const GFPoly& qnl,
                              const GFPoly& prime, uint32_t m_plus_1);

// phi_qnl applied to exp(z / p^(m+1))
CElem torsion_value_module_route(const DrinfeldModule& mod, const ExpSeries& E, const CElem& z,
                                 const GFPoly& qnl, const GFPoly& prime, uint32_t m_plus_1);

// coefficients of the m-th hyperderivative of omega at the root system
std::vector<CElem> torsion_row_boundary_route(const TateSeries& omega, uint32_t m,
                                              const RootSystem& rs);

struct TorsionCheck {
    QVal membership_residual;  // val phi_{p^(m+1)}(c)
    QVal strict_val;           // val phi_{p^m}(c)
    QVal floor;                // effective precision of the membership residual
    bool member_pass = false;
    bool strict_pass = false;
};

// membership at level m+1 and strict non-membership at level m
TorsionCheck torsion_membership_check(const DrinfeldModule& mod, const GFPoly& prime, uint32_t m,
                                      const CElem& c, int64_t n_target, int64_t slack);

// --- F_q-linear independence via the Moore determinant ---------------------

struct MooreVerdict {
    bool independent = false;
    bool at_floor = false;
    QVal det_val;       // valuation of det(x_i^(q^(j-1))) or its floor
    QVal threshold;     // the nonzero threshold used (N_eff / 2)
    size_t count = 0;
};

CElem moore_det(const std::vector<CElem>& vals, uint32_t q);
MooreVerdict moore_independence(const std::vector<CElem>& vals, uint32_t q, int64_t n_target);

// exhaustive F_q-combination search; oracle for the smallest cases only
bool exhaustive_independent(const std::vector<CElem>& vals, const GFField& fq, int64_t n_target);

}  // namespace dmtk
