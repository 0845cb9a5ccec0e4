#pragma once

#include <optional>
#include <random>
#include <string>

#include "dmtk/context.hpp"

namespace dmtk {

// Simulated Galois element: an invertible r x r matrix over the truncated
// prime-adic completion together with a conjugate shift s describing the
// action on the constants (zeta -> zeta^(q^s)).  It acts on torsion values
// through the module action and on root-of-unity powers through the shift.
struct GaloisMatrix {
    uint32_t r = 0;
    uint32_t level = 0;
    uint32_t shift = 0;
    std::vector<PadicInt> a;  // row-major

    const PadicInt& at(uint32_t j, uint32_t k) const { return a[j * r + k]; }

    static GaloisMatrix identity(const GFPoly& prime, uint32_t r, uint32_t level);
    // uniform digits, resampled until the matrix is invertible; draw order:
    // entries row-major, digits low-to-high, digit coefficients low-to-high,
    // then the conjugate shift
    static GaloisMatrix random(const GFPoly& prime, uint32_t r, uint32_t level, uint32_t d,
                               std::mt19937_64& rng);
    GaloisMatrix mul(const GaloisMatrix& o, uint32_t d) const;
    bool invertible() const;  // determinant is a unit mod the prime
};

// sigma applied to a tuple indexed like the lattice basis:
// sigma(x_j) = sum_k phi_{a_{jk} mod p^(m+1)}(x_k)
std::vector<CElem> sigma_apply(Case& cs, const GaloisMatrix& A, uint32_t m,
                               const std::vector<CElem>& x);

struct CheckResult {
    bool pass = true;
    QVal worst = QVal::pos_inf();  // worst residual valuation seen
    QVal floor = QVal::pos_inf();  // the tightest threshold it was held against
    std::string detail;
};

void fold(CheckResult& into, const QVal& residual, const QVal& floor, int64_t slack,
          const std::string& what);

// Galois action on the stacked vector of hyperderivative values at a root:
// sigma(X) equals the blocked band matrix of the entries applied to the
// vector at the shifted root.  Checked at every root, all levels m <= n.
CheckResult vector_action_check(Case& cs, const GaloisMatrix& A, uint32_t n);

// The same identity in Taylor form, X-truncated at mx.
CheckResult taylor_action_check(Case& cs, const GaloisMatrix& A, uint32_t mx);

// Matrix form on the tau-twisted AGF matrix (column i carries the
// zeta^(1/q^i) bookkeeping).
CheckResult twisted_matrix_action_check(Case& cs, const GaloisMatrix& A, uint32_t mx);

// sigma_{AB} agrees with sigma_A after sigma_B on level-m tuples.
CheckResult composition_check(Case& cs, const GaloisMatrix& A, const GaloisMatrix& B, uint32_t m);

// sigma(phi_a(x)) = phi_a(sigma(x))
CheckResult module_commute_check(Case& cs, const GaloisMatrix& A, const GFPoly& a, uint32_t m);

// the level-m action is the reduction of the level-(m+1) action on values
// that lie one level down
CheckResult level_consistency_check(Case& cs, const GaloisMatrix& A, uint32_t m);

// the banded matrix of vector_action_check equals the X -> nilpotent image
// of the Taylor series, exactly at the constant-field level
CheckResult band_taylor_compat_check(Case& cs, const GaloisMatrix& A, uint32_t n);

// --- motive-side matrices ---------------------------------------------------

// companion matrix of multiplication by tau^(-1) on the module's motive;
// entries are degree-<=1 polynomials in t over CElem (inverse twists of g_i)
std::vector<std::vector<TateSeries>> motive_companion(const DrinfeldModule& mod);

// AGF matrix: entry (j,i) = tau^(i-1)-twist of omega_j
std::vector<std::vector<TateSeries>> agf_matrix(Case& cs);

// determinant nonzero at 0 and at every root; column functional equations
CheckResult agf_matrix_checks(Case& cs);

// --- genuine automorphism (optional mode) -----------------------------------

// For an unramified rank-1 configuration, the coefficient Frobenius x -> x^q
// is an honest Galois element; derive its matrix digit by digit.  Throws when
// the configuration is ramified or the rank exceeds 1.
GaloisMatrix frobenius_matrix(Case& cs, uint32_t level);

// verify that the simulated action of frobenius_matrix matches the literal
// coefficient Frobenius on the torsion values
CheckResult genuine_frobenius_check(Case& cs, uint32_t level);

}  // namespace dmtk
