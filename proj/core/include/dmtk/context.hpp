#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "dmtk/torsion.hpp"

namespace dmtk {

struct Numerics {
    int64_t n = 64;          // target absolute precision, theta-units
    int64_t slack = 8;       // equality slack
    int64_t work_margin = 24;
    uint32_t t_trunc = 48;   // Tate truncation for series-level identities
    uint32_t mx = 16;        // X-truncation
    uint32_t exp_terms = 10;
    uint32_t cutoff = 0;     // lattice_exp starting cutoff; 0 = estimate
    int64_t n_work() const { return n + work_margin; }
};

// One fully prepared configuration (prime, roots, lattice, module,
// exponential) plus caches for everything the verification suites keep
// re-asking for: interpolation polynomials, torsion values, AGF truncations.
class Case {
public:
    Numerics num;
    uint32_t q = 0;
    const GFField* fq = nullptr;
    GFPoly prime;
    RootSystem rs;
    Lattice lat;             // empty for module-first cases
    DrinfeldModule mod;
    ExpSeries E;
    uint32_t lattice_cutoff = 0;
    QVal lattice_last_move = QVal::pos_inf();
    QVal module_residual = QVal::pos_inf();
    bool has_lattice = false;

    // lattice-first: module and exponential are derived from the periods
    static Case from_lattice(const Numerics& num, uint32_t q, const GFPoly& prime, Lattice lat);
    // module-first: no periods, AGF-dependent routes are unavailable
    static Case from_module(const Numerics& num, uint32_t q, const GFPoly& prime,
                            DrinfeldModule mod);

    uint32_t rank() const { return mod.rank(); }
    uint32_t d() const { return rs.d; }

    const InterpPoly& interp(uint32_t m);
    // torsion value c_{j,(m),l} through the exponential route (cached);
    // j is 1-based like the basis index
    const CElem& coeff(uint32_t j, uint32_t m, uint32_t l);
    // omega_j^(m) evaluated at the root with (cyclic) index root_idx,
    // reassembled from the cached coefficients
    CElem omega_deriv_at_root(uint32_t j, uint32_t m, int64_t root_idx);
    // generator exp(z_j / prime^(m+1))
    const CElem& generator(uint32_t j, uint32_t m);

    // AGF of z_j at a truncation long enough for |t| = 1 evaluation
    const TateSeries& agf_series(uint32_t j);
    uint32_t boundary_trunc() const;

private:
    std::map<uint32_t, InterpPoly> interp_;
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, CElem> coeff_;
    std::map<std::pair<uint32_t, uint32_t>, CElem> gen_;
    std::vector<std::optional<TateSeries>> agf_;
};

}  // namespace dmtk
