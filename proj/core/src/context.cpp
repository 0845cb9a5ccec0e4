#include "dmtk/context.hpp"

#include <stdexcept>

namespace dmtk {

Case Case::from_lattice(const Numerics& num, uint32_t q, const GFPoly& prime, Lattice lat) {
    set_series_budget(num.n_work());
    Case cs;
    cs.num = num;
    cs.q = q;
    cs.fq = &prime.field();
    cs.prime = prime;
    cs.rs = RootSystem::make(prime, q);
    LatticeExpResult lx = lattice_exp(lat, num.exp_terms, num.slack, num.cutoff);
    cs.lat = std::move(lat);
    cs.has_lattice = true;
    cs.lattice_cutoff = lx.cutoff;
    cs.lattice_last_move = lx.last_move;
    cs.mod = module_from_lattice(cs.lat, lx.E, &cs.module_residual);
    cs.E = exp_coeffs(cs.mod, num.exp_terms);
    cs.agf_.resize(cs.lat.rank());
    return cs;
}

Case Case::from_module(const Numerics& num, uint32_t q, const GFPoly& prime, DrinfeldModule mod) {
    set_series_budget(num.n_work());
    Case cs;
    cs.num = num;
    cs.q = q;
    cs.fq = &prime.field();
    cs.prime = prime;
    cs.rs = RootSystem::make(prime, q);
    cs.mod = std::move(mod);
    cs.E = exp_coeffs(cs.mod, num.exp_terms);
    cs.has_lattice = false;
    return cs;
}

const InterpPoly& Case::interp(uint32_t m) {
    auto it = interp_.find(m);
    if (it != interp_.end()) return it->second;
    auto [pos, _] = interp_.emplace(m, interp_poly(prime, m, q));
    return pos->second;
}

const CElem& Case::coeff(uint32_t j, uint32_t m, uint32_t l) {
    if (!has_lattice)
        throw std::logic_error("Case: torsion coefficients need a lattice (periods unavailable)");
    auto key = std::make_tuple(j, m, l);
    auto it = coeff_.find(key);
    if (it != coeff_.end()) return it->second;
    CElem v = torsion_value_exp_route(E, lat.z[j - 1], interp(m).c[l], prime, m + 1);
    auto [pos, _] = coeff_.emplace(key, std::move(v));
    return pos->second;
}

CElem Case::omega_deriv_at_root(uint32_t j, uint32_t m, int64_t root_idx) {
    std::vector<CElem> f;
    for (uint32_t l = 0; l < d(); ++l) f.push_back(coeff(j, m, l));
    return resum_at_root(f, rs, root_idx);
}

const CElem& Case::generator(uint32_t j, uint32_t m) {
    if (!has_lattice)
        throw std::logic_error("Case: torsion generators need a lattice (periods unavailable)");
    auto key = std::make_pair(j, m);
    auto it = gen_.find(key);
    if (it != gen_.end()) return it->second;
    CElem denom = CElem::from_poly(prime).pow_int(m + 1).invert();
    CElem g = exp_eval(E, lat.z[j - 1] * denom);
    auto [pos, _] = gen_.emplace(key, std::move(g));
    return pos->second;
}

uint32_t Case::boundary_trunc() const {
    QVal zmin = QVal::pos_inf();
    for (const auto& zj : lat.z) zmin = qmin(zmin, zj.val());
    int64_t base = zmin.finite() ? (zmin.num < 0 ? zmin.num / zmin.den - 1 : zmin.num / zmin.den) : 0;
    int64_t need = num.n + num.slack - base + 4;
    return std::max<uint32_t>(num.t_trunc, uint32_t(std::max<int64_t>(need, 8)));
}

const TateSeries& Case::agf_series(uint32_t j) {
    if (!has_lattice)
        throw std::logic_error("Case: AGFs need a lattice (periods unavailable)");
    auto& slot = agf_[j - 1];
    if (!slot) slot = agf(E, lat.z[j - 1], boundary_trunc());
    return *slot;
}

}  // namespace dmtk
