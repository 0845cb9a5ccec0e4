#include "dmtk/torsion.hpp"

#include <stdexcept>

namespace dmtk {

BiPoly InterpPoly::as_bipoly() const {
    std::vector<GFPoly> cc = c;
    return BiPoly(prime.field(), std::move(cc));
}

InterpPoly interp_poly_remainder(const GFPoly& prime, uint32_t n) {
    const GFField& fq = prime.field();
    // (p(T) - p(theta)) / (T - theta), then power and reduce mod p(T)
    BiPoly diff = BiPoly::from_second(prime) - BiPoly::from_first(prime);
    BiPoly base = diff.div_linear_second(GFPoly::x(fq));
    BiPoly red = base.pow(n + 1).mod_second(prime);
    InterpPoly out;
    out.prime = prime;
    out.level = n;
    for (uint32_t l = 0; l < uint32_t(prime.degree()); ++l) out.c.push_back(red.coeff(l));
    return out;
}

namespace {

InterpPoly interp_poly_lagrange(const GFPoly& prime, uint32_t n, uint32_t q) {
    RootSystem rs = RootSystem::make(prime, q);
    const GFField& F = *rs.ext;
    const GFField& fq = prime.field();
    GFPoly plift = prime.lift(F);
    BiPoly acc(F);
    for (uint32_t k = 0; k < rs.d; ++k) {
        GFPoly lin(F, {F.neg(rs.roots[k].in_field(F).code()), F.scalar(1)});  // theta - zeta_k
        GFPoly val = plift.pow(n + 1).div_exact(lin.pow(n + 1));
        // Lagrange factor prod_{u != k} (T - zeta_u) / (zeta_k - zeta_u)
        BiPoly ell = BiPoly::from_first(GFPoly::one(F));
        GFElem den = GFElem::one(F);
        for (uint32_t u = 0; u < rs.d; ++u) {
            if (u == k) continue;
            std::vector<GFPoly> tpoly{GFPoly(F, {F.neg(rs.roots[u].in_field(F).code())}),
                                      GFPoly::one(F)};
            ell = ell * BiPoly(F, std::move(tpoly));
            den = den * (rs.roots[k].in_field(F) - rs.roots[u].in_field(F));
        }
        ell = ell * BiPoly::from_first(GFPoly(F, {den.inverse().code()}) * val);
        acc = acc + ell;
    }
    InterpPoly out;
    out.prime = prime;
    out.level = n;
    for (uint32_t l = 0; l < rs.d; ++l) {
        auto down = acc.coeff(l).project(fq);
        if (!down)
            throw std::logic_error("interp_poly: interpolation coefficients failed to descend to F_q");
        out.c.push_back(*down);
    }
    return out;
}

}  // namespace

InterpPoly interp_poly(const GFPoly& prime, uint32_t n, uint32_t q) {
    if (!prime.is_monic() || (prime.degree() > 1 && !prime.is_irreducible()))
        throw std::invalid_argument("interp_poly: prime must be monic irreducible");
    InterpPoly r2 = interp_poly_remainder(prime, n);
    InterpPoly r1 = interp_poly_lagrange(prime, n, q);
    for (uint32_t l = 0; l < r2.c.size(); ++l)
        if (r1.c[l] != r2.c[l])
            throw std::logic_error("interp_poly: interpolation and remainder routes disagree");
    return r2;
}

std::vector<GFPoly> interp_closed_form_level0(const GFPoly& prime) {
    const GFField& fq = prime.field();
    uint32_t d = uint32_t(prime.degree());
    std::vector<GFPoly> out;
    for (uint32_t l = 0; l < d; ++l) {
        GFPoly acc = GFPoly::zero(fq);
        for (uint32_t k = l + 1; k <= d; ++k)
            acc = acc + GFPoly::monomial(fq, prime.coeff(k), k - l - 1);
        out.push_back(acc);
    }
    return out;
}

bool interp_eval_check(const InterpPoly& qn, const RootSystem& rs, uint32_t* bad_k) {
    const GFField& F = *rs.ext;
    GFPoly plift = rs.prime.lift(F);
    BiPoly b = qn.as_bipoly();
    for (uint32_t k = 0; k < rs.d; ++k) {
        GFPoly lin(F, {F.neg(rs.roots[k].in_field(F).code()), F.scalar(1)});
        GFPoly lhs = b.eval_second(rs.roots[k]) * lin.pow(qn.level + 1);
        if (lhs != plift.pow(qn.level + 1)) {
            if (bad_k) *bad_k = k;
            return false;
        }
    }
    return true;
}

uint32_t interp_span_rank(const InterpPoly& qn) {
    const GFField& fq = qn.prime.field();
    uint32_t d = uint32_t(qn.prime.degree());
    std::vector<std::vector<uint32_t>> m(d, std::vector<uint32_t>(d, 0));
    for (uint32_t l = 0; l < d; ++l) {
        GFPoly red = qn.c[l].mod(qn.prime);
        for (uint32_t i = 0; i < d; ++i) m[l][i] = red.coeff_code(i);
    }
    uint32_t rank = 0;
    for (uint32_t col = 0; col < d && rank < d; ++col) {
        uint32_t piv = rank;
        while (piv < d && !m[piv][col]) ++piv;
        if (piv == d) continue;
        std::swap(m[rank], m[piv]);
        uint32_t inv = fq.inv(m[rank][col]);
        for (uint32_t j = 0; j < d; ++j) m[rank][j] = fq.mul(m[rank][j], inv);
        for (uint32_t row = 0; row < d; ++row) {
            if (row == rank || !m[row][col]) continue;
            uint32_t c = m[row][col];
            for (uint32_t j = 0; j < d; ++j)
                m[row][j] = fq.sub(m[row][j], fq.mul(c, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

CElem torsion_value_exp_route(const ExpSeries& E, const CElem& z, const GFPoly& qnl,
                              const GFPoly& prime, uint32_t m_plus_1) {
    CElem denom = CElem::from_poly(prime).pow_int(m_plus_1).invert();
    CElem arg = z * CElem::from_poly(qnl) * denom;
    return exp_eval(E, arg);
}

CElem torsion_value_module_route(const DrinfeldModule& mod, const ExpSeries& E, const CElem& z,
                                 const GFPoly& qnl, const GFPoly& prime, uint32_t m_plus_1) {
    CElem denom = CElem::from_poly(prime).pow_int(m_plus_1).invert();
    CElem gen = exp_eval(E, z * denom);
    return mod.phi_of(qnl).apply(gen);
}

std::vector<CElem> torsion_row_boundary_route(const TateSeries& omega, uint32_t m,
                                              const RootSystem& rs) {
    return coeffs_at_roots(hyperderiv(omega, m), rs);
}

TorsionCheck torsion_membership_check(const DrinfeldModule& mod, const GFPoly& prime, uint32_t m,
                                      const CElem& c, int64_t n_target, int64_t slack) {
    TorsionCheck out;
    CElem member = mod.apply_poly(prime.pow(m + 1), c);
    out.membership_residual = member.val();
    out.floor = qmin(QVal(n_target), member.prec_val());
    out.member_pass = out.membership_residual >= out.floor - QVal(slack);

    CElem strict = m == 0 ? c : mod.apply_poly(prime.pow(m), c);
    auto [sv, at_floor] = strict.val_or_floor();
    out.strict_val = sv;
    QVal neff = qmin(QVal(n_target), strict.prec_val());
    out.strict_pass = !at_floor && sv <= neff.div(2);
    return out;
}

CElem moore_det(const std::vector<CElem>& vals, uint32_t q) {
    size_t n = vals.size();
    if (n == 0) throw std::invalid_argument("moore_det: empty value list");
    const GFField& f = vals[0].field();
    std::vector<std::vector<CElem>> m(n, std::vector<CElem>(n, CElem::exact_zero(f)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = vals[i].frobenius(q, int64_t(j));
    CElem det = CElem::from_gf(GFElem::one(f));
    for (size_t col = 0; col < n; ++col) {
        // ultrametric pivoting: take the largest entry (least valuation)
        size_t piv = col;
        bool found = false;
        for (size_t row = col; row < n; ++row) {
            if (m[row][col].zero_to_precision()) continue;
            if (!found || m[row][col].val() < m[piv][col].val()) {
                piv = row;
                found = true;
            }
        }
        if (!found) {
            // a column collapsed: determinant is zero to this precision
            QVal floor = QVal::pos_inf();
            for (size_t row = col; row < n; ++row) floor = qmin(floor, m[row][col].prec_val());
            if (!floor.finite()) return CElem::exact_zero(f);
            return det * CElem::zero_to_prec(f, floor.den, floor.num);
        }
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        CElem inv = m[col][col].invert();
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col].zero_to_precision() && m[row][col].exactly_zero()) continue;
            CElem factor = m[row][col] * inv;
            for (size_t j = col; j < n; ++j) m[row][j] = m[row][j] - factor * m[col][j];
        }
    }
    return det;
}

MooreVerdict moore_independence(const std::vector<CElem>& vals, uint32_t q, int64_t n_target) {
    MooreVerdict out;
    out.count = vals.size();
    CElem det = moore_det(vals, q);
    auto [dv, at_floor] = det.val_or_floor();
    out.det_val = dv;
    out.at_floor = at_floor;
    out.threshold = qmin(QVal(n_target), det.prec_val()).div(2);
    out.independent = !at_floor && dv <= out.threshold;
    return out;
}

bool exhaustive_independent(const std::vector<CElem>& vals, const GFField& fq, int64_t n_target) {
    size_t n = vals.size();
    uint64_t combos = 1;
    for (size_t i = 0; i < n; ++i) {
        combos *= fq.size;
        if (combos > (uint64_t(1) << 22))
            throw std::invalid_argument("exhaustive_independent: search space too large");
    }
    for (uint64_t code = 1; code < combos; ++code) {
        CElem acc = CElem::exact_zero(vals[0].field());
        uint64_t c = code;
        for (size_t i = 0; i < n; ++i) {
            uint32_t digit = uint32_t(c % fq.size);
            c /= fq.size;
            if (digit) acc = acc + vals[i].scaled(GFElem(&fq, digit));
        }
        auto [v, at_floor] = acc.val_or_floor();
        QVal neff = qmin(QVal(n_target), acc.prec_val());
        if (at_floor || v > neff.div(2)) return false;
    }
    return true;
}

}  // namespace dmtk
