#include "dmtk/galois.hpp"

#include <stdexcept>

namespace dmtk {

namespace {

GFPoly matrix_det_mod_p(const std::vector<PadicInt>& a, uint32_t r, const GFPoly& prime) {
    // Laplace expansion on the polynomial values, reduced at the end
    std::vector<GFPoly> vals;
    for (const auto& x : a) vals.push_back(x.value());
    std::function<GFPoly(std::vector<uint32_t>, uint32_t)> expand =
        [&](std::vector<uint32_t> cols, uint32_t row) -> GFPoly {
        const GFField& f = prime.field();
        if (cols.empty()) return GFPoly::one(f);
        GFPoly acc = GFPoly::zero(f);
        for (size_t ci = 0; ci < cols.size(); ++ci) {
            std::vector<uint32_t> rest;
            for (size_t cj = 0; cj < cols.size(); ++cj)
                if (cj != ci) rest.push_back(cols[cj]);
            GFPoly term = vals[row * r + cols[ci]] * expand(rest, row + 1);
            acc = (ci % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    std::vector<uint32_t> cols;
    for (uint32_t c = 0; c < r; ++c) cols.push_back(c);
    return expand(cols, 0).mod(prime);
}

}  // namespace

GaloisMatrix GaloisMatrix::identity(const GFPoly& prime, uint32_t r, uint32_t level) {
    GaloisMatrix m;
    m.r = r;
    m.level = level;
    m.shift = 0;
    for (uint32_t j = 0; j < r; ++j)
        for (uint32_t k = 0; k < r; ++k)
            m.a.push_back(j == k ? PadicInt::one(prime, level) : PadicInt::zero(prime, level));
    return m;
}

GaloisMatrix GaloisMatrix::random(const GFPoly& prime, uint32_t r, uint32_t level, uint32_t d,
                                  std::mt19937_64& rng) {
    const GFField& fq = prime.field();
    uint32_t pd = uint32_t(prime.degree());
    while (true) {
        GaloisMatrix m;
        m.r = r;
        m.level = level;
        for (uint32_t j = 0; j < r; ++j)
            for (uint32_t k = 0; k < r; ++k) {
                std::vector<GFPoly> digits;
                for (uint32_t u = 0; u < level; ++u) {
                    std::vector<uint32_t> c(pd);
                    for (uint32_t i = 0; i < pd; ++i) c[i] = uint32_t(rng() % fq.size);
                    digits.emplace_back(fq, std::move(c));
                }
                m.a.emplace_back(prime, level, std::move(digits));
            }
        m.shift = uint32_t(rng() % d);
        if (m.invertible()) return m;
    }
}

GaloisMatrix GaloisMatrix::mul(const GaloisMatrix& o, uint32_t d) const {
    GaloisMatrix m;
    m.r = r;
    m.level = std::min(level, o.level);
    m.shift = (shift + o.shift) % d;
    for (uint32_t j = 0; j < r; ++j)
        for (uint32_t k = 0; k < r; ++k) {
            PadicInt acc = at(j, 0).truncate(m.level) * o.at(0, k).truncate(m.level);
            for (uint32_t u = 1; u < r; ++u)
                acc = acc + at(j, u).truncate(m.level) * o.at(u, k).truncate(m.level);
            m.a.push_back(acc);
        }
    return m;
}

bool GaloisMatrix::invertible() const {
    if (a.empty()) return false;
    const GFPoly& prime = a[0].prime();
    return !matrix_det_mod_p(a, r, prime).is_zero();
}

std::vector<CElem> sigma_apply(Case& cs, const GaloisMatrix& A, uint32_t m,
                               const std::vector<CElem>& x) {
    if (m + 1 > A.level)
        throw std::invalid_argument("sigma_apply: level exceeds the stored matrix level");
    uint32_t r = A.r;
    std::vector<CElem> out;
    for (uint32_t j = 0; j < r; ++j) {
        CElem acc = CElem::exact_zero(x[0].field());
        for (uint32_t k = 0; k < r; ++k) {
            GFPoly rep = A.at(j, k).reduce(m + 1);
            if (rep.is_zero()) continue;
            acc = acc + cs.mod.apply_poly(rep, x[k]);
        }
        out.push_back(acc);
    }
    return out;
}

void fold(CheckResult& into, const QVal& residual, const QVal& floor, int64_t slack,
          const std::string& what) {
    QVal thr = floor - QVal(slack);
    if (residual < into.worst) into.worst = residual;
    if (thr < into.floor) into.floor = thr;
    if (residual < thr) {
        into.pass = false;
        if (into.detail.empty())
            into.detail = what + ": residual val " + residual.str() + " < " + thr.str();
    }
}

namespace {

std::vector<CElem> coeff_tuple(Case& cs, uint32_t m, uint32_t l) {
    std::vector<CElem> x;
    for (uint32_t k = 1; k <= cs.rank(); ++k) x.push_back(cs.coeff(k, m, l));
    return x;
}

// exact Taylor coefficients (X^0..X^n) of the matrix entries at a root
std::vector<std::vector<std::vector<GFElem>>> entry_bands(Case& cs, const GaloisMatrix& A,
                                                          int64_t root_idx, uint32_t n) {
    uint32_t r = A.r, d = cs.d();
    size_t mx = size_t(d) * (n + 1);
    size_t ridx = size_t(((root_idx % d) + d) % d);
    std::vector<std::vector<std::vector<GFElem>>> bands(
        r, std::vector<std::vector<GFElem>>(r));
    for (uint32_t j = 0; j < r; ++j)
        for (uint32_t k = 0; k < r; ++k) {
            GFXSeries dD = padic_taylor(A.at(j, k).truncate(n + 1), cs.rs, ridx, mx);
            for (uint32_t u = 0; u <= n; ++u)
                bands[j][k].push_back(GFElem(dD.f, dD.c[u]));
        }
    return bands;
}

QVal value_floor(const Case& cs, const CElem& a, const CElem& b) {
    return qmin(QVal(cs.num.n), qmin(a.prec_val(), b.prec_val()));
}

}  // namespace

CheckResult vector_action_check(Case& cs, const GaloisMatrix& A, uint32_t n) {
    CheckResult out;
    uint32_t r = cs.rank(), d = cs.d();
    for (uint32_t k0 = 0; k0 < d; ++k0) {
        int64_t k1 = int64_t(k0) + int64_t(A.shift);
        auto bands = entry_bands(cs, A, k1, n);
        for (uint32_t m = 0; m <= n; ++m) {
            // sigma on the coefficient columns, one tuple per power of zeta
            std::vector<std::vector<CElem>> sig;
            for (uint32_t l = 0; l < d; ++l) sig.push_back(sigma_apply(cs, A, m, coeff_tuple(cs, m, l)));
            for (uint32_t j = 0; j < r; ++j) {
                std::vector<CElem> f;
                for (uint32_t l = 0; l < d; ++l) f.push_back(sig[l][j]);
                CElem lhs = resum_at_root(f, cs.rs, k1);
                CElem rhs = CElem::exact_zero(lhs.field());
                for (uint32_t k = 0; k < r; ++k)
                    for (uint32_t u = 0; u <= m; ++u)
                        rhs = rhs + cs.omega_deriv_at_root(k + 1, m - u, k1)
                                        .scaled(bands[j][k][u]);
                fold(out, (lhs - rhs).val(), value_floor(cs, lhs, rhs), cs.num.slack,
                     "root " + std::to_string(k0) + " row (" + std::to_string(j + 1) + "," +
                         std::to_string(m) + ")");
            }
        }
    }
    return out;
}

CheckResult taylor_action_check(Case& cs, const GaloisMatrix& A, uint32_t mx) {
    CheckResult out;
    uint32_t r = cs.rank(), d = cs.d();
    if (A.level < mx)
        throw std::invalid_argument("taylor_action_check: matrix level below the X-truncation");
    for (uint32_t k0 = 0; k0 < d; ++k0) {
        int64_t k1 = int64_t(k0) + int64_t(A.shift);
        size_t ridx = size_t(((k1 % d) + d) % d);
        // sigma of the Taylor vector, coefficient by coefficient
        std::vector<XSeries> lhs(r);
        for (uint32_t nn = 0; nn < mx; ++nn) {
            std::vector<std::vector<CElem>> sig;
            for (uint32_t l = 0; l < d; ++l)
                sig.push_back(sigma_apply(cs, A, nn, coeff_tuple(cs, nn, l)));
            for (uint32_t j = 0; j < r; ++j) {
                std::vector<CElem> f;
                for (uint32_t l = 0; l < d; ++l) f.push_back(sig[l][j]);
                lhs[j].c.push_back(resum_at_root(f, cs.rs, k1));
            }
        }
        // exact Taylor matrix times the Taylor vector at the shifted root
        std::vector<XSeries> omega_taylor(r);
        for (uint32_t k = 0; k < r; ++k)
            for (uint32_t nn = 0; nn < mx; ++nn)
                omega_taylor[k].c.push_back(cs.omega_deriv_at_root(k + 1, nn, k1));
        for (uint32_t j = 0; j < r; ++j) {
            XSeries rhs;
            for (uint32_t k = 0; k < r; ++k) {
                GFXSeries dD =
                    padic_taylor(A.at(j, k).truncate(mx), cs.rs, ridx, size_t(d) * mx)
                        .truncated(mx);
                XSeries term = dD.as_xseries() * omega_taylor[k];
                rhs = k == 0 ? term : rhs + term;
            }
            for (uint32_t nn = 0; nn < mx; ++nn)
                fold(out, (lhs[j].c[nn] - rhs.c[nn]).val(),
                     value_floor(cs, lhs[j].c[nn], rhs.c[nn]), cs.num.slack,
                     "root " + std::to_string(k0) + " X^" + std::to_string(nn) + " row " +
                         std::to_string(j + 1));
        }
    }
    return out;
}

CheckResult twisted_matrix_action_check(Case& cs, const GaloisMatrix& A, uint32_t mx) {
    CheckResult out;
    uint32_t r = cs.rank(), d = cs.d();
    if (A.level < mx)
        throw std::invalid_argument("twisted_matrix_action_check: matrix level below the X-truncation");
    for (uint32_t k0 = 0; k0 < d; ++k0) {
        int64_t post = int64_t(k0) + int64_t(A.shift);
        size_t ridx = size_t(((post % d) + d) % d);
        for (uint32_t i = 1; i <= r; ++i) {
            int64_t pre = int64_t(k0) - int64_t(i);
            int64_t pre_post = pre + int64_t(A.shift);
            // sigma of each entry's Taylor coefficients, then the tau^i twist
            std::vector<XSeries> lhs(r);
            for (uint32_t nn = 0; nn < mx; ++nn) {
                std::vector<std::vector<CElem>> sig;
                for (uint32_t l = 0; l < d; ++l)
                    sig.push_back(sigma_apply(cs, A, nn, coeff_tuple(cs, nn, l)));
                for (uint32_t j = 0; j < r; ++j) {
                    std::vector<CElem> f;
                    for (uint32_t l = 0; l < d; ++l) f.push_back(sig[l][j]);
                    lhs[j].c.push_back(resum_at_root(f, cs.rs, pre_post).frobenius(cs.q, int64_t(i)));
                }
            }
            std::vector<XSeries> col(r);
            for (uint32_t k = 0; k < r; ++k)
                for (uint32_t nn = 0; nn < mx; ++nn)
                    col[k].c.push_back(
                        cs.omega_deriv_at_root(k + 1, nn, pre_post).frobenius(cs.q, int64_t(i)));
            for (uint32_t j = 0; j < r; ++j) {
                XSeries rhs;
                for (uint32_t k = 0; k < r; ++k) {
                    GFXSeries dD =
                        padic_taylor(A.at(j, k).truncate(mx), cs.rs, ridx, size_t(d) * mx)
                            .truncated(mx);
                    XSeries term = dD.as_xseries() * col[k];
                    rhs = k == 0 ? term : rhs + term;
                }
                for (uint32_t nn = 0; nn < mx; ++nn)
                    fold(out, (lhs[j].c[nn] - rhs.c[nn]).val(),
                         value_floor(cs, lhs[j].c[nn], rhs.c[nn]), cs.num.slack,
                         "root " + std::to_string(k0) + " col " + std::to_string(i) + " X^" +
                             std::to_string(nn) + " row " + std::to_string(j + 1));
            }
        }
    }
    return out;
}

CheckResult composition_check(Case& cs, const GaloisMatrix& A, const GaloisMatrix& B, uint32_t m) {
    CheckResult out;
    GaloisMatrix AB = A.mul(B, cs.d());
    for (uint32_t l = 0; l < cs.d(); ++l) {
        auto x = coeff_tuple(cs, m, l);
        auto lhs = sigma_apply(cs, A, m, sigma_apply(cs, B, m, x));
        auto rhs = sigma_apply(cs, AB, m, x);
        for (uint32_t j = 0; j < cs.rank(); ++j)
            fold(out, (lhs[j] - rhs[j]).val(), value_floor(cs, lhs[j], rhs[j]), cs.num.slack,
                 "tuple l=" + std::to_string(l) + " row " + std::to_string(j + 1));
    }
    return out;
}

CheckResult module_commute_check(Case& cs, const GaloisMatrix& A, const GFPoly& a, uint32_t m) {
    CheckResult out;
    std::vector<CElem> x;
    for (uint32_t k = 1; k <= cs.rank(); ++k) x.push_back(cs.generator(k, m));
    std::vector<CElem> ax;
    for (const auto& xi : x) ax.push_back(cs.mod.apply_poly(a, xi));
    auto lhs = sigma_apply(cs, A, m, ax);
    auto sx = sigma_apply(cs, A, m, x);
    for (uint32_t j = 0; j < cs.rank(); ++j) {
        CElem rhs = cs.mod.apply_poly(a, sx[j]);
        fold(out, (lhs[j] - rhs).val(), value_floor(cs, lhs[j], rhs), cs.num.slack,
             "row " + std::to_string(j + 1));
    }
    return out;
}

CheckResult level_consistency_check(Case& cs, const GaloisMatrix& A, uint32_t m) {
    CheckResult out;
    if (m == 0) return out;
    // push level-(m) values one level down and compare both reductions
    std::vector<CElem> y;
    for (uint32_t k = 1; k <= cs.rank(); ++k)
        y.push_back(cs.mod.apply_poly(cs.prime, cs.generator(k, m)));
    auto low = sigma_apply(cs, A, m - 1, y);
    auto high = sigma_apply(cs, A, m, y);
    for (uint32_t j = 0; j < cs.rank(); ++j)
        fold(out, (low[j] - high[j]).val(), value_floor(cs, low[j], high[j]), cs.num.slack,
             "row " + std::to_string(j + 1));
    return out;
}

CheckResult band_taylor_compat_check(Case& cs, const GaloisMatrix& A, uint32_t n) {
    CheckResult out;
    uint32_t d = cs.d();
    const GFField& fp = GFReg::field(cs.fq->p, 1);
    for (uint32_t k1 = 0; k1 < d; ++k1) {
        auto bands = entry_bands(cs, A, int64_t(k1), n);
        for (uint32_t j = 0; j < A.r; ++j)
            for (uint32_t k = 0; k < A.r; ++k) {
                // independent route: hyperderivatives of the polynomial
                // representative, evaluated at the root
                GFPoly rep = A.at(j, k).reduce(n + 1);
                for (uint32_t u = 0; u <= n; ++u) {
                    GFElem direct = hyperderiv(rep, u).eval(cs.rs.root(int64_t(k1)));
                    if (direct != bands[j][k][u]) {
                        out.pass = false;
                        out.worst = QVal::neg_inf();
                        out.detail = "band (" + std::to_string(j + 1) + "," +
                                     std::to_string(k + 1) + ") X^" + std::to_string(u) +
                                     " differs at root " + std::to_string(k1);
                        return out;
                    }
                }
            }
    }
    (void)fp;
    return out;
}

std::vector<std::vector<TateSeries>> motive_companion(const DrinfeldModule& mod) {
    uint32_t r = mod.rank();
    const GFField& f = *mod.fq;
    auto [gv, gfloor] = mod.g.back().val_or_floor();
    (void)gv;
    if (gfloor) throw std::domain_error("motive_companion: leading coefficient numerically zero");
    std::vector<std::vector<TateSeries>> m(r, std::vector<TateSeries>(r));
    for (uint32_t i = 0; i + 1 < r; ++i) {
        for (uint32_t k = 0; k < r; ++k)
            m[i][k] = TateSeries::constant(CElem::exact_zero(f));
        m[i][i + 1] = TateSeries::constant(CElem::from_gf(GFElem::one(f)));
    }
    CElem lead_inv = mod.g.back().frobenius(mod.q, -int64_t(r)).invert();
    // (t - theta) / g_r^(q^-r)
    TateSeries first;
    first.c.push_back(-(CElem::theta_pow(f, 1) * lead_inv));
    first.c.push_back(lead_inv);
    m[r - 1][0] = first;
    for (uint32_t k = 1; k < r; ++k)
        m[r - 1][k] = TateSeries::constant(
            -(mod.g[k - 1].frobenius(mod.q, -int64_t(k)) * lead_inv));
    return m;
}

std::vector<std::vector<TateSeries>> agf_matrix(Case& cs) {
    uint32_t r = cs.rank();
    std::vector<std::vector<TateSeries>> m(r, std::vector<TateSeries>(r));
    for (uint32_t j = 0; j < r; ++j)
        for (uint32_t i = 0; i < r; ++i) m[j][i] = twist(cs.agf_series(j + 1), cs.q, int64_t(i));
    return m;
}

namespace {

CElem matrix_det(const std::vector<std::vector<CElem>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    CElem acc = CElem::exact_zero(m[0][0].field());
    // Laplace along the first row; r <= 3 here
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<CElem>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<CElem> row;
            for (size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(row);
        }
        CElem term = m[0][c] * matrix_det(minor);
        acc = c % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

CheckResult agf_matrix_checks(Case& cs) {
    CheckResult out;
    auto U = agf_matrix(cs);
    uint32_t r = cs.rank();
    // determinant at t = 0 and at every root
    std::vector<CElem> samples{CElem::exact_zero(*cs.fq)};
    for (uint32_t k = 0; k < cs.d(); ++k) samples.push_back(CElem::from_gf(cs.rs.roots[k]));
    for (const auto& z : samples) {
        std::vector<std::vector<CElem>> mat(r, std::vector<CElem>(r, CElem::exact_zero(*cs.fq)));
        for (uint32_t j = 0; j < r; ++j)
            for (uint32_t i = 0; i < r; ++i) mat[j][i] = eval(U[j][i], z);
        CElem det = matrix_det(mat);
        auto [dv, at_floor] = det.val_or_floor();
        QVal thr = qmin(QVal(cs.num.n), det.prec_val()).div(2);
        if (at_floor || dv > thr) {
            out.pass = false;
            out.detail = "AGF matrix determinant numerically zero at a sample point";
        }
        if (dv < out.worst) out.worst = dv;
    }
    // column functional equations under the conjugated module action
    SkewPoly ft = cs.mod.phi_theta();
    for (uint32_t i = 0; i < r; ++i) {
        SkewPoly conj{cs.q, {}};
        for (const auto& ak : ft.a) conj.a.push_back(ak.frobenius(cs.q, int64_t(i)));
        for (uint32_t j = 0; j < r; ++j) {
            TateSeries lhs = conj.act(U[j][i]);
            TateSeries rhs = U[j][i].shifted(1);
            size_t len = std::min(lhs.length(), rhs.length());
            for (size_t idx = 0; idx < len; ++idx)
                fold(out, (lhs.c[idx] - rhs.c[idx]).val(),
                     value_floor(cs, lhs.c[idx], rhs.c[idx]), cs.num.slack,
                     "column relation (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                         ") t^" + std::to_string(idx));
        }
    }
    return out;
}

GaloisMatrix frobenius_matrix(Case& cs, uint32_t level) {
    if (cs.rank() != 1)
        throw std::invalid_argument("frobenius_matrix: genuine mode is rank-1 only");
    for (uint32_t m = 0; m < level; ++m)
        if (cs.generator(1, m).ram() != 1)
            throw std::invalid_argument(
                "frobenius_matrix: configuration is ramified; the coefficient Frobenius is not "
                "an automorphism here");
    const GFField& fq = *cs.fq;
    uint32_t pd = uint32_t(cs.prime.degree());
    GFPoly u = GFPoly::zero(fq);
    GFPoly ppow = GFPoly::one(fq);
    for (uint32_t m = 0; m < level; ++m) {
        const CElem& gen = cs.generator(1, m);
        CElem target = gen.frobenius(cs.q, 1);
        uint64_t candidates = 1;
        for (uint32_t i = 0; i < pd; ++i) candidates *= fq.size;
        int found = -1;
        for (uint64_t code = 0; code < candidates; ++code) {
            std::vector<uint32_t> c(pd);
            uint64_t cc = code;
            for (uint32_t i = 0; i < pd; ++i) {
                c[i] = uint32_t(cc % fq.size);
                cc /= fq.size;
            }
            GFPoly cand = u + GFPoly(fq, std::move(c)) * ppow;
            CElem got = cs.mod.apply_poly(cand, gen);
            CElem diff = got - target;
            QVal floor = qmin(QVal(cs.num.n), diff.prec_val());
            if (diff.val() >= floor - QVal(cs.num.slack)) {
                if (found >= 0)
                    throw std::logic_error("frobenius_matrix: digit is not unique at this precision");
                found = int(code);
            }
        }
        if (found < 0)
            throw std::logic_error("frobenius_matrix: no digit matches the Frobenius action");
        std::vector<uint32_t> c(pd);
        uint64_t cc = uint64_t(found);
        for (uint32_t i = 0; i < pd; ++i) {
            c[i] = uint32_t(cc % fq.size);
            cc /= fq.size;
        }
        u = u + GFPoly(fq, std::move(c)) * ppow;
        ppow = ppow * cs.prime;
    }
    GaloisMatrix m;
    m.r = 1;
    m.level = level;
    m.shift = 1 % cs.d();
    m.a.push_back(PadicInt::expand(u, cs.prime, level));
    return m;
}

CheckResult genuine_frobenius_check(Case& cs, uint32_t level) {
    CheckResult out;
    GaloisMatrix A = frobenius_matrix(cs, level);
    for (uint32_t m = 0; m < level; ++m)
        for (uint32_t l = 0; l < cs.d(); ++l) {
            auto sim = sigma_apply(cs, A, m, coeff_tuple(cs, m, l));
            CElem lit = cs.coeff(1, m, l).frobenius(cs.q, 1);
            fold(out, (sim[0] - lit).val(), value_floor(cs, sim[0], lit), cs.num.slack,
                 "literal Frobenius (m=" + std::to_string(m) + ",l=" + std::to_string(l) + ")");
        }
    CheckResult va = vector_action_check(cs, A, level >= 2 ? level - 2 : 0);
    fold(out, va.worst, va.floor + QVal(cs.num.slack), cs.num.slack, "vector action");
    out.pass = out.pass && va.pass;
    return out;
}

}  // namespace dmtk
