#include "dmtk/drinfeld.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dmtk {

namespace {
const QVal kSkipHuge(int64_t(1) << 40);

// saturating power; saturated values only feed skip decisions
int64_t ipow64(uint32_t b, uint32_t e) {
    int64_t r = 1;
    while (e--) {
        if (r > (int64_t(1) << 59) / int64_t(b)) return int64_t(1) << 59;
        r *= b;
    }
    return r;
}
}  // namespace

SkewPoly SkewPoly::constant(uint32_t q, const CElem& c) {
    SkewPoly f{q, {c}};
    f.trim();
    return f;
}

int SkewPoly::deg() const { return int(a.size()) - 1; }

void SkewPoly::trim() {
    while (!a.empty() && a.back().exactly_zero()) a.pop_back();
}

SkewPoly SkewPoly::operator+(const SkewPoly& o) const {
    SkewPoly r{q, {}};
    for (size_t i = 0; i < std::max(a.size(), o.a.size()); ++i) {
        if (i < a.size() && i < o.a.size())
            r.a.push_back(a[i] + o.a[i]);
        else
            r.a.push_back(i < a.size() ? a[i] : o.a[i]);
    }
    r.trim();
    return r;
}

SkewPoly SkewPoly::operator*(const SkewPoly& o) const {
    SkewPoly r{q, {}};
    if (a.empty() || o.a.empty()) return r;
    const GFField& f = a[0].field();
    r.a.assign(a.size() + o.a.size() - 1, CElem::exact_zero(f));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].exactly_zero()) continue;
        for (size_t j = 0; j < o.a.size(); ++j)
            r.a[i + j] = r.a[i + j] + a[i] * o.a[j].frobenius(q, int64_t(i));
    }
    r.trim();
    return r;
}

CElem SkewPoly::apply(const CElem& x) const {
    if (a.empty()) return CElem::exact_zero(x.field());
    CElem acc = CElem::exact_zero(x.field());
    QVal skipped = QVal::pos_inf();
    auto [xv, xfloor] = x.val_or_floor();
    (void)xfloor;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].exactly_zero()) continue;
        auto [av, afloor] = a[i].val_or_floor();
        (void)afloor;
        QVal tv = av + xv.scale(ipow64(q, uint32_t(i)));
        if (tv >= kSkipHuge) {
            skipped = qmin(skipped, tv);
            continue;
        }
        acc = acc + a[i] * x.frobenius(q, int64_t(i));
    }
    return acc.capped(skipped);
}

TateSeries SkewPoly::act(const TateSeries& h) const {
    TateSeries acc;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].exactly_zero()) continue;
        acc = acc + twist(h, q, int64_t(i)).scaled(a[i]);
    }
    return acc;
}

SkewPoly DrinfeldModule::phi_theta() const {
    SkewPoly f{q, {}};
    f.a.push_back(CElem::theta_pow(*fq, 1));
    for (const auto& gi : g) f.a.push_back(gi);
    f.trim();
    return f;
}

SkewPoly DrinfeldModule::phi_of(const GFPoly& a) const {
    SkewPoly ft = phi_theta();
    SkewPoly r = SkewPoly::zero(q);
    for (int k = a.degree(); k >= 0; --k) {
        r = r * ft;
        r = r + SkewPoly::constant(q, CElem::from_gf(a.coeff(size_t(k))));
    }
    return r;
}

CElem DrinfeldModule::apply_poly(const GFPoly& a, const CElem& x) const {
    SkewPoly ft = phi_theta();
    CElem v = CElem::exact_zero(x.field());
    for (int k = a.degree(); k >= 0; --k) {
        v = ft.apply(v) + x.scaled(a.coeff(size_t(k)));
    }
    return v;
}

ExpSeries exp_coeffs(const DrinfeldModule& mod, uint32_t M) {
    ExpSeries E{mod.q, {}};
    const GFField& f = *mod.fq;
    E.e.push_back(CElem::from_gf(GFElem::one(f)));
    uint32_t r = mod.rank();
    for (uint32_t m = 1; m <= M; ++m) {
        CElem num = CElem::exact_zero(f);
        for (uint32_t i = 1; i <= std::min(m, r); ++i)
            num = num + mod.g[i - 1] * E.e[m - i].frobenius(mod.q, int64_t(i));
        CElem den = CElem::theta_pow(f, ipow64(mod.q, m)) - CElem::theta_pow(f, 1);
        E.e.push_back(num * den.invert());
    }
    return E;
}

CElem exp_eval(const ExpSeries& E, const CElem& x) {
    if (x.exactly_zero()) return x;
    if (E.e.empty()) throw std::invalid_argument("exp_eval: empty exponential");
    auto [xv, xfloor] = x.val_or_floor();
    (void)xfloor;
    std::vector<QVal> tv;
    for (size_t m = 0; m < E.e.size(); ++m) {
        auto [ev, efloor] = E.e[m].val_or_floor();
        (void)efloor;
        tv.push_back(ev + xv.scale(ipow64(E.q, uint32_t(m))));
    }
    // term valuations must become strictly increasing inside the window
    size_t m0 = 0;
    for (size_t m = 1; m < tv.size(); ++m)
        if (!(tv[m] > tv[m - 1])) m0 = m;
    if (m0 + 1 >= tv.size())
        throw std::domain_error("exp_eval: argument outside certified convergence range");
    CElem acc = CElem::exact_zero(x.field());
    QVal skipped = QVal::pos_inf();
    for (size_t m = 0; m < E.e.size(); ++m) {
        if (E.e[m].exactly_zero()) continue;
        if (tv[m] >= kSkipHuge) {
            skipped = qmin(skipped, tv[m]);
            continue;
        }
        acc = acc + E.e[m] * x.frobenius(E.q, int64_t(m));
    }
    acc = acc.capped(skipped);
    // remaining terms sit above the last computed valuation
    QVal floor = acc.prec_val();
    if (tv.back() < floor) acc = acc.capped(tv.back());
    return acc;
}

QVal exp_functional_residual(const DrinfeldModule& mod, const ExpSeries& E, const CElem& x) {
    CElem lhs = exp_eval(E, x * CElem::theta_pow(*mod.fq, 1));
    CElem rhs = mod.phi_theta().apply(exp_eval(E, x));
    return (lhs - rhs).val();
}

CElem carlitz_period(const GFField& fq, uint32_t q) {
    // leading-coefficient branch: code-least root of X^(q-1) = -1
    GFElem xi = GFElem::one(fq);
    if (q > 2) {
        bool found = false;
        for (uint32_t m = 1; m <= 4 && !found; ++m) {
            const GFField& ext = GFReg::field(fq.p, fq.k * m);
            for (uint32_t code = 1; code < ext.size; ++code) {
                if (ext.pow(code, q - 1) == ext.neg(ext.scalar(1))) {
                    xi = GFElem(&ext, code);
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw std::logic_error("carlitz_period: no (q-1)-st root of -1 found");
    }
    CElem lead = CElem::from_gf(xi) * CElem::theta_pow(fq, int64_t(q), int64_t(q - 1));
    CElem prod = CElem::from_gf(GFElem::one(fq));
    int64_t budget = series_budget() + 8;
    for (uint32_t i = 1;; ++i) {
        int64_t drop = ipow64(q, i) - 1;
        if (drop > budget) break;
        CElem factor = CElem::from_gf(GFElem::one(fq)) - CElem::theta_pow(fq, -drop);
        prod = prod * factor;
    }
    return lead * prod.invert();
}

void check_admissible(const Lattice& lat, uint32_t probe_deg) {
    if (lat.z.empty()) throw std::invalid_argument("lattice: empty basis");
    for (const auto& zj : lat.z)
        if (zj.zero_to_precision())
            throw std::invalid_argument("lattice: basis vector is numerically zero");
    for (size_t i = 0; i < lat.z.size(); ++i)
        for (size_t j = i + 1; j < lat.z.size(); ++j) {
            QVal diff = lat.z[i].val() - lat.z[j].val();
            if (diff.den == 1) {
                // same valuation class: leading coefficients must not be
                // F_q-proportional after shifting by the valuation gap
                CElem ratio = lat.z[i] * lat.z[j].invert();
                GFElem lead = ratio.lead_coeff();
                bool in_fq = true;
                try {
                    lead.in_field(*lat.fq);
                } catch (const std::exception&) {
                    in_fq = false;
                }
                if (in_fq)
                    throw std::invalid_argument(
                        "lattice: basis vectors " + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + " share their leading behavior");
            }
        }
    // probe: no small F_q[theta]-combination vanishes numerically
    uint32_t r = lat.rank();
    uint64_t combos = 1;
    for (uint32_t i = 0; i < r * probe_deg; ++i) combos *= lat.fq->size;
    for (uint64_t code = 1; code < combos; ++code) {
        CElem acc = CElem::exact_zero(*lat.fq);
        uint64_t c = code;
        for (uint32_t j = 0; j < r; ++j)
            for (uint32_t k = 0; k < probe_deg; ++k) {
                uint32_t digit = uint32_t(c % lat.fq->size);
                c /= lat.fq->size;
                if (digit)
                    acc = acc + lat.z[j] * CElem::theta_pow(*lat.fq, -int64_t(k))
                                    .scaled(GFElem(lat.fq, digit));
            }
        auto [v, at_floor] = acc.val_or_floor();
        if (at_floor || v > acc.prec_val() - QVal(8))
            throw std::invalid_argument("lattice: an F_q[theta]-combination of the basis is numerically zero");
    }
}

namespace {

struct GenOrder {
    QVal val;
    uint32_t k, j;
    bool operator<(const GenOrder& o) const {
        if (val != o.val) return val < o.val;  // biggest elements first
        if (k != o.k) return k < o.k;
        return j < o.j;
    }
};

// Exponential of the span of theta^k z_j, k < cutoff, as the coefficient
// list e_0..e_M.  Generators enter biggest-first; the pending evaluation
// values y_j = e_V(w_j) ride along and are updated with single q-th powers,
// which keeps every intermediate below |w_j| and the exponent ranges small.
std::vector<CElem> subspace_exp(const Lattice& lat, uint32_t cutoff, uint32_t M) {
    std::vector<GenOrder> order;
    for (uint32_t k = 0; k < cutoff; ++k)
        for (uint32_t j = 0; j < lat.rank(); ++j)
            order.push_back({lat.z[j].val() - QVal(int64_t(k)), k, j});
    std::sort(order.begin(), order.end());

    std::vector<CElem> y;
    y.reserve(order.size());
    for (const auto& gen : order)
        y.push_back(lat.z[gen.j] * CElem::theta_pow(*lat.fq, -int64_t(gen.k)));

    std::vector<CElem> beta{CElem::from_gf(GFElem::one(*lat.fq))};
    for (size_t g = 0; g < order.size(); ++g) {
        const CElem& u = y[g];
        if (u.zero_to_precision())
            throw std::domain_error("lattice_exp: generator theta^" +
                                    std::to_string(order[g].k) + "*z" +
                                    std::to_string(order[g].j + 1) +
                                    " is numerically dependent on earlier ones");
        CElem u1q = u.pow_int(lat.q - 1).invert();
        // e_{V'} = e_V - e_V^q / e_V(w)^(q-1); only e_0..e_M are kept
        std::vector<CElem> next;
        size_t keep = std::min<size_t>(beta.size() + 1, M + 1);
        for (size_t i = 0; i < keep; ++i) {
            CElem v = i < beta.size() ? beta[i] : CElem::exact_zero(*lat.fq);
            if (i >= 1 && !beta[i - 1].exactly_zero())
                v = v - beta[i - 1].frobenius(lat.q, 1) * u1q;
            next.push_back(v);
        }
        beta = std::move(next);
        for (size_t j = g + 1; j < order.size(); ++j)
            y[j] = y[j] - y[j].frobenius(lat.q, 1) * u1q;
    }
    beta.resize(std::min<size_t>(beta.size(), M + 1), CElem::exact_zero(*lat.fq));
    return beta;
}

}  // namespace

LatticeExpResult lattice_exp(const Lattice& lat, uint32_t M, int64_t slack_units,
                             uint32_t cutoff_start, uint32_t cutoff_cap) {
    check_admissible(lat);
    uint32_t cutoff = cutoff_start;
    if (cutoff == 0) {
        // valuation estimate: the first omitted layer moves e_1 by about
        // (q-1)*(cutoff + min val) theta-units
        QVal zmin = QVal::pos_inf();
        for (const auto& zj : lat.z) zmin = qmin(zmin, zj.val());
        int64_t base = zmin.finite() ? zmin.num / zmin.den : 0;
        cutoff = uint32_t(std::max<int64_t>(
            4, (series_budget() + 8) / int64_t(lat.q - 1) - base + 2));
    }
    std::vector<CElem> cur = subspace_exp(lat, cutoff, M);
    while (true) {
        std::vector<CElem> nxt = subspace_exp(lat, cutoff + 1, M);
        QVal worst = QVal::pos_inf();
        bool stable = true;
        for (uint32_t m = 0; m <= M && m < cur.size() && m < nxt.size(); ++m) {
            CElem diff = cur[m] - nxt[m];
            QVal dv = diff.val();
            worst = qmin(worst, dv);
            QVal floor = qmin(cur[m].prec_val(), nxt[m].prec_val()) - QVal(slack_units);
            if (dv < floor) stable = false;
        }
        if (stable) {
            LatticeExpResult out;
            out.E = ExpSeries{lat.q, std::move(nxt)};
            out.cutoff = cutoff + 1;
            out.last_move = worst;
            return out;
        }
        if (cutoff >= cutoff_cap)
            throw std::runtime_error(
                "lattice_exp: coefficients failed to stabilize at cutoff " +
                std::to_string(cutoff) + " (last move val " + worst.str() +
                "); the basis may not span a discrete lattice");
        cutoff *= 2;
        cur = subspace_exp(lat, cutoff, M);
    }
}

DrinfeldModule module_from_lattice(const Lattice& lat, const ExpSeries& E, QVal* residual) {
    uint32_t r = lat.rank();
    if (E.e.size() < r + 1)
        throw std::invalid_argument("module_from_lattice: exponential too short for the rank");
    DrinfeldModule mod;
    mod.q = lat.q;
    mod.fq = lat.fq;
    for (uint32_t m = 1; m <= r; ++m) {
        CElem den = CElem::theta_pow(*lat.fq, ipow64(lat.q, m)) - CElem::theta_pow(*lat.fq, 1);
        CElem num = E.e[m] * den;
        for (uint32_t i = 1; i < m; ++i)
            num = num - mod.g[i - 1] * E.e[m - i].frobenius(lat.q, int64_t(i));
        mod.g.push_back(num);
    }
    auto [gv, gfloor] = mod.g.back().val_or_floor();
    if (gfloor || gv > mod.g.back().prec_val() - QVal(8))
        throw std::domain_error("module_from_lattice: leading coefficient is numerically zero");
    if (residual) {
        QVal worst = QVal::pos_inf();
        for (uint32_t m = r + 1; m < E.e.size() && m <= r + 3; ++m) {
            CElem den = CElem::theta_pow(*lat.fq, ipow64(lat.q, m)) - CElem::theta_pow(*lat.fq, 1);
            CElem lhs = E.e[m] * den;
            for (uint32_t i = 1; i <= std::min(m, r); ++i)
                lhs = lhs - mod.g[i - 1] * E.e[m - i].frobenius(lat.q, int64_t(i));
            worst = qmin(worst, lhs.val());
        }
        *residual = worst;
    }
    return mod;
}

namespace {

// Largest valuation below which exp does not preserve valuations:
// val(e_m) + q^m v > v has to hold for every m >= 1.
QVal exp_preservation_bound(const ExpSeries& E) {
    QVal bound = QVal::neg_inf();
    for (size_t m = 1; m < E.e.size(); ++m) {
        if (E.e[m].zero_to_precision() && E.e[m].exactly_zero()) continue;
        auto [ev, efloor] = E.e[m].val_or_floor();
        (void)efloor;
        QVal b = (-ev).div(ipow64(E.q, uint32_t(m)) - 1);
        bound = qmax(bound, b);
    }
    return bound;
}

QVal agf_tail_bound(const ExpSeries& E, const QVal& zval, uint32_t T) {
    QVal zone = exp_preservation_bound(E);
    QVal tail = QVal::pos_inf();
    for (uint32_t i = T;; ++i) {
        QVal xv = zval + QVal(int64_t(i) + 1);
        if (xv > zone) {
            tail = qmin(tail, xv);  // valuation preserved from here on, increasing
            break;
        }
        QVal term = QVal::pos_inf();
        for (size_t m = 0; m < E.e.size(); ++m) {
            auto [ev, efloor] = E.e[m].val_or_floor();
            (void)efloor;
            term = qmin(term, ev + xv.scale(ipow64(E.q, uint32_t(m))));
        }
        tail = qmin(tail, term);
        if (i > T + 4096) throw std::logic_error("agf: tail certification did not terminate");
    }
    return tail;
}

}  // namespace

TateSeries agf(const ExpSeries& E, const CElem& z, uint32_t T) {
    TateSeries w;
    const GFField& f = z.field();
    for (uint32_t i = 0; i < T; ++i)
        w.c.push_back(exp_eval(E, z * CElem::theta_pow(f, -int64_t(i) - 1)));
    w.tail = agf_tail_bound(E, z.val(), T);
    return w;
}

TateSeries agf_pellarin(const ExpSeries& E, const CElem& z, uint32_t T) {
    TateSeries w;
    const GFField& f = z.field();
    for (uint32_t i = 0; i < T; ++i) {
        CElem acc = CElem::exact_zero(f);
        QVal skipped = QVal::pos_inf();
        // coefficient i sits near val(z)+i+1; terms far above its window
        // are folded into the precision instead of computed
        QVal window_top = z.val() + QVal(int64_t(i) + 1 + series_budget() + 8);
        for (size_t m = 0; m < E.e.size(); ++m) {
            if (E.e[m].exactly_zero()) continue;
            int64_t qm = ipow64(E.q, uint32_t(m));
            auto [ev, efloor] = E.e[m].val_or_floor();
            (void)efloor;
            QVal tv = ev + z.val().scale(qm) + QVal(qm * int64_t(i + 1));
            if (tv > window_top) {
                skipped = qmin(skipped, tv);
                continue;
            }
            acc = acc + E.e[m] * z.frobenius(E.q, int64_t(m)) *
                            CElem::theta_pow(f, -qm * int64_t(i + 1));
        }
        w.c.push_back(acc.capped(skipped));
    }
    w.tail = agf_tail_bound(E, z.val(), T);
    return w;
}

}  // namespace dmtk
