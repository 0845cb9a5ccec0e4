#include "dmtk/tate.hpp"

#include <sstream>
#include <stdexcept>

namespace dmtk {

TateSeries TateSeries::from_poly(const GFPoly& a) {
    TateSeries h;
    for (int i = 0; i <= a.degree(); ++i)
        h.c.push_back(CElem::from_gf(a.coeff(size_t(i))));
    return h;
}

TateSeries TateSeries::constant(const CElem& x) {
    TateSeries h;
    h.c.push_back(x);
    return h;
}

QVal TateSeries::min_stored_val() const {
    QVal m = QVal::pos_inf();
    for (const auto& x : c) m = qmin(m, x.val());
    return m;
}

TateSeries TateSeries::operator+(const TateSeries& o) const {
    TateSeries r;
    size_t len = std::max(c.size(), o.c.size());
    r.tail = qmin(tail, o.tail);
    for (size_t i = 0; i < len; ++i) {
        if (i < c.size() && i < o.c.size())
            r.c.push_back(c[i] + o.c[i]);
        else if (i < c.size())
            r.c.push_back(c[i].capped(o.tail));  // the other side is only tail-bounded here
        else
            r.c.push_back(o.c[i].capped(tail));
    }
    return r;
}

TateSeries TateSeries::operator-(const TateSeries& o) const {
    TateSeries neg = o;
    for (auto& x : neg.c) x = -x;
    return *this + neg;
}

TateSeries TateSeries::operator*(const TateSeries& o) const {
    TateSeries r;
    if (c.empty() || o.c.empty()) {
        r.tail = min_val_with_tail() + o.min_val_with_tail();
        return r;
    }
    size_t la = c.size(), lb = o.c.size();
    size_t len = la + lb - 1;
    QVal vma = min_val_with_tail(), vmb = o.min_val_with_tail();
    for (size_t k = 0; k < len; ++k) {
        CElem acc = CElem::exact_zero(c[0].field());
        for (size_t i = k >= lb ? k - lb + 1 : 0; i < la && i <= k; ++i)
            acc = acc + c[i] * o.c[k - i];
        // terms with one index beyond a factor's truncation are tail-bounded
        QVal cap = QVal::pos_inf();
        if (int64_t(k) >= int64_t(la)) cap = qmin(cap, tail + vmb);
        if (int64_t(k) >= int64_t(lb)) cap = qmin(cap, o.tail + vma);
        r.c.push_back(acc.capped(cap));
    }
    r.tail = qmin(tail + vmb, o.tail + vma);
    return r;
}

TateSeries TateSeries::scaled(const CElem& s) const {
    TateSeries r;
    auto [sv, floor] = s.val_or_floor();
    (void)floor;
    for (const auto& x : c) r.c.push_back(x * s);
    r.tail = tail + sv;
    return r;
}

TateSeries TateSeries::shifted(uint32_t k) const {
    TateSeries r;
    if (c.empty()) {
        r.tail = tail;
        return r;
    }
    r.c.assign(k, CElem::exact_zero(c[0].field()));
    r.c.insert(r.c.end(), c.begin(), c.end());
    r.tail = tail;
    return r;
}

TateSeries TateSeries::truncated(size_t len) const {
    TateSeries r;
    r.c.assign(c.begin(), c.begin() + std::min(len, c.size()));
    r.tail = tail;
    if (len < c.size())
        for (size_t i = len; i < c.size(); ++i) r.tail = qmin(r.tail, c[i].val());
    return r;
}

std::string TateSeries::show(uint32_t max_terms) const {
    std::ostringstream os;
    uint32_t shown = 0;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].exactly_zero()) continue;
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        if (!first) os << " + ";
        first = false;
        os << "(" << c[i].show(3) << ")";
        if (i == 1) os << "*t";
        if (i > 1) os << "*t^" << i;
        ++shown;
    }
    if (first) os << "0";
    if (tail.finite()) os << "  [tail val >= " << tail.str() << "]";
    return os.str();
}

TateSeries twist(const TateSeries& h, uint32_t q, int64_t j) {
    TateSeries r;
    for (const auto& x : h.c) r.c.push_back(x.frobenius(q, j));
    if (h.tail.finite()) {
        int64_t pw = 1;
        for (int64_t i = 0; i < (j < 0 ? -j : j); ++i) pw *= int64_t(q);
        r.tail = j >= 0 ? h.tail.scale(pw) : h.tail.div(pw);
    }
    return r;
}

TateSeries hyperderiv(const TateSeries& h, uint32_t n) {
    if (n == 0) return h;
    TateSeries r;
    r.tail = h.tail;
    if (h.c.size() <= n) return r;
    const GFField& fp = GFReg::field(h.c[0].field().p, 1);
    for (size_t i = n; i < h.c.size(); ++i) {
        uint32_t bin = lucas_binom(i, n, fp.p);
        r.c.push_back(h.c[i].scaled(GFElem::scalar(fp, bin)));
    }
    return r;
}

CElem eval(const TateSeries& h, const CElem& z) {
    auto [zv, zfloor] = z.val_or_floor();
    (void)zfloor;
    if (zv < QVal(0)) throw std::domain_error("eval: point lies outside the closed unit disc");
    if (h.c.empty()) {
        CElem r = CElem::exact_zero(z.field());
        return r.capped(h.tail);
    }
    CElem acc = CElem::exact_zero(h.c[0].field());
    for (size_t i = h.c.size(); i-- > 0;) acc = acc * z + h.c[i];
    if (h.tail.finite()) acc = acc.capped(h.tail + zv.scale(int64_t(h.c.size())));
    return acc;
}

RootSystem RootSystem::make(const GFPoly& prime, uint32_t q) {
    RootSystem rs;
    rs.prime = prime;
    rs.q = q;
    uint32_t s = 0;
    for (uint64_t v = 1; v < q; v *= prime.field().p) ++s;
    rs.s = s ? s : 1;
    rs.d = uint32_t(prime.degree());
    rs.roots = prime_roots(prime, rs.s);
    rs.ext = &rs.roots[0].field();
    // invert the d x d Vandermonde (roots[k]^l) over the splitting field
    uint32_t d = rs.d;
    const GFField& F = *rs.ext;
    std::vector<std::vector<GFElem>> m(d, std::vector<GFElem>(2 * d, GFElem::zero(F)));
    for (uint32_t k = 0; k < d; ++k) {
        GFElem pw = GFElem::one(F);
        for (uint32_t l = 0; l < d; ++l) {
            m[k][l] = pw;
            pw = pw * rs.roots[k].in_field(F);
        }
        m[k][d + k] = GFElem::one(F);
    }
    for (uint32_t col = 0; col < d; ++col) {
        uint32_t piv = col;
        while (piv < d && m[piv][col].is_zero()) ++piv;
        if (piv == d) throw std::logic_error("RootSystem: singular Vandermonde");
        std::swap(m[col], m[piv]);
        GFElem inv = m[col][col].inverse();
        for (uint32_t j = 0; j < 2 * d; ++j) m[col][j] = m[col][j] * inv;
        for (uint32_t row = 0; row < d; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            GFElem c = m[row][col];
            for (uint32_t j = 0; j < 2 * d; ++j) m[row][j] = m[row][j] - c * m[col][j];
        }
    }
    rs.vinv.assign(d, std::vector<GFElem>(d, GFElem::zero(F)));
    for (uint32_t l = 0; l < d; ++l)
        for (uint32_t k = 0; k < d; ++k) rs.vinv[l][k] = m[l][d + k];
    return rs;
}

std::vector<CElem> coeffs_at_roots(const TateSeries& h, const RootSystem& rs) {
    std::vector<CElem> vals;
    for (uint32_t k = 0; k < rs.d; ++k)
        vals.push_back(eval(h, CElem::from_gf(rs.roots[k])));
    std::vector<CElem> out;
    for (uint32_t l = 0; l < rs.d; ++l) {
        CElem acc = CElem::exact_zero(*rs.ext);
        for (uint32_t k = 0; k < rs.d; ++k) acc = acc + vals[k].scaled(rs.vinv[l][k]);
        out.push_back(acc);
    }
    return out;
}

CElem resum_at_root(const std::vector<CElem>& f, const RootSystem& rs, int64_t k) {
    CElem z = CElem::from_gf(rs.root(k));
    CElem acc = CElem::exact_zero(*rs.ext);
    for (size_t l = f.size(); l-- > 0;) acc = acc * z + f[l];
    return acc;
}

XSeries XSeries::operator+(const XSeries& o) const {
    XSeries r;
    size_t len = std::min(c.size(), o.c.size());
    for (size_t i = 0; i < len; ++i) r.c.push_back(c[i] + o.c[i]);
    return r;
}

XSeries XSeries::operator-(const XSeries& o) const {
    XSeries r;
    size_t len = std::min(c.size(), o.c.size());
    for (size_t i = 0; i < len; ++i) r.c.push_back(c[i] - o.c[i]);
    return r;
}

XSeries XSeries::operator*(const XSeries& o) const {
    XSeries r;
    if (c.empty() || o.c.empty()) return r;
    size_t len = std::min(c.size(), o.c.size());
    for (size_t k = 0; k < len; ++k) {
        CElem acc = CElem::exact_zero(c[0].field());
        for (size_t i = 0; i <= k; ++i) acc = acc + c[i] * o.c[k - i];
        r.c.push_back(acc);
    }
    return r;
}

XSeries XSeries::inverse() const {
    if (c.empty()) throw std::domain_error("XSeries: empty series");
    XSeries r;
    CElem a0i = c[0].invert();
    r.c.push_back(a0i);
    for (size_t k = 1; k < c.size(); ++k) {
        CElem s = CElem::exact_zero(c[0].field());
        for (size_t i = 1; i <= k; ++i) s = s + c[i] * r.c[k - i];
        r.c.push_back(-(a0i * s));
    }
    return r;
}

XSeries XSeries::frob(uint32_t q, int64_t j) const {
    XSeries r;
    for (const auto& x : c) r.c.push_back(x.frobenius(q, j));
    return r;
}

QVal XSeries::min_stored_val() const {
    QVal m = QVal::pos_inf();
    for (const auto& x : c) m = qmin(m, x.val());
    return m;
}

XSeries taylor_at(const TateSeries& h, const CElem& z, uint32_t mx) {
    XSeries r;
    for (uint32_t n = 0; n < mx; ++n) r.c.push_back(eval(hyperderiv(h, n), z));
    return r;
}

GFXSeries GFXSeries::zero(const GFField& f, size_t len) {
    GFXSeries r;
    r.f = &f;
    r.c.assign(len, 0);
    return r;
}

GFXSeries GFXSeries::one(const GFField& f, size_t len) {
    GFXSeries r = zero(f, len);
    if (len) r.c[0] = f.scalar(1);
    return r;
}

GFXSeries GFXSeries::operator+(const GFXSeries& o) const {
    GFXSeries r = zero(*f, std::min(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f->add(c[i], o.c[i]);
    return r;
}

GFXSeries GFXSeries::operator-(const GFXSeries& o) const {
    GFXSeries r = zero(*f, std::min(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f->sub(c[i], o.c[i]);
    return r;
}

GFXSeries GFXSeries::operator*(const GFXSeries& o) const {
    GFXSeries r = zero(*f, std::min(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (!c[i]) continue;
        for (size_t j = 0; i + j < r.c.size(); ++j)
            if (o.c[j]) r.c[i + j] = f->add(r.c[i + j], f->mul(c[i], o.c[j]));
    }
    return r;
}

GFXSeries GFXSeries::inverse() const {
    if (c.empty() || !c[0]) throw std::domain_error("GFXSeries: not invertible");
    GFXSeries r = zero(*f, c.size());
    uint32_t a0i = f->inv(c[0]);
    r.c[0] = a0i;
    for (size_t k = 1; k < c.size(); ++k) {
        uint32_t s = 0;
        for (size_t i = 1; i <= k; ++i)
            if (c[i] && r.c[k - i]) s = f->add(s, f->mul(c[i], r.c[k - i]));
        r.c[k] = f->neg(f->mul(a0i, s));
    }
    return r;
}

GFXSeries GFXSeries::frob_q(uint32_t s, int64_t j) const {
    GFXSeries r = *this;
    for (auto& x : r.c) x = f->frob_p(x, int64_t(s) * j);
    return r;
}

GFXSeries GFXSeries::truncated(size_t len) const {
    GFXSeries r;
    r.f = f;
    r.c.assign(c.begin(), c.begin() + std::min(len, c.size()));
    return r;
}

size_t GFXSeries::x_val() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) return i;
    return c.size();
}

XSeries GFXSeries::as_xseries() const {
    XSeries r;
    for (uint32_t code : c) r.c.push_back(CElem::from_gf(GFElem(f, code)));
    return r;
}

GFXSeries poly_at_shift(const GFPoly& a, const GFElem& zeta, size_t mx) {
    const GFField& F = gf_common(a.field(), zeta.field());
    GFXSeries acc = GFXSeries::zero(F, mx);
    if (mx == 0) return acc;
    GFXSeries base = GFXSeries::zero(F, mx);  // zeta + X
    base.c[0] = zeta.in_field(F).code();
    if (mx > 1) base.c[1] = F.scalar(1);
    for (int i = a.degree(); i >= 0; --i) {
        acc = acc * base;
        acc.c[0] = F.add(acc.c[0], a.coeff(size_t(i)).in_field(F).code());
    }
    return acc;
}

GFXSeries padic_taylor(const PadicInt& a, const RootSystem& rs, size_t root_idx, size_t mx) {
    if (mx < size_t(rs.d) * a.level())
        throw std::invalid_argument("padic_taylor: X-truncation too short for the stored level");
    const GFElem& zeta = rs.roots[root_idx];
    GFXSeries P = poly_at_shift(rs.prime, zeta, mx);
    GFXSeries acc = GFXSeries::zero(*rs.ext, mx);
    GFXSeries ppow = GFXSeries::one(*rs.ext, mx);
    for (uint32_t u = 0; u < a.level(); ++u) {
        acc = acc + poly_at_shift(a.digit(u), zeta, mx) * ppow;
        ppow = ppow * P;
    }
    return acc;
}

PadicInt padic_from_taylor(const GFXSeries& y, const RootSystem& rs, uint32_t level) {
    if (y.length() < size_t(rs.d) * level)
        throw std::invalid_argument("padic_from_taylor: X-truncation too short for the level");
    const GFField& F = *rs.ext;
    const GFField& base = rs.prime.field();
    GFXSeries P = poly_at_shift(rs.prime, rs.roots[0], y.length());
    // P has X-valuation exactly 1; divide by the unit part after shifting
    GFXSeries punit = GFXSeries::zero(F, y.length());
    for (size_t i = 1; i < P.length(); ++i) punit.c[i - 1] = P.c[i];
    GFXSeries punit_inv = punit.inverse();
    GFXSeries cur = y;
    std::vector<GFPoly> digits;
    for (uint32_t u = 0; u < level; ++u) {
        // constant Taylor coefficient determines the digit through the
        // conjugate value vector (digits have F_q coefficients)
        GFElem y0(&F, cur.c.empty() ? 0 : cur.c[0]);
        std::vector<GFElem> conj(rs.d, GFElem::zero(F));
        for (uint32_t k = 0; k < rs.d; ++k) conj[k] = y0.frob_q(rs.s, int64_t(k));
        GFPoly digit = GFPoly::zero(base);
        for (uint32_t l = 0; l < rs.d; ++l) {
            GFElem cl = GFElem::zero(F);
            for (uint32_t k = 0; k < rs.d; ++k) cl = cl + rs.vinv[l][k] * conj[k];
            digit = digit + GFPoly::monomial(base, cl.in_field(base), l);
        }
        digits.push_back(digit);
        cur = cur - poly_at_shift(digit, rs.roots[0], cur.length());
        if (cur.x_val() < 1)
            throw std::domain_error("padic_from_taylor: series is not in the image");
        GFXSeries shiftd = GFXSeries::zero(F, cur.length() - 1);
        for (size_t i = 1; i < cur.length(); ++i) shiftd.c[i - 1] = cur.c[i];
        cur = shiftd * punit_inv.truncated(shiftd.length());
    }
    return PadicInt(rs.prime, level, std::move(digits));
}

TateBands taylor_bands(const TateSeries& h, uint32_t n) {
    TateBands r;
    for (uint32_t k = 0; k < n; ++k) r.b.push_back(hyperderiv(h, k));
    return r;
}

TateBands TateBands::mul(const TateBands& o) const {
    TateBands r;
    size_t n = std::min(b.size(), o.b.size());
    for (size_t k = 0; k < n; ++k) {
        TateSeries acc = b[0] * o.b[k];
        for (size_t i = 1; i <= k; ++i) acc = acc + b[i] * o.b[k - i];
        r.b.push_back(acc);
    }
    return r;
}

std::vector<std::vector<CElem>> bands_matrix_at(const TateBands& bands, const CElem& z) {
    size_t n = bands.b.size();
    std::vector<CElem> ev;
    for (const auto& h : bands.b) ev.push_back(eval(h, z));
    std::vector<std::vector<CElem>> m(n, std::vector<CElem>(n, CElem::exact_zero(z.field())));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) m[i][j] = ev[j - i];
    return m;
}

std::vector<GFPoly> poly_taylor_bands(const GFPoly& h, uint32_t n) {
    std::vector<GFPoly> r;
    for (uint32_t k = 0; k < n; ++k) r.push_back(hyperderiv(h, k));
    return r;
}

std::vector<GFPoly> poly_bands_mul(const std::vector<GFPoly>& a, const std::vector<GFPoly>& b) {
    size_t n = std::min(a.size(), b.size());
    std::vector<GFPoly> r;
    for (size_t k = 0; k < n; ++k) {
        GFPoly acc = a[0] * b[k];
        for (size_t i = 1; i <= k; ++i) acc = acc + a[i] * b[k - i];
        r.push_back(acc);
    }
    return r;
}

}  // namespace dmtk
