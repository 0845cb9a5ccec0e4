#include "dmtk/gfpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace dmtk {

GFPoly::GFPoly(const GFField& f, std::vector<uint32_t> coeffs) : f_(&f), c_(std::move(coeffs)) {
    trim();
}

GFPoly GFPoly::monomial(const GFField& f, GFElem c, uint32_t deg) {
    GFPoly r(f);
    if (!c.is_zero()) {
        r.c_.assign(deg + 1, 0);
        r.c_[deg] = c.in_field(f).code();
    }
    return r;
}

GFPoly GFPoly::from_ints(const GFField& f, std::vector<int64_t> coeffs) {
    std::vector<uint32_t> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = f.scalar(coeffs[i]);
    return {f, std::move(c)};
}

void GFPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

GFPoly GFPoly::operator+(const GFPoly& o) const {
    GFPoly r(*f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = f_->add(coeff_code(i), o.coeff_code(i));
    r.trim();
    return r;
}

GFPoly GFPoly::operator-() const {
    GFPoly r(*f_);
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->neg(c_[i]);
    return r;
}

GFPoly GFPoly::operator-(const GFPoly& o) const { return *this + (-o); }

GFPoly GFPoly::operator*(const GFPoly& o) const {
    GFPoly r(*f_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j]) r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
    }
    r.trim();
    return r;
}

GFPoly GFPoly::shift(uint32_t n) const {
    if (is_zero()) return *this;
    GFPoly r(*f_);
    r.c_.assign(c_.size() + n, 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + n);
    return r;
}

GFPoly GFPoly::scaled(GFElem s) const {
    GFPoly r(*f_);
    uint32_t sc = s.in_field(*f_).code();
    if (!sc) return r;
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->mul(c_[i], sc);
    return r;
}

void GFPoly::divmod(const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r) {
    if (b.is_zero()) throw std::domain_error("GFPoly: division by zero");
    const GFField& f = *a.f_;
    q = GFPoly(f);
    r = a;
    uint32_t linv = f.inv(b.c_.back());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        uint32_t c = f.mul(r.c_.back(), linv);
        uint32_t sh = uint32_t(r.degree() - b.degree());
        if (q.c_.size() < sh + 1) q.c_.resize(sh + 1, 0);
        q.c_[sh] = f.add(q.c_[sh], c);
        for (size_t i = 0; i < b.c_.size(); ++i)
            r.c_[sh + i] = f.sub(r.c_[sh + i], f.mul(c, b.c_[i]));
        r.trim();
    }
    q.trim();
}

GFPoly GFPoly::mod(const GFPoly& m) const {
    GFPoly q(*f_), r(*f_);
    divmod(*this, m, q, r);
    return r;
}

GFPoly GFPoly::div_exact(const GFPoly& b) const {
    GFPoly q(*f_), r(*f_);
    divmod(*this, b, q, r);
    if (!r.is_zero()) throw std::domain_error("GFPoly: division is not exact");
    return q;
}

GFPoly GFPoly::gcd(GFPoly a, GFPoly b) {
    while (!b.is_zero()) {
        GFPoly r = a.mod(b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a.scaled(a.lead().inverse());
    return a;
}

GFPoly GFPoly::ext_gcd(const GFPoly& a, const GFPoly& b, GFPoly& u, GFPoly& v) {
    const GFField& f = *a.f_;
    GFPoly r0 = a, r1 = b;
    GFPoly u0 = one(f), u1 = zero(f), v0 = zero(f), v1 = one(f);
    while (!r1.is_zero()) {
        GFPoly q(f), r(f);
        divmod(r0, r1, q, r);
        GFPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (!r0.is_zero()) {
        GFElem li = r0.lead().inverse();
        r0 = r0.scaled(li);
        u0 = u0.scaled(li);
        v0 = v0.scaled(li);
    }
    u = u0;
    v = v0;
    return r0;
}

GFPoly GFPoly::pow(uint32_t n) const {
    GFPoly r = one(*f_), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

GFPoly GFPoly::pow_mod(uint64_t n, const GFPoly& m) const {
    GFPoly r = one(*f_), b = mod(m);
    while (n) {
        if (n & 1) r = (r * b).mod(m);
        b = (b * b).mod(m);
        n >>= 1;
    }
    return r;
}

GFElem GFPoly::eval(const GFElem& x) const {
    const GFField& g = gf_common(*f_, x.field());
    GFElem xe = x.in_field(g);
    GFElem v = GFElem::zero(g);
    for (size_t i = c_.size(); i-- > 0;)
        v = v * xe + GFElem(f_, c_[i]).in_field(g);
    return v;
}

GFPoly GFPoly::lift(const GFField& g) const {
    GFPoly r(g);
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = GFElem(f_, c_[i]).in_field(g).code();
    return r;
}

std::optional<GFPoly> GFPoly::project(const GFField& g) const {
    GFPoly r(g);
    r.c_.resize(c_.size());
    const auto& t = GFReg::embedding(f_->p, g.k, f_->k);
    for (size_t i = 0; i < c_.size(); ++i) {
        bool found = false;
        for (uint32_t v = 0; v < t.size(); ++v)
            if (t[v] == c_[i]) {
                r.c_[i] = v;
                found = true;
                break;
            }
        if (!found) return std::nullopt;
    }
    return r;
}

GFPoly GFPoly::frob_coeffs(int64_t pj) const {
    GFPoly r(*f_);
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->frob_p(c_[i], pj);
    return r;
}

bool GFPoly::is_irreducible() const {
    if (degree() < 1) return false;
    uint32_t k = uint32_t(degree());
    const GFField& f = *f_;
    GFPoly xp = x(f);
    // Rabin: x^(q^k) == x mod f, and gcd(x^(q^(k/l)) - x, f) == 1 for prime l | k
    auto xq_pow = [&](uint32_t e) {
        GFPoly r = xp;
        for (uint32_t i = 0; i < e; ++i) r = r.pow_mod(f.size, *this);
        return r;
    };
    if (xq_pow(k) != xp.mod(*this)) return false;
    for (uint32_t l = 2; l <= k; ++l) {
        if (k % l) continue;
        bool prime = true;
        for (uint32_t d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        GFPoly g = gcd(*this, xq_pow(k / l) - xp);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::string GFPoly::show(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = f_->show(c_[i]);
        bool unit = cs == "1";
        if (i == 0) {
            os << cs;
        } else {
            if (!unit) os << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

uint32_t lucas_binom(uint64_t i, uint64_t n, uint32_t p) {
    uint64_t r = 1;
    while (n || i) {
        uint64_t id = i % p, nd = n % p;
        if (nd > id) return 0;
        // binom(id, nd) < p^2; small Pascal walk
        uint64_t b = 1;
        for (uint64_t t = 0; t < nd; ++t) b = b * (id - t) / (t + 1);
        r = r * (b % p) % p;
        i /= p;
        n /= p;
    }
    return uint32_t(r);
}

GFPoly hyperderiv(const GFPoly& h, uint32_t n) {
    if (n == 0) return h;
    const GFField& f = h.field();
    if (h.degree() < int(n)) return GFPoly::zero(f);
    std::vector<uint32_t> c(h.degree() - n + 1, 0);
    for (size_t i = n; i <= size_t(h.degree()); ++i) {
        uint32_t b = lucas_binom(i, n, f.p);
        if (!b) continue;
        uint32_t v = h.coeff_code(i);
        uint32_t acc = 0;
        for (uint32_t t = 0; t < b; ++t) acc = f.add(acc, v);
        c[i - n] = acc;
    }
    return {f, std::move(c)};
}

std::vector<GFPoly> monic_irreducibles(const GFField& f, uint32_t deg) {
    std::vector<GFPoly> out;
    uint64_t bound = 1;
    for (uint32_t i = 0; i < deg; ++i) bound *= f.size;
    for (uint64_t code = 0; code < bound; ++code) {
        std::vector<uint32_t> c(deg + 1, 0);
        uint64_t cc = code;
        for (uint32_t i = 0; i < deg; ++i) {
            c[i] = uint32_t(cc % f.size);
            cc /= f.size;
        }
        c[deg] = f.scalar(1);
        GFPoly cand(f, std::move(c));
        if (deg == 1 || cand.is_irreducible()) out.push_back(cand);
    }
    return out;
}

std::vector<GFElem> prime_roots(const GFPoly& prime, uint32_t s) {
    if (!prime.is_monic()) throw std::invalid_argument("prime_roots: polynomial is not monic");
    uint32_t d = uint32_t(prime.degree());
    if (d >= 2 && !prime.is_irreducible())
        throw std::invalid_argument("prime_roots: polynomial is reducible");
    const GFField& base = prime.field();
    const GFField& ext = GFReg::field(base.p, base.k * d);
    GFElem first = GFElem::zero(ext);
    bool found = false;
    for (uint32_t code = 0; code < ext.size; ++code) {
        GFElem x(&ext, code);
        if (prime.eval(x).is_zero()) {
            first = x;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("prime_roots: no root in the splitting field");
    std::vector<GFElem> roots{first};
    for (uint32_t i = 1; i < d; ++i) roots.push_back(roots.back().frob_q(s, 1));
    if (roots.back().frob_q(s, 1) != roots.front())
        throw std::logic_error("prime_roots: conjugate cycle does not close");
    return roots;
}

BiPoly::BiPoly(const GFField& f, std::vector<GFPoly> coeffs) : f_(&f), c_(std::move(coeffs)) {
    trim();
}

void BiPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::from_first(const GFPoly& a) {
    BiPoly r(a.field());
    if (!a.is_zero()) r.c_ = {a};
    return r;
}

BiPoly BiPoly::from_second(const GFPoly& a) {
    BiPoly r(a.field());
    for (int i = 0; i <= a.degree(); ++i)
        r.c_.push_back(GFPoly(a.field(), {a.coeff_code(i)}));
    r.trim();
    return r;
}

GFPoly BiPoly::coeff(size_t i) const {
    return i < c_.size() ? c_[i] : GFPoly::zero(*f_);
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r(*f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), GFPoly::zero(*f_));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    BiPoly r(*f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), GFPoly::zero(*f_));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) - o.coeff(i);
    r.trim();
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r(*f_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, GFPoly::zero(*f_));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    r.trim();
    return r;
}

BiPoly BiPoly::mod_second(const GFPoly& m) const {
    if (!m.is_monic()) throw std::invalid_argument("BiPoly: modulus must be monic");
    BiPoly r = *this;
    uint32_t dm = uint32_t(m.degree());
    while (r.c_.size() > dm) {
        GFPoly lead = r.c_.back();
        size_t sh = r.c_.size() - 1 - dm;
        for (uint32_t i = 0; i <= dm; ++i) {
            GFPoly mi = GFPoly(*f_, {m.coeff_code(i)});
            r.c_[sh + i] = r.c_[sh + i] - lead * mi;
        }
        r.trim();
    }
    return r;
}

BiPoly BiPoly::pow(uint32_t n) const {
    BiPoly r = from_first(GFPoly::one(*f_)), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

BiPoly BiPoly::div_linear_second(const GFPoly& r0) const {
    // synthetic division by (T - r0(theta))
    BiPoly q(*f_);
    if (is_zero()) return q;
    q.c_.assign(c_.size() - 1, GFPoly::zero(*f_));
    GFPoly carry = GFPoly::zero(*f_);
    for (size_t i = c_.size(); i-- > 1;) {
        carry = coeff(i) + carry;
        q.c_[i - 1] = carry;
        carry = carry * r0;
    }
    if (coeff(0) + carry != GFPoly::zero(*f_))
        throw std::domain_error("BiPoly: not divisible by the linear factor");
    q.trim();
    return q;
}

GFPoly BiPoly::eval_second(const GFElem& t) const {
    const GFField& g = gf_common(*f_, t.field());
    GFPoly v = GFPoly::zero(g);
    GFPoly tp = GFPoly(g, {t.in_field(g).code()});
    for (size_t i = c_.size(); i-- > 0;) v = v * tp + c_[i].lift(g);
    return v;
}

bool BiPoly::operator==(const BiPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

std::string BiPoly::show(const std::string& var1, const std::string& var2) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].show(var1) << ")";
        if (i == 1) os << "*" << var2;
        if (i > 1) os << "*" << var2 << "^" << i;
    }
    return os.str();
}

}  // namespace dmtk
