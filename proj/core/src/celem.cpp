#include "dmtk/celem.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dmtk {

namespace {
int64_t g_series_budget = 88;

int64_t sat_mul(int64_t a, int64_t pw) {
    __int128 r = __int128(a) * pw;
    if (r >= __int128(CElem::kPrecExact)) return CElem::kPrecExact;
    if (r <= -__int128(CElem::kPrecExact))
        throw std::overflow_error("CElem: exponent range exceeds desk scale");
    return int64_t(r);
}

uint32_t s_of_q(const GFField& f, uint32_t q) {
    uint32_t s = 0;
    uint64_t v = 1;
    while (v < q) {
        v *= f.p;
        ++s;
    }
    if (v != q) throw std::invalid_argument("CElem: q is not a power of the characteristic");
    return s == 0 ? 1 : s;
}
}  // namespace

int64_t series_budget() { return g_series_budget; }
void set_series_budget(int64_t units) { g_series_budget = std::max<int64_t>(units, 8); }

CElem::CElem() : f_(&GFReg::field(2, 1)), e_(1), prec_(kPrecExact) {}

CElem CElem::exact_zero(const GFField& f) {
    CElem x;
    x.f_ = &f;
    return x;
}

CElem CElem::zero_to_prec(const GFField& f, int64_t e, int64_t prec) {
    CElem x;
    x.f_ = &f;
    x.e_ = e;
    x.prec_ = prec;
    return x;
}

CElem CElem::from_gf(const GFElem& c) {
    CElem x;
    x.f_ = &c.field();
    if (!c.is_zero()) x.c_ = {{0, c.code()}};
    return x;
}

CElem CElem::scalar(const GFField& f, int64_t v) { return from_gf(GFElem::scalar(f, v)); }

CElem CElem::theta_pow(const GFField& f, int64_t num, int64_t den) {
    if (den < 1) throw std::invalid_argument("CElem: ramification must be positive");
    CElem x;
    x.f_ = &f;
    x.e_ = den;
    x.c_ = {{-num, f.scalar(1)}};
    x.normalize();
    return x;
}

CElem CElem::from_poly(const GFPoly& a) {
    CElem x;
    x.f_ = &a.field();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff_code(i)) x.c_.push_back({-int64_t(i), a.coeff_code(i)});
    return x;
}

CElem CElem::from_terms(const GFField& f, int64_t e, std::vector<Term> terms, int64_t prec) {
    CElem x;
    x.f_ = &f;
    x.e_ = e;
    x.prec_ = prec;
    x.c_ = std::move(terms);
    std::sort(x.c_.begin(), x.c_.end(), [](const Term& a, const Term& b) { return a.idx < b.idx; });
    x.normalize();
    return x;
}

namespace {
// ceil(a / b) for b > 0, exact for negative a as well
int64_t ceil_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if (a % b > 0) ++q;
    return q;
}
}  // namespace

void CElem::normalize() {
    size_t w = 0;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i].code != 0 && c_[i].idx < prec_) c_[w++] = c_[i];
    c_.resize(w);
    if (e_ > 1) {
        // keep ramification minimal; ceil(prec/g) claims no extra representable index
        int64_t g = e_;
        for (const auto& t : c_) g = std::gcd(g, t.idx < 0 ? -t.idx : t.idx);
        if (g > 1) {
            for (auto& t : c_) t.idx /= g;
            e_ /= g;
            if (prec_ < kPrecExact) prec_ = ceil_div(prec_, g);
        }
    }
}

QVal CElem::val() const {
    if (c_.empty()) return is_exact() ? QVal::pos_inf() : QVal(prec_, e_);
    return QVal(c_.front().idx, e_);
}

std::pair<QVal, bool> CElem::val_or_floor() const {
    if (c_.empty()) return {is_exact() ? QVal::pos_inf() : QVal(prec_, e_), true};
    return {QVal(c_.front().idx, e_), false};
}

GFElem CElem::lead_coeff() const {
    if (c_.empty()) return GFElem::zero(*f_);
    return {f_, c_.front().code};
}

GFElem CElem::coeff_at(const QVal& exponent) const {
    for (const auto& t : c_)
        if (QVal(t.idx, e_) == exponent) return {f_, t.code};
    return GFElem::zero(*f_);
}

CElem CElem::rebased(int64_t e2, const GFField& f2) const {
    if (e2 % e_) throw std::invalid_argument("CElem: rebase target must refine the ramification");
    int64_t k = e2 / e_;
    CElem r;
    r.f_ = &f2;
    r.e_ = e2;
    r.prec_ = prec_ >= kPrecExact ? kPrecExact : sat_mul(prec_, k);
    r.c_.reserve(c_.size());
    const bool same_field = (&f2 == f_);
    for (const auto& t : c_) {
        uint32_t code = same_field ? t.code : GFElem(f_, t.code).in_field(f2).code();
        if (code) r.c_.push_back({t.idx * k, code});
    }
    return r;
}

void CElem::common(const CElem& a, const CElem& b, CElem& ra, CElem& rb) {
    const GFField& f = gf_common(*a.f_, *b.f_);
    int64_t e = std::lcm(a.e_, b.e_);
    ra = a.rebased(e, f);
    rb = b.rebased(e, f);
}

CElem CElem::operator+(const CElem& o) const {
    CElem a, b;
    common(*this, o, a, b);
    CElem r;
    r.f_ = a.f_;
    r.e_ = a.e_;
    r.prec_ = std::min(a.prec_, b.prec_);
    r.c_.reserve(a.c_.size() + b.c_.size());
    size_t i = 0, j = 0;
    while (i < a.c_.size() || j < b.c_.size()) {
        if (j == b.c_.size() || (i < a.c_.size() && a.c_[i].idx < b.c_[j].idx)) {
            r.c_.push_back(a.c_[i++]);
        } else if (i == a.c_.size() || b.c_[j].idx < a.c_[i].idx) {
            r.c_.push_back(b.c_[j++]);
        } else {
            uint32_t s = r.f_->add(a.c_[i].code, b.c_[j].code);
            if (s) r.c_.push_back({a.c_[i].idx, s});
            ++i;
            ++j;
        }
    }
    r.normalize();
    return r;
}

CElem CElem::operator-() const {
    CElem r = *this;
    for (auto& t : r.c_) t.code = f_->neg(t.code);
    return r;
}

CElem CElem::operator-(const CElem& o) const { return *this + (-o); }

CElem CElem::operator*(const CElem& o) const {
    CElem a, b;
    common(*this, o, a, b);
    CElem r;
    r.f_ = a.f_;
    r.e_ = a.e_;
    // pessimistic propagation: the first unknown index of either factor,
    // shifted by the other factor's leading index
    int64_t prec = kPrecExact;
    if (a.prec_ < kPrecExact)
        prec = std::min(prec, b.c_.empty() ? (b.prec_ >= kPrecExact ? kPrecExact
                                                                    : a.prec_ + b.prec_)
                                           : a.prec_ + b.c_.front().idx);
    if (b.prec_ < kPrecExact)
        prec = std::min(prec, a.c_.empty() ? (a.prec_ >= kPrecExact ? prec : b.prec_ + a.prec_)
                                           : b.prec_ + a.c_.front().idx);
    r.prec_ = prec;
    if (a.c_.empty() || b.c_.empty()) {
        if (a.exactly_zero() || b.exactly_zero()) r.prec_ = kPrecExact;
        return r;
    }
    int64_t lo = a.c_.front().idx + b.c_.front().idx;
    int64_t hi = a.c_.back().idx + b.c_.back().idx;
    int64_t window = hi - lo + 1;
    if (window <= (1 << 20)) {
        std::vector<uint32_t> acc(size_t(window), 0);
        for (const auto& ta : a.c_) {
            if (ta.idx + b.c_.front().idx >= r.prec_) break;
            for (const auto& tb : b.c_) {
                int64_t k = ta.idx + tb.idx;
                if (k >= r.prec_) break;
                size_t pos = size_t(k - lo);
                acc[pos] = r.f_->add(acc[pos], r.f_->mul(ta.code, tb.code));
            }
        }
        for (size_t t = 0; t < acc.size(); ++t)
            if (acc[t]) r.c_.push_back({lo + int64_t(t), acc[t]});
    } else {
        std::vector<Term> prods;
        prods.reserve(a.c_.size() * b.c_.size());
        for (const auto& ta : a.c_)
            for (const auto& tb : b.c_) {
                int64_t k = ta.idx + tb.idx;
                if (k < r.prec_) prods.push_back({k, r.f_->mul(ta.code, tb.code)});
            }
        std::sort(prods.begin(), prods.end(),
                  [](const Term& x, const Term& y) { return x.idx < y.idx; });
        for (const auto& t : prods) {
            if (!r.c_.empty() && r.c_.back().idx == t.idx)
                r.c_.back().code = r.f_->add(r.c_.back().code, t.code);
            else
                r.c_.push_back(t);
        }
        size_t w = 0;
        for (size_t t = 0; t < r.c_.size(); ++t)
            if (r.c_[t].code) r.c_[w++] = r.c_[t];
        r.c_.resize(w);
    }
    r.normalize();
    return r;
}

CElem CElem::scaled(const GFElem& s) const {
    return *this * from_gf(s);
}

CElem CElem::invert() const {
    if (c_.empty())
        throw std::domain_error("CElem: division by (numerical) zero");
    int64_t v0 = c_.front().idx;
    int64_t rel = g_series_budget * e_;
    if (prec_ < kPrecExact) rel = std::min(rel, prec_ - v0);
    std::vector<uint32_t> a(size_t(rel), 0);
    for (const auto& t : c_) {
        if (t.idx - v0 >= rel) break;
        a[size_t(t.idx - v0)] = t.code;
    }
    std::vector<uint32_t> b(size_t(rel), 0);
    uint32_t a0inv = f_->inv(a[0]);
    b[0] = a0inv;
    for (int64_t k = 1; k < rel; ++k) {
        uint32_t s = 0;
        for (int64_t i = 1; i <= k; ++i)
            if (a[size_t(i)] && b[size_t(k - i)])
                s = f_->add(s, f_->mul(a[size_t(i)], b[size_t(k - i)]));
        b[size_t(k)] = f_->neg(f_->mul(a0inv, s));
    }
    CElem r;
    r.f_ = f_;
    r.e_ = e_;
    r.prec_ = -v0 + rel;
    for (int64_t k = 0; k < rel; ++k)
        if (b[size_t(k)]) r.c_.push_back({-v0 + k, b[size_t(k)]});
    r.normalize();
    return r;
}

CElem CElem::pow_int(uint32_t n) const {
    CElem r = from_gf(GFElem::one(*f_)), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        if (n >>= 1) b = b * b;
    }
    return r;
}

CElem CElem::frobenius(uint32_t q, int64_t j) const {
    uint32_t s = s_of_q(*f_, q);
    if (j == 0) return *this;
    CElem r = *this;
    if (j > 0) {
        int64_t pw = 1;
        bool sat = false;
        for (int64_t i = 0; i < j; ++i) {
            if (pw > kPrecExact / int64_t(q)) {
                sat = true;
                break;
            }
            pw *= q;
        }
        if (sat) {
            // q^j alone exceeds every representable window; sound only when
            // the element has positive valuation (the power is then far below
            // any precision floor)
            if (!c_.empty() && c_.front().idx <= 0)
                throw std::overflow_error("CElem: Frobenius power exceeds desk scale");
            return zero_to_prec(*f_, e_, kPrecExact - 1);
        }
        for (auto& t : r.c_) {
            t.idx = sat_mul(t.idx, pw);
            t.code = f_->frob_p(t.code, int64_t(s) * j);
        }
        r.prec_ = prec_ >= kPrecExact ? kPrecExact : sat_mul(prec_, pw);
        std::sort(r.c_.begin(), r.c_.end(),
                  [](const Term& x, const Term& y) { return x.idx < y.idx; });
        r.normalize();
        return r;
    }
    // inverse Frobenius, one q-th root at a time
    for (int64_t step = 0; step < -j; ++step) {
        bool divisible = true;
        for (const auto& t : r.c_)
            if (t.idx % int64_t(q)) divisible = false;
        if (divisible) {
            for (auto& t : r.c_) t.idx /= int64_t(q);
            if (r.prec_ < kPrecExact) r.prec_ = ceil_div(r.prec_, int64_t(q));
        } else {
            r.e_ *= int64_t(q);  // indices and prec keep their numerals
        }
        for (auto& t : r.c_) t.code = f_->frob_p(t.code, -int64_t(s));
    }
    r.normalize();
    return r;
}

CElem CElem::capped(const QVal& bound) const {
    if (bound.is_pos_inf()) return *this;
    if (bound.is_neg_inf()) return zero_to_prec(*f_, e_, -(kPrecExact - 1));
    // knownness below `bound` theta-units: indices < ceil(bound * e)
    __int128 num = __int128(bound.num) * e_;
    __int128 qq = num / bound.den;
    if (num % bound.den > 0) ++qq;
    int64_t p = int64_t(qq);
    CElem r = *this;
    r.prec_ = std::min(prec_, p);
    r.normalize();
    return r;
}

std::string CElem::show(uint32_t max_terms) const {
    if (c_.empty()) {
        if (is_exact()) return "0";
        return "O(theta^-" + QVal(prec_, e_).str() + ")";
    }
    std::ostringstream os;
    uint32_t shown = 0;
    for (const auto& t : c_) {
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        if (shown) os << " + ";
        std::string cs = f_->show(t.code);
        QVal ex(-t.idx, e_);
        if (ex == QVal(0)) {
            os << cs;
        } else {
            if (cs != "1")
                os << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << "*";
            os << "theta^" << (ex.den == 1 ? ex.str() : "(" + ex.str() + ")");
        }
        ++shown;
    }
    if (!is_exact()) os << " + O(theta^-" << QVal(prec_, e_).str() << ")";
    return os.str();
}

QVal residual_val(const CElem& x, const CElem& y) { return (x - y).val(); }

}  // namespace dmtk
