#include "dmtk/padic.hpp"

#include <sstream>
#include <stdexcept>

namespace dmtk {

PadicInt::PadicInt(GFPoly prime, uint32_t level, std::vector<GFPoly> digits)
    : prime_(std::move(prime)), level_(level), digits_(std::move(digits)) {
    if (digits_.size() != level_) digits_.resize(level_, GFPoly::zero(prime_.field()));
    for (auto& d : digits_)
        if (d.degree() >= prime_.degree())
            throw std::invalid_argument("PadicInt: digit degree out of range");
}

PadicInt PadicInt::expand(const GFPoly& a, const GFPoly& prime, uint32_t level) {
    if (!prime.is_monic() || (prime.degree() > 1 && !prime.is_irreducible()))
        throw std::invalid_argument("PadicInt: prime must be monic irreducible");
    std::vector<GFPoly> d;
    GFPoly v = a;
    for (uint32_t i = 0; i < level; ++i) {
        GFPoly q(prime.field()), r(prime.field());
        GFPoly::divmod(v, prime, q, r);
        d.push_back(r);
        v = q;
    }
    PadicInt out;
    out.prime_ = prime;
    out.level_ = level;
    out.digits_ = std::move(d);
    return out;
}

PadicInt PadicInt::zero(const GFPoly& prime, uint32_t level) {
    return expand(GFPoly::zero(prime.field()), prime, level);
}

PadicInt PadicInt::one(const GFPoly& prime, uint32_t level) {
    return expand(GFPoly::one(prime.field()), prime, level);
}

GFPoly PadicInt::value() const {
    GFPoly v = GFPoly::zero(prime_.field());
    for (size_t i = digits_.size(); i-- > 0;) v = v * prime_ + digits_[i];
    return v;
}

GFPoly PadicInt::reduce(uint32_t m) const {
    if (m > level_) throw std::out_of_range("PadicInt: reduction level exceeds stored level");
    GFPoly v = GFPoly::zero(prime_.field());
    for (size_t i = m; i-- > 0;) v = v * prime_ + digits_[i];
    return v;
}

PadicInt PadicInt::truncate(uint32_t m) const {
    if (m > level_) throw std::out_of_range("PadicInt: truncation level exceeds stored level");
    return PadicInt(prime_, m, {digits_.begin(), digits_.begin() + m});
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
    return expand(value() + o.value(), prime_, std::min(level_, o.level_));
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
    return expand(value() - o.value(), prime_, std::min(level_, o.level_));
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
    return expand(value() * o.value(), prime_, std::min(level_, o.level_));
}

bool PadicInt::operator==(const PadicInt& o) const {
    if (level_ != o.level_) return false;
    for (uint32_t i = 0; i < level_; ++i)
        if (digits_[i] != o.digits_[i]) return false;
    return true;
}

bool PadicInt::is_zero() const {
    for (const auto& d : digits_)
        if (!d.is_zero()) return false;
    return true;
}

PadicInt PadicInt::inverse() const {
    if (!is_unit()) throw std::domain_error("PadicInt: not a unit (divisible by the prime)");
    GFPoly pm = prime_.pow(level_);
    GFPoly u(prime_.field()), v(prime_.field());
    GFPoly g = GFPoly::ext_gcd(value().mod(pm), pm, u, v);
    if (g.degree() != 0) throw std::logic_error("PadicInt: gcd with prime power not trivial");
    return expand(u.scaled(g.lead().inverse()).mod(pm), prime_, level_);
}

std::string PadicInt::show(const std::string& var) const {
    std::ostringstream os;
    os << "(";
    for (uint32_t i = 0; i < level_; ++i) {
        if (i) os << "; ";
        os << digits_[i].show(var);
    }
    os << ")";
    return os.str();
}

}  // namespace dmtk
