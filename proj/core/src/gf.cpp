#include "dmtk/gf.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dmtk {

namespace {

// Bootstrap polynomial arithmetic over GF(p) on raw digit vectors
// (low degree first, trailing zeros trimmed).  Only used to pick moduli
// and build field tables; everything later goes through GFField.
using PPoly = std::vector<uint8_t>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = uint8_t((r[i + j] + a[i] * b[j]) % p);
    ptrim(r);
    return r;
}

PPoly pmod(PPoly a, const PPoly& m, uint32_t p) {
    ptrim(a);
    uint32_t lead_inv = 1;
    for (uint32_t x = 1; x < p; ++x)
        if (x * m.back() % p == 1) lead_inv = x;
    while (a.size() >= m.size()) {
        uint32_t c = a.back() * lead_inv % p;
        size_t sh = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[sh + i] = uint8_t((a[sh + i] + p * p - c * m[i] % p) % p);
        ptrim(a);
    }
    return a;
}

PPoly ppowmod_x(uint64_t e, const PPoly& m, uint32_t p) {
    // x^e mod m
    PPoly r{1}, x{0, 1};
    x = pmod(x, m, p);
    while (e) {
        if (e & 1) r = pmod(pmul(r, x, p), m, p);
        x = pmod(pmul(x, x, p), m, p);
        e >>= 1;
    }
    return r;
}

PPoly pgcd(PPoly a, PPoly b, uint32_t p) {
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

bool irreducible(const PPoly& f, uint32_t p) {
    // Rabin test; f monic of degree k >= 1
    size_t k = f.size() - 1;
    uint64_t pk = 1;
    for (size_t i = 0; i < k; ++i) pk *= p;
    PPoly xq = ppowmod_x(pk, f, p);  // x^(p^k) mod f
    PPoly x = pmod(PPoly{0, 1}, f, p);
    if (xq != x) return false;
    for (size_t l = 2; l <= k; ++l) {
        if (k % l) continue;
        bool is_prime = true;
        for (size_t d = 2; d * d <= l; ++d)
            if (l % d == 0) is_prime = false;
        if (!is_prime) continue;
        uint64_t e = 1;
        for (size_t i = 0; i < k / l; ++i) e *= p;
        PPoly xe = ppowmod_x(e, f, p);
        PPoly diff = xe;
        diff.resize(std::max(diff.size(), size_t(2)), 0);
        diff[1] = uint8_t((diff[1] + p - 1) % p);
        ptrim(diff);
        PPoly g = pgcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

PPoly least_irreducible(uint32_t p, uint32_t k) {
    if (k == 1) return PPoly{0, 1};  // modulus x: GF(p) itself
    uint64_t bound = 1;
    for (uint32_t i = 0; i < k; ++i) bound *= p;
    for (uint64_t code = 0; code < bound; ++code) {
        PPoly f(k + 1, 0);
        uint64_t c = code;
        for (uint32_t i = 0; i < k; ++i) {
            f[i] = uint8_t(c % p);
            c /= p;
        }
        f[k] = 1;
        if (irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

uint64_t ipow(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

uint32_t GFField::add(uint32_t a, uint32_t b) const {
    if (p == 2) return a ^ b;
    uint32_t r = 0, m = 1;
    while (a || b) {
        r += (a % p + b % p) % p * m;
        a /= p;
        b /= p;
        m *= p;
    }
    return r;
}

uint32_t GFField::neg(uint32_t a) const {
    if (p == 2) return a;
    uint32_t r = 0, m = 1;
    while (a) {
        r += (p - a % p) % p * m;
        a /= p;
        m *= p;
    }
    return r;
}

uint32_t GFField::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t GFField::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("GF: inverse of zero");
    return expt_[(size - 1 - logt_[a]) % (size - 1)];
}

uint32_t GFField::pow(uint32_t a, uint64_t n) const {
    if (a == 0) return n == 0 ? scalar(1) : 0;
    return expt_[uint64_t(logt_[a]) * (n % (size - 1)) % (size - 1)];
}

uint32_t GFField::frob_p(uint32_t a, int64_t j) const {
    j %= int64_t(k);
    if (j < 0) j += k;
    for (int64_t i = 0; i < j; ++i) a = frob_[a];
    return a;
}

uint32_t GFField::scalar(int64_t v) const {
    v %= int64_t(p);
    if (v < 0) v += p;
    return uint32_t(v);
}

std::string GFField::show(uint32_t code, const std::string& gen) const {
    if (code == 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (uint32_t i = 0, c = code; c; ++i, c /= p) {
        uint32_t d = c % p;
        if (!d) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0)
            os << d;
        else {
            if (d != 1) os << d << "*";
            os << gen;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

void GFField::build() {
    size = uint32_t(ipow(p, k));
    modulus = least_irreducible(p, k);
    // multiplication of codes via digit vectors mod modulus
    auto mul_codes = [&](uint32_t a, uint32_t b) -> uint32_t {
        PPoly pa, pb;
        for (uint32_t c = a; c; c /= p) pa.push_back(uint8_t(c % p));
        for (uint32_t c = b; c; c /= p) pb.push_back(uint8_t(c % p));
        PPoly r = pmod(pmul(pa, pb, p), modulus, p);
        uint32_t code = 0;
        for (size_t i = r.size(); i-- > 0;) code = code * p + r[i];
        return code;
    };
    // find the code-least primitive element
    logt_.assign(size, -1);
    expt_.assign(size - 1, 0);
    for (uint32_t g = 1; g < size; ++g) {
        uint32_t x = scalar(1);
        uint32_t n = 0;
        bool ok = true;
        std::vector<int32_t> lt(size, -1);
        std::vector<uint32_t> et(size - 1, 0);
        do {
            if (lt[x] != -1) {
                ok = false;
                break;
            }
            lt[x] = int32_t(n);
            et[n] = x;
            x = mul_codes(x, g);
            ++n;
        } while (x != scalar(1));
        if (ok && n == size - 1) {
            logt_ = std::move(lt);
            expt_ = std::move(et);
            break;
        }
    }
    if (logt_[scalar(1)] != 0) throw std::logic_error("GF: no primitive element");
    frob_.assign(size, 0);
    for (uint32_t a = 0; a < size; ++a) frob_[a] = pow(a, p);
}

namespace {

struct Registry {
    std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<GFField>> fields;
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::vector<uint32_t>> embeds;
};

Registry& reg() {
    static Registry r;
    return r;
}

// Extend the generator image to the full embedding table.
std::vector<uint32_t> table_from_gen(const GFField& a, const GFField& c, uint32_t img) {
    std::vector<uint32_t> powers(a.k);
    uint32_t acc = c.scalar(1);
    for (uint32_t i = 0; i < a.k; ++i) {
        powers[i] = acc;
        acc = c.mul(acc, img);
    }
    std::vector<uint32_t> t(a.size, 0);
    for (uint32_t code = 0; code < a.size; ++code) {
        uint32_t v = 0, cc = code;
        for (uint32_t i = 0; i < a.k; ++i, cc /= a.p) {
            uint32_t d = cc % a.p;
            while (d--) v = c.add(v, powers[i]);
        }
        t[code] = v;
    }
    return t;
}

uint32_t eval_modulus(const GFField& a, const GFField& c, uint32_t x) {
    // a.modulus evaluated at x inside c
    uint32_t v = 0;
    for (size_t i = a.modulus.size(); i-- > 0;) {
        v = c.mul(v, x);
        uint32_t d = a.modulus[i];
        while (d--) v = c.add(v, c.scalar(1));
    }
    return v;
}

}  // namespace

const GFField& GFReg::field(uint32_t p, uint32_t k) {
    if (k == 0) throw std::invalid_argument("GF: degree must be positive");
    if (ipow(p, k) > 600000)
        throw std::invalid_argument("GF: field GF(" + std::to_string(p) + "^" +
                                    std::to_string(k) + ") exceeds the supported desk scale");
    auto& r = reg();
    auto key = std::make_pair(p, k);
    auto it = r.fields.find(key);
    if (it != r.fields.end()) return *it->second;
    auto f = std::make_unique<GFField>();
    f->p = p;
    f->k = k;
    f->build();
    auto [pos, _] = r.fields.emplace(key, std::move(f));
    return *pos->second;
}

const std::vector<uint32_t>& GFReg::embedding(uint32_t p, uint32_t ka, uint32_t kc) {
    if (kc % ka) throw std::invalid_argument("GF: no embedding unless degrees divide");
    auto& r = reg();
    auto key = std::make_tuple(p, ka, kc);
    auto it = r.embeds.find(key);
    if (it != r.embeds.end()) return it->second;

    const GFField& a = field(p, ka);
    const GFField& c = field(p, kc);
    std::vector<uint32_t> t;
    if (ka == kc) {
        t.resize(a.size);
        for (uint32_t i = 0; i < a.size; ++i) t[i] = i;
    } else if (ka == 1) {
        t.resize(p);
        for (uint32_t i = 0; i < p; ++i) t[i] = c.scalar(int64_t(i));
    } else {
        // Constrain by already-forced intermediate chains, so the lattice of
        // embeddings stays coherent.
        uint32_t forced = 0;
        bool have_forced = false;
        for (uint32_t kb = ka + 1; kb < kc; ++kb) {
            if (kb % ka || kc % kb) continue;
            uint32_t mid = embedding(p, ka, kb)[a.generator()];
            uint32_t img = embedding(p, kb, kc)[mid];
            if (have_forced && img != forced)
                throw std::logic_error("GF: incoherent embedding lattice (degree too rich)");
            forced = img;
            have_forced = true;
        }
        uint32_t img = 0;
        if (have_forced) {
            if (eval_modulus(a, c, forced) != 0)
                throw std::logic_error("GF: forced embedding image is not a root");
            img = forced;
        } else {
            bool found = false;
            for (uint32_t x = 0; x < c.size && !found; ++x)
                if (eval_modulus(a, c, x) == 0) {
                    img = x;
                    found = true;
                }
            if (!found) throw std::logic_error("GF: modulus has no root in extension");
        }
        t = table_from_gen(a, c, img);
    }
    auto [pos, _] = r.embeds.emplace(key, std::move(t));
    return pos->second;
}

uint32_t GFReg::embed(uint32_t p, uint32_t ka, uint32_t kc, uint32_t code) {
    return embedding(p, ka, kc)[code];
}

uint32_t GFReg::project(uint32_t p, uint32_t kc, uint32_t ka, uint32_t code) {
    const auto& t = embedding(p, ka, kc);
    for (uint32_t i = 0; i < t.size(); ++i)
        if (t[i] == code) return i;
    throw std::domain_error("GF: element does not lie in the requested subfield");
}

const GFField& gf_common(const GFField& a, const GFField& b) {
    if (a.p != b.p) throw std::invalid_argument("GF: mixed characteristics");
    uint32_t k = std::lcm(a.k, b.k);
    return GFReg::field(a.p, k);
}

GFElem GFElem::in_field(const GFField& g) const {
    if (f_ == &g) return *this;
    if (f_->p != g.p) throw std::invalid_argument("GF: mixed characteristics");
    if (g.k % f_->k == 0) return {&g, GFReg::embed(f_->p, f_->k, g.k, code_)};
    if (f_->k % g.k == 0) return {&g, GFReg::project(f_->p, f_->k, g.k, code_)};
    throw std::invalid_argument("GF: no embedding between the fields");
}

GFElem GFElem::operator+(const GFElem& o) const {
    const GFField& c = gf_common(*f_, *o.f_);
    return {&c, c.add(in_field(c).code_, o.in_field(c).code_)};
}

GFElem GFElem::operator-(const GFElem& o) const {
    const GFField& c = gf_common(*f_, *o.f_);
    return {&c, c.sub(in_field(c).code_, o.in_field(c).code_)};
}

GFElem GFElem::operator*(const GFElem& o) const {
    const GFField& c = gf_common(*f_, *o.f_);
    return {&c, c.mul(in_field(c).code_, o.in_field(c).code_)};
}

bool GFElem::operator==(const GFElem& o) const {
    if (f_ == o.f_) return code_ == o.code_;
    const GFField& c = gf_common(*f_, *o.f_);
    return in_field(c).code_ == o.in_field(c).code_;
}

}  // namespace dmtk
