#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmtk {

// Small finite fields GF(p^k) with log/antilog tables and a coherent lattice
// of subfield embeddings.
//
// Elements are identified by their code: the base-p digit packing
// sum c_i * p^i of the coordinate vector w.r.t. the power basis of the fixed
// modulus f_k.  Code order (an integer order) is the canonical element order
// used everywhere a "least" element is required.  Moduli are the
// code-least monic irreducibles, so every field and every embedding is
// reproducible across runs.
class GFField {
public:
    uint32_t p;                    // characteristic
    uint32_t k;                    // degree over GF(p)
    uint32_t size;                 // p^k
    std::vector<uint8_t> modulus;  // monic irreducible, length k+1

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return expt_[(logt_[a] + logt_[b]) % (size - 1)];
    }
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t n) const;
    // x -> x^(p^j), j may be any integer (the p-Frobenius has order k)
    uint32_t frob_p(uint32_t a, int64_t j) const;
    uint32_t scalar(int64_t v) const;  // image of v mod p
    uint32_t generator() const { return k == 1 ? 1 % p : p; }  // code of x

    std::string show(uint32_t code, const std::string& gen = "w") const;

private:
    friend class GFReg;
    std::vector<uint32_t> expt_;
    std::vector<int32_t> logt_;
    std::vector<uint32_t> frob_;  // x -> x^p
    void build();
};

// Registry of fields and embeddings; instances live for the process.
class GFReg {
public:
    static const GFField& field(uint32_t p, uint32_t k);
    // Embedding table GF(p^ka) -> GF(p^kc), ka | kc.  Tables are coherent:
    // whenever ka | kb | kc, embed(b->c) o embed(a->b) == embed(a->c).
    static const std::vector<uint32_t>& embedding(uint32_t p, uint32_t ka, uint32_t kc);
    static uint32_t embed(uint32_t p, uint32_t ka, uint32_t kc, uint32_t code);
    // Inverse of embed on its image; throws if code is not in the subfield.
    static uint32_t project(uint32_t p, uint32_t kc, uint32_t ka, uint32_t code);
};

// A field element tagged with its field.  Arithmetic between elements of
// different fields lifts both into GF(p^lcm) first.
class GFElem {
public:
    GFElem() : f_(nullptr), code_(0) {}
    GFElem(const GFField* f, uint32_t code) : f_(f), code_(code) {}

    static GFElem zero(const GFField& f) { return {&f, 0}; }
    static GFElem one(const GFField& f) { return {&f, f.scalar(1)}; }
    static GFElem scalar(const GFField& f, int64_t v) { return {&f, f.scalar(v)}; }

    const GFField& field() const { return *f_; }
    uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    GFElem in_field(const GFField& g) const;  // embed or project
    GFElem operator+(const GFElem& o) const;
    GFElem operator-(const GFElem& o) const;
    GFElem operator*(const GFElem& o) const;
    GFElem operator-() const { return {f_, f_->neg(code_)}; }
    GFElem inverse() const { return {f_, f_->inv(code_)}; }
    bool operator==(const GFElem& o) const;
    bool operator!=(const GFElem& o) const { return !(*this == o); }

    // x -> x^(q^j) for q = p^s; j may be negative (unique root).
    GFElem frob_q(uint32_t s, int64_t j) const {
        return {f_, f_->frob_p(code_, j * int64_t(s))};
    }

    std::string show(const std::string& gen = "w") const { return f_->show(code_, gen); }

private:
    const GFField* f_;
    uint32_t code_;
};

// Lifts a and b to their compositum; returns the common field.
const GFField& gf_common(const GFField& a, const GFField& b);

}  // namespace dmtk
