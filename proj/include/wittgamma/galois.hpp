#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittgamma/zarith.hpp"

namespace wg {

// F_{p^r} presented as F_p[x]/(F) with F the fixed monic irreducible from the
// built-in table; the same integer-coefficient F defines GR(p^n, r) at every
// level n.
struct FieldSpec {
    uint32_t p = 2;
    uint32_t r = 1;
    std::vector<uint32_t> modulus;  // monic, degree r, coeffs in [0, p)

    uint64_t q() const { return pow_u64(p, r); }
    bool operator==(const FieldSpec& o) const { return p == o.p && r == o.r; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }
};

// Table lookup; throws if (p, r) is not tabulated.
FieldSpec field_spec(uint32_t p, uint32_t r);
bool field_spec_known(uint32_t p, uint32_t r);
std::vector<std::pair<uint32_t, uint32_t>> field_spec_table_keys();

// An element of the Galois ring W_n(F_{p^r}) = GR(p^n, r), stored as the
// canonical residue: r coefficients in [0, p^n).
class GRElem {
  public:
    GRElem() : p_(2), r_(1), n_(1), c_(1, 0) {}
    GRElem(const FieldSpec& fs, uint32_t level)
        : p_(fs.p), r_(fs.r), n_(level), c_(fs.r, 0) {}
    GRElem(uint32_t p, uint32_t r, uint32_t level, std::vector<uint64_t> coeffs);

    static GRElem scalar(const FieldSpec& fs, uint32_t level, uint64_t value);
    static GRElem zero(const FieldSpec& fs, uint32_t level) { return GRElem(fs, level); }
    static GRElem one(const FieldSpec& fs, uint32_t level) { return scalar(fs, level, 1); }
    static GRElem gen(const FieldSpec& fs, uint32_t level);  // class of x

    uint32_t p() const { return p_; }
    uint32_t r() const { return r_; }
    uint32_t level() const { return n_; }
    uint64_t modulus() const { return pow_u64(p_, n_); }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    FieldSpec spec() const;

    bool is_zero() const;
    bool is_unit() const;  // nonzero mod p
    bool operator==(const GRElem& o) const;
    bool operator!=(const GRElem& o) const { return !(*this == o); }
    bool operator<(const GRElem& o) const;  // lexicographic; for ordered maps

    GRElem operator+(const GRElem& o) const;
    GRElem operator-(const GRElem& o) const;
    GRElem operator-() const;
    GRElem operator*(const GRElem& o) const;
    GRElem& operator+=(const GRElem& o) { return *this = *this + o; }
    GRElem& operator-=(const GRElem& o) { return *this = *this - o; }
    GRElem& operator*=(const GRElem& o) { return *this = *this * o; }

    GRElem mul_scalar(uint64_t s) const;
    GRElem mul_big(const bigint& s) const;
    GRElem pow(uint64_t e) const;
    GRElem inv() const;  // unit inverse, by Hensel lifting of the residue inverse

    // min over coefficients of v_p; VP_INF for 0.
    uint32_t valuation() const;
    // exact division by p^j (requires valuation() >= j); result at level() - j
    GRElem div_pow_p(uint32_t j) const;
    // canonical quotient at the same level: coefficients divided by p^j
    GRElem div_pow_p_same_level(uint32_t j) const;

    GRElem reduce(uint32_t level) const;           // to a lower (or equal) level
    GRElem lift(uint32_t level) const;             // canonical lift upward
    GRElem residue() const { return reduce(1); }   // image in F_q

    // Frobenius digit expansion a = sum tau(d_i) p^i; digits live in F_q.
    std::vector<GRElem> teich_digits() const;
    GRElem frob_lift() const;                      // the ring automorphism frob
    GRElem frob_lift_iter(uint32_t s) const;

    std::string str() const;

  private:
    uint32_t p_, r_, n_;
    std::vector<uint64_t> c_;
    void normalize();
    void check_compat(const GRElem& o) const;
};

// Teichmuller representative of x in F_q, lifted to level n.
GRElem teichmuller(const GRElem& x_residue, uint32_t n);

// tau_bar_n: the lift-independent law x -> (lift of x)^{p^n}, from level m to
// level m+n.
GRElem tau_bar(const GRElem& x, uint32_t n);

// All q elements of the residue field, in a fixed enumeration order.
std::vector<GRElem> field_elements(const FieldSpec& fs);

// All p^{rn} elements of GR(p^n, r) (desk scale only).
std::vector<GRElem> ring_elements(const FieldSpec& fs, uint32_t level);

// Relative trace of z in F_{p^r} onto the subfield F_{p^s} (s | r), computed
// inside the big field: z + z^{p^s} + ... .
GRElem field_trace(const GRElem& z, uint32_t s);

// Conductor C(k, k') = sum over z in k'^* of tau(z)^{-1} tau(tr z), at the
// given level of W(k'); a p-adic unit congruent to -1 mod p.
GRElem conductor(const FieldSpec& sub, const FieldSpec& big, uint32_t level);

// Embedding of F_{p^s} into F_{p^r} (s | r) extended to Galois rings via
// Teichmuller digits.  The image of the subfield generator is the
// lexicographically smallest root of the subfield modulus.
class FieldEmbedding {
  public:
    FieldEmbedding(const FieldSpec& sub, const FieldSpec& big);
    const FieldSpec& sub() const { return sub_; }
    const FieldSpec& big() const { return big_; }
    GRElem map_residue(const GRElem& x) const;         // field-level map
    GRElem map(const GRElem& x) const;                 // any level
  private:
    FieldSpec sub_, big_;
    GRElem root_;  // image of the subfield generator, residue level
};

}  // namespace wg
