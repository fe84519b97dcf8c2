#include "wittgamma/galois.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wg {

namespace {

struct TableEntry {
    uint32_t p, r;
    std::vector<uint32_t> modulus;  // low-to-high, monic
};

// Conway-style monic irreducibles, one fixed choice per (p, r); the same F is
// used at every ring level.
const std::vector<TableEntry>& modulus_table() {
    static const std::vector<TableEntry> table = {
        {2, 1, {1, 1}},
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {3, 1, {1, 1}},
        {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},
        {5, 1, {3, 1}},
        {5, 2, {2, 4, 1}},
        {7, 1, {4, 1}},
        {7, 2, {3, 6, 1}},
        {11, 1, {9, 1}},
        {13, 1, {11, 1}},
    };
    return table;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t mod) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

}  // namespace

FieldSpec field_spec(uint32_t p, uint32_t r) {
    for (const auto& e : modulus_table())
        if (e.p == p && e.r == r) return FieldSpec{p, r, e.modulus};
    throw std::invalid_argument("field_spec: (p, r) = (" + std::to_string(p) + ", " +
                                std::to_string(r) + ") not in the modulus table");
}

bool field_spec_known(uint32_t p, uint32_t r) {
    for (const auto& e : modulus_table())
        if (e.p == p && e.r == r) return true;
    return false;
}

std::vector<std::pair<uint32_t, uint32_t>> field_spec_table_keys() {
    std::vector<std::pair<uint32_t, uint32_t>> keys;
    for (const auto& e : modulus_table()) keys.emplace_back(e.p, e.r);
    return keys;
}

GRElem::GRElem(uint32_t p, uint32_t r, uint32_t level, std::vector<uint64_t> coeffs)
    : p_(p), r_(r), n_(level), c_(std::move(coeffs)) {
    if (c_.size() != r_) throw std::invalid_argument("GRElem: coefficient count != r");
    normalize();
}

void GRElem::normalize() {
    uint64_t mod = modulus();
    for (auto& x : c_) x %= mod;
}

void GRElem::check_compat(const GRElem& o) const {
    if (p_ != o.p_ || r_ != o.r_ || n_ != o.n_)
        throw std::invalid_argument("GRElem: mixed (p, r, level) operands");
}

GRElem GRElem::scalar(const FieldSpec& fs, uint32_t level, uint64_t value) {
    GRElem e(fs, level);
    e.c_[0] = value % e.modulus();
    return e;
}

GRElem GRElem::gen(const FieldSpec& fs, uint32_t level) {
    if (fs.r < 2) throw std::invalid_argument("GRElem::gen: r >= 2 required");
    GRElem e(fs, level);
    e.c_[1] = 1;
    return e;
}

FieldSpec GRElem::spec() const { return field_spec(p_, r_); }

bool GRElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint64_t x) { return x == 0; });
}

bool GRElem::is_unit() const {
    if (n_ == 0) return false;
    return std::any_of(c_.begin(), c_.end(), [this](uint64_t x) { return x % p_ != 0; });
}

bool GRElem::operator==(const GRElem& o) const {
    return p_ == o.p_ && r_ == o.r_ && n_ == o.n_ && c_ == o.c_;
}

bool GRElem::operator<(const GRElem& o) const {
    if (p_ != o.p_) return p_ < o.p_;
    if (r_ != o.r_) return r_ < o.r_;
    if (n_ != o.n_) return n_ < o.n_;
    return c_ < o.c_;
}

GRElem GRElem::operator+(const GRElem& o) const {
    check_compat(o);
    GRElem out = *this;
    uint64_t mod = modulus();
    for (uint32_t i = 0; i < r_; ++i) out.c_[i] = (out.c_[i] + o.c_[i]) % mod;
    return out;
}

GRElem GRElem::operator-(const GRElem& o) const {
    check_compat(o);
    GRElem out = *this;
    uint64_t mod = modulus();
    for (uint32_t i = 0; i < r_; ++i) out.c_[i] = (out.c_[i] + mod - o.c_[i]) % mod;
    return out;
}

GRElem GRElem::operator-() const {
    GRElem out = *this;
    uint64_t mod = modulus();
    for (uint32_t i = 0; i < r_; ++i) out.c_[i] = (mod - out.c_[i]) % mod;
    return out;
}

GRElem GRElem::operator*(const GRElem& o) const {
    check_compat(o);
    uint64_t mod = modulus();
    if (mod == 1) return GRElem(p_, r_, n_, std::vector<uint64_t>(r_, 0));
    std::vector<uint64_t> prod(2 * r_ - 1, 0);
    for (uint32_t i = 0; i < r_; ++i) {
        if (c_[i] == 0) continue;
        for (uint32_t j = 0; j < r_; ++j)
            prod[i + j] = (prod[i + j] + mulmod(c_[i], o.c_[j], mod)) % mod;
    }
    // reduce mod the monic table modulus
    const std::vector<uint32_t>& F = field_spec(p_, r_).modulus;
    for (int i = static_cast<int>(prod.size()) - 1; i >= static_cast<int>(r_); --i) {
        uint64_t t = prod[i];
        if (t == 0) continue;
        prod[i] = 0;
        for (uint32_t j = 0; j < r_; ++j) {
            uint64_t sub = mulmod(t, F[j] % mod, mod);
            prod[i - r_ + j] = (prod[i - r_ + j] + mod - sub) % mod;
        }
    }
    prod.resize(r_);
    return GRElem(p_, r_, n_, std::move(prod));
}

GRElem GRElem::mul_scalar(uint64_t s) const {
    uint64_t mod = modulus();
    GRElem out = *this;
    s %= mod;
    for (auto& x : out.c_) x = mulmod(x, s, mod);
    return out;
}

GRElem GRElem::mul_big(const bigint& s) const {
    bigint mod = modulus();
    bigint red = s % mod;
    if (red < 0) red += mod;
    return mul_scalar(static_cast<uint64_t>(red));
}

GRElem GRElem::pow(uint64_t e) const {
    GRElem base = *this;
    GRElem out = scalar(spec(), n_, 1);
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

GRElem GRElem::inv() const {
    if (!is_unit()) throw std::invalid_argument("GRElem::inv: not a unit");
    // inverse in the residue field, then Hensel
    GRElem b = residue().pow(pow_u64(p_, r_) - 2).lift(n_);
    GRElem two = scalar(spec(), n_, 2);
    for (uint32_t i = 0; i < 8 && !((*this) * b == one(spec(), n_)); ++i)
        b = b * (two - (*this) * b);
    if (!((*this) * b == one(spec(), n_))) throw std::logic_error("GRElem::inv: Hensel failed");
    return b;
}

uint32_t GRElem::valuation() const {
    uint32_t v = VP_INF;
    for (uint64_t x : c_) {
        uint32_t vx = vp_u64(x, p_);
        if (vx < v) v = vx;
    }
    return std::min<uint32_t>(v, n_);
}

GRElem GRElem::div_pow_p(uint32_t j) const {
    if (j > n_) throw std::invalid_argument("div_pow_p: j > level");
    if (valuation() < j) throw std::invalid_argument("div_pow_p: not divisible");
    uint64_t pj = pow_u64(p_, j);
    std::vector<uint64_t> out(c_);
    for (auto& x : out) x /= pj;
    return GRElem(p_, r_, n_ - j, std::move(out));
}

GRElem GRElem::div_pow_p_same_level(uint32_t j) const {
    uint64_t pj = pow_u64(p_, j);
    std::vector<uint64_t> out(c_);
    for (auto& x : out) x /= pj;
    return GRElem(p_, r_, n_, std::move(out));
}

GRElem GRElem::reduce(uint32_t level) const {
    if (level > n_) throw std::invalid_argument("reduce: target above current level");
    GRElem out(p_, r_, level, c_);
    return out;
}

GRElem GRElem::lift(uint32_t level) const {
    if (level < n_) throw std::invalid_argument("lift: target below current level");
    return GRElem(p_, r_, level, c_);
}

std::vector<GRElem> GRElem::teich_digits() const {
    std::vector<GRElem> digits;
    GRElem a = *this;
    for (uint32_t i = 0; i < n_; ++i) {
        GRElem d = a.residue();
        digits.push_back(d);
        if (i + 1 < n_) a = (a - teichmuller(d, a.level())).div_pow_p(1);
    }
    return digits;
}

GRElem GRElem::frob_lift() const {
    // frob acts on the Teichmuller expansion digit-wise by x -> x^p
    auto digits = teich_digits();
    GRElem out(spec(), n_);
    uint64_t pk = 1;
    for (uint32_t i = 0; i < digits.size(); ++i) {
        out += teichmuller(digits[i].pow(p_), n_).mul_scalar(pk);
        if (i + 1 < digits.size()) pk *= p_;
    }
    return out;
}

GRElem GRElem::frob_lift_iter(uint32_t s) const {
    GRElem out = *this;
    for (uint32_t i = 0; i < s % r_; ++i) out = out.frob_lift();
    return out;
}

std::string GRElem::str() const {
    std::ostringstream os;
    os << "[";
    for (uint32_t i = 0; i < r_; ++i) os << (i ? "," : "") << c_[i];
    os << "]@W" << n_ << "(p=" << p_ << ",r=" << r_ << ")";
    return os.str();
}

GRElem teichmuller(const GRElem& x_residue, uint32_t n) {
    if (x_residue.level() != 1)
        throw std::invalid_argument("teichmuller: argument must be a residue-field element");
    GRElem a = x_residue.lift(n);
    uint64_t q = pow_u64(x_residue.p(), x_residue.r());
    for (uint32_t i = 0; i + 1 < n; ++i) a = a.pow(q);
    return a;
}

GRElem tau_bar(const GRElem& x, uint32_t n) {
    GRElem lift = x.lift(x.level() + n);
    return lift.pow(pow_u64(x.p(), n));
}

std::vector<GRElem> field_elements(const FieldSpec& fs) {
    return ring_elements(fs, 1);
}

std::vector<GRElem> ring_elements(const FieldSpec& fs, uint32_t level) {
    uint64_t mod = pow_u64(fs.p, level);
    uint64_t total = 1;
    for (uint32_t i = 0; i < fs.r; ++i) {
        if (total > (uint64_t(1) << 24)) throw std::invalid_argument("ring_elements: too large");
        total *= mod;
    }
    std::vector<GRElem> out;
    out.reserve(total);
    for (uint64_t idx = 0; idx < total; ++idx) {
        std::vector<uint64_t> c(fs.r);
        uint64_t t = idx;
        for (uint32_t j = 0; j < fs.r; ++j) {
            c[j] = t % mod;
            t /= mod;
        }
        out.emplace_back(fs.p, fs.r, level, std::move(c));
    }
    return out;
}

GRElem field_trace(const GRElem& z, uint32_t s) {
    if (z.level() != 1) throw std::invalid_argument("field_trace: residue-field input required");
    if (s == 0 || z.r() % s != 0) throw std::invalid_argument("field_trace: s must divide r");
    uint64_t qs = pow_u64(z.p(), s);
    GRElem acc = z;
    GRElem t = z;
    for (uint32_t i = 1; i < z.r() / s; ++i) {
        t = t.pow(qs);
        acc += t;
    }
    return acc;
}

GRElem conductor(const FieldSpec& sub, const FieldSpec& big, uint32_t level) {
    if (sub.p != big.p || big.r % sub.r != 0 || big.r == sub.r)
        throw std::invalid_argument("conductor: k'/k must be a proper extension of the same characteristic");
    GRElem C(big, level);
    for (const GRElem& z : field_elements(big)) {
        if (z.is_zero()) continue;
        GRElem tr = field_trace(z, sub.r);
        if (tr.is_zero()) continue;  // tau(0) = 0
        GRElem term = teichmuller(z, level).inv() * teichmuller(tr, level);
        C += term;
    }
    for (uint32_t i = 1; i < big.r; ++i)
        if (C.coeffs()[i] != 0) throw std::logic_error("conductor: result not in Z_p");
    return C;
}

FieldEmbedding::FieldEmbedding(const FieldSpec& sub, const FieldSpec& big)
    : sub_(sub), big_(big), root_(big, 1) {
    if (sub.p != big.p || big.r % sub.r != 0)
        throw std::invalid_argument("FieldEmbedding: [k':k] must be an integer");
    if (sub.r == 1) {
        root_ = GRElem::scalar(big, 1, 0);  // unused; scalars map directly
        return;
    }
    bool found = false;
    for (const GRElem& cand : field_elements(big)) {
        GRElem val(big, 1);
        GRElem power = GRElem::one(big, 1);
        for (uint32_t j = 0; j < sub.modulus.size(); ++j) {
            val += power.mul_scalar(sub.modulus[j]);
            power = power * cand;
        }
        if (val.is_zero()) {
            if (!found || cand.coeffs() < root_.coeffs()) root_ = cand;
            found = true;
        }
    }
    if (!found) throw std::logic_error("FieldEmbedding: modulus has no root in the big field");
}

GRElem FieldEmbedding::map_residue(const GRElem& x) const {
    if (x.level() != 1) throw std::invalid_argument("map_residue: level-1 input required");
    GRElem out(big_, 1);
    GRElem power = GRElem::one(big_, 1);
    for (uint32_t j = 0; j < sub_.r; ++j) {
        out += power.mul_scalar(x.coeffs()[j]);
        if (sub_.r >= 2) power = power * root_;
    }
    return out;
}

GRElem FieldEmbedding::map(const GRElem& x) const {
    if (x.level() == 1) return map_residue(x);
    auto digits = x.teich_digits();
    GRElem out(big_, x.level());
    uint64_t pk = 1;
    for (uint32_t i = 0; i < digits.size(); ++i) {
        out += teichmuller(map_residue(digits[i]), x.level()).mul_scalar(pk);
        if (i + 1 < digits.size()) pk *= x.p();
    }
    return out;
}

}  // namespace wg
