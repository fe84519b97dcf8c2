#include "wittgamma/zarith.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace wg {

uint32_t vp_u64(uint64_t n, uint64_t p) {
    if (n == 0) return VP_INF;
    uint32_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

uint32_t vp_big(const bigint& n, uint64_t p) {
    if (n == 0) return VP_INF;
    bigint m = abs(n);
    uint32_t v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

uint64_t pow_u64(uint64_t base, uint32_t exp) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > (uint64_t(1) << 62) / base)
            throw std::overflow_error("pow_u64: exponent too large for 64-bit level arithmetic");
        r *= base;
    }
    return r;
}

const bigint& factorial(uint64_t n) {
    static std::map<uint64_t, bigint> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    bigint f = 1;
    for (uint64_t i = 2; i <= n; ++i) f *= i;
    return cache.emplace(n, std::move(f)).first->second;
}

bigint multinomial(const std::vector<uint64_t>& parts) {
    if (parts.empty()) throw std::invalid_argument("multinomial: empty parts");
    uint64_t total = 0;
    for (uint64_t a : parts) total += a;
    bigint num = factorial(total);
    for (uint64_t a : parts) num /= factorial(a);
    return num;
}

uint32_t multinomial_val(const std::vector<uint64_t>& parts, uint64_t p) {
    return vp_big(multinomial(parts), p);
}

uint32_t carry_count(const std::vector<uint64_t>& parts, uint64_t p) {
    // Count carries in the running base-p addition (...(a1+a2)+a3)+...
    if (parts.empty()) throw std::invalid_argument("carry_count: empty parts");
    uint32_t carries = 0;
    uint64_t acc = 0;
    for (uint64_t a : parts) {
        // add a to acc in base p, counting carries digit by digit
        uint64_t x = acc, y = a, carry = 0;
        while (x > 0 || y > 0 || carry > 0) {
            uint64_t s = x % p + y % p + carry;
            carry = s / p;
            if (carry) ++carries;
            x /= p;
            y /= p;
        }
        acc += a;
    }
    return carries;
}

uint64_t multinomial_mod(const std::vector<uint64_t>& parts, uint64_t p, uint32_t N) {
    bigint m = multinomial(parts);
    bigint mod = 1;
    for (uint32_t i = 0; i < N; ++i) mod *= p;
    return static_cast<uint64_t>(m % mod);
}

bigint c_constant(uint64_t p, uint32_t i) {
    if (i == 0) throw std::invalid_argument("c_constant: i >= 1 required");
    if (i == 1) return 1;
    std::vector<uint64_t> parts(p, pow_u64(p, i - 1));
    bigint m = multinomial(parts);
    bigint d = factorial(p);
    if (m % d != 0) throw std::logic_error("c_constant: p! does not divide the multinomial");
    return m / d;
}

bigint big_c_constant(uint64_t p, uint32_t n) {
    if (n == 0) throw std::invalid_argument("big_c_constant: n >= 1 required");
    bigint C = 1;
    for (uint32_t i = 2; i <= n; ++i) {
        bigint ci = c_constant(p, i);
        uint64_t e = pow_u64(p, n - i);  // exponent p^{n-i}
        bigint piece = 1;
        for (uint64_t j = 0; j < e; ++j) piece *= ci;
        C *= piece;
    }
    return C;
}

uint64_t mod_pow_u64(uint64_t base, uint64_t exp, uint64_t mod) {
    if (mod == 1) return 0;
    unsigned __int128 r = 1, b = base % mod;
    while (exp) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<uint64_t>(r);
}

uint64_t mod_inv_u64(uint64_t a, uint64_t mod) {
    // extended Euclid; caller guarantees gcd(a, mod) = 1
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(mod), newr = static_cast<int64_t>(a % mod);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::invalid_argument("mod_inv_u64: not a unit");
    if (t < 0) t += static_cast<int64_t>(mod);
    return static_cast<uint64_t>(t);
}

}  // namespace wg
