#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wg {

using bigint = boost::multiprecision::cpp_int;

// p-adic valuation; v_p(0) is represented by VP_INF so that zero parts never
// dominate max/min formulas.
inline constexpr uint32_t VP_INF = 0xffffffffu;

uint32_t vp_u64(uint64_t n, uint64_t p);
uint32_t vp_big(const bigint& n, uint64_t p);

uint64_t pow_u64(uint64_t base, uint32_t exp);  // throws on overflow past 2^63

const bigint& factorial(uint64_t n);

// Multinomial coefficient (sum parts; parts...).
bigint multinomial(const std::vector<uint64_t>& parts);

// v_p of the multinomial coefficient.  Equals the number of carryovers in the
// base-p addition of the parts; both routes are exposed so tests can
// cross-check them.
uint32_t multinomial_val(const std::vector<uint64_t>& parts, uint64_t p);
uint32_t carry_count(const std::vector<uint64_t>& parts, uint64_t p);

// Exact multinomial reduced mod p^N.
uint64_t multinomial_mod(const std::vector<uint64_t>& parts, uint64_t p, uint32_t N);

// c_i = (1/p!) * multinomial(p^i; p^{i-1},...,p^{i-1}), a p-adic unit; c_1 = 1.
bigint c_constant(uint64_t p, uint32_t i);

// C_n = c_n * c_{n-1}^p * ... * c_2^{p^{n-2}}, a p-adic unit; C_1 = 1.
bigint big_c_constant(uint64_t p, uint32_t n);

uint64_t mod_pow_u64(uint64_t base, uint64_t exp, uint64_t mod);
uint64_t mod_inv_u64(uint64_t a, uint64_t mod);  // a a unit mod p^N

}  // namespace wg
