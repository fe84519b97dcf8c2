#pragma once

#include "wittgamma/wmodule.hpp"

namespace wg {

// The Tense product and its numerical shadows.  Modules here are W_n(k)
// modules presented with ambient level n; cyclic factors have levels n - w_i.

// M tense N at level n: on cyclic factors W_a tense W_b = W_{a+b-n} (zero if
// a + b <= n), extended additively.  Returns the product together with the
// quotient map from the ordinary tensor product.
struct TenseProduct {
    TorsionModule result;                      // ambient level n
    TorsionModule plain_tensor;                // M (x) N, factors W_{min(a,b)}
    ModuleMap quotient;                        // plain_tensor -> result
    std::vector<std::pair<size_t, size_t>> factor_pairs;  // (i in M, j in N) per generator

    // index of the (i, j) generator in both modules, or SIZE_MAX if the
    // corresponding tense factor died
    size_t pair_index(size_t i, size_t j) const;
};

TenseProduct tense_product(const TorsionModule& M, const TorsionModule& N);

// v_n(M): the largest i in [-n, 0] such that M/p^{n+i} is free; the zero
// module is assigned -n (the paper's clamping convention).
int32_t valuation(const TorsionModule& M);

// tr_M: M tense M^dual -> W_{n + v_n(M)}(k), the evaluation map pushed through
// the tense quotient.  Returns the map from the tense product, the target
// level, and a maximality certificate: the evaluation does not factor at any
// higher level.
struct TraceData {
    TenseProduct product;   // M tense M^dual
    uint32_t target_level;  // n + v_n(M)
    std::vector<GRElem> values;  // image of each tense generator, at target_level
    bool maximal;
};

TraceData trace_map(const TorsionModule& M);

// Chern polynomial Ch_n(M) = a_n + a_{n-1} X^{-1} + ... + a_1 X^{-n+1} with
// a_i the multiplicity of the cyclic factor W_i(k) in M.
struct ChernPoly {
    uint32_t n = 1;                  // ambient level
    std::vector<uint64_t> a;         // a[i] = multiplicity of W_{n-i}(k); size n

    bool operator==(const ChernPoly& o) const { return n == o.n && a == o.a; }
};

ChernPoly chern(const TorsionModule& M);
ChernPoly chern_mul(const ChernPoly& x, const ChernPoly& y);   // truncated mod X^{-n}
int32_t chern_vx(const ChernPoly& c);                          // order of vanishing; -n for 0

// Theta: reduction W_{n+1}-modules -> W_n-modules, M -> M/p^n.
TorsionModule theta(const TorsionModule& M);

// The lax-monoidal comparison on cyclic generators: the level of the
// generator of (M/p^n) tense_n (N/p^n) is at least that of
// (M tense_{n+1} N)/p^n, so the natural map exists.
bool theta_comparison_exists(uint32_t a, uint32_t b, uint32_t n);

}  // namespace wg
